"""Octahedral block designs over GF(q) and their association schemes."""

from .analysis import AnalysisReport, analyze_q, family_members
from .counting import (
    design_counts,
    min_associate_classes,
    orbit_count_direct,
    orbit_count_formula,
)
from .design import Design, DesignParams, build_design, verify_counts
from .errors import BadInput, ConsistencyError, OctadesignError
from .gf import Field, FieldElement, field_create
from .pgroup import PointSet, PslElement, psl_generators
from .scheme import CoherentConfig, PairColoring, intersection_tensor, orbital_coloring
from .verify import run_verification
from .wl import RefinementTrace, lambda_coloring, wl_stabilize

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BadInput",
    "CoherentConfig",
    "ConsistencyError",
    "Design",
    "DesignParams",
    "Field",
    "FieldElement",
    "OctadesignError",
    "PairColoring",
    "PointSet",
    "PslElement",
    "RefinementTrace",
    "analyze_q",
    "build_design",
    "design_counts",
    "family_members",
    "field_create",
    "intersection_tensor",
    "lambda_coloring",
    "min_associate_classes",
    "orbit_count_direct",
    "orbit_count_formula",
    "orbital_coloring",
    "psl_generators",
    "run_verification",
    "verify_counts",
    "wl_stabilize",
    "__version__",
]
