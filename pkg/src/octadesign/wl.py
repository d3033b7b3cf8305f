"""Coarsest coherent refinement of a pair coloring by 2-dimensional
Weisfeiler-Leman iteration.

Each round refines the current coloring by, for every ordered color pair
(i, j), the count of intermediate points y with (x, y) colored i and (y, z)
colored j.  The counts for all (i, j) are taken against the coloring as it
stood at the start of the round, so the update is simultaneous.  Counts
come from products of 0/1 matrices computed in float64; every value that
appears is an exact small integer (bounded by n*(n+1)^2 < 2^53 with three
count matrices packed per product), so the arithmetic is exact and
bit-reproducible regardless of BLAS threading.  A fixpoint of the round map
has well-defined intersection numbers, which intersection_tensor certifies
independently at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import design as design_mod
from .errors import RefinementViolation
from .scheme import (
    CoherentConfig,
    PairColoring,
    canonical_renumber,
    full_check_mode,
    intersection_tensor,
)

SCHURIAN_CONSISTENT = "schurian_consistent"
NON_SCHURIAN = "non_schurian"


@dataclass
class RefinementTrace:
    rounds: int
    colors_per_round: list[int]
    final: CoherentConfig


def lambda_coloring(design) -> PairColoring:
    """Initial coloring: identity is color 0, then concurrences descending.

    Every distinct concurrence value over off-diagonal pairs gets one color,
    including zero, so non-adjacent pairs form a class of their own.
    """
    n = design.n
    lam = design_mod.lambda_matrix(design, diagonal="zero")
    off = ~np.eye(n, dtype=bool)
    values = sorted((int(v) for v in np.unique(lam[off])), reverse=True)
    lut = np.zeros(max(values) + 1, dtype=np.int32)
    for pos, val in enumerate(values):
        lut[val] = pos + 1
    color = lut[lam]
    np.fill_diagonal(color, 0)
    return PairColoring(n=n, color=color, num_colors=1 + len(values))


def _seed_diagonal(coloring: PairColoring) -> tuple[np.ndarray, int]:
    """Split any color that straddles the diagonal, then renumber."""
    key = coloring.color.astype(np.int64) * 2
    key[np.diag_indices(coloring.n)] += 1
    return canonical_renumber(key)


def _wl_round(C: np.ndarray, rank: int, n: int) -> tuple[np.ndarray, int]:
    """One simultaneous refinement round; returns the new canonical coloring."""
    nplus = n + 1
    pack = 3 if (nplus**3) * n < 2**53 else 2
    part = C.ravel().astype(np.int64)
    distinct = rank
    for i in range(rank):
        left = (C == i).astype(np.float64)
        for j0 in range(0, rank, pack):
            js = range(j0, min(j0 + pack, rank))
            packed = np.zeros((n, n), dtype=np.float64)
            for t, j in enumerate(js):
                packed += (C == j).astype(np.float64) * float(nplus**t)
            counts = np.rint(left @ packed).astype(np.int64).ravel()
            # counts already encodes the tuple of per-j counts in base n+1
            scale = nplus ** len(js)
            if distinct * scale < 2**62:
                _, part = np.unique(part * scale + counts, return_inverse=True)
                distinct = int(part.max()) + 1
            else:
                for t in range(len(js)):
                    feature = (counts // (nplus**t)) % nplus
                    _, part = np.unique(part * nplus + feature, return_inverse=True)
                    distinct = int(part.max()) + 1
    return canonical_renumber(part.reshape(n, n))


def wl_stabilize(coloring: PairColoring, check_level: str | None = None) -> RefinementTrace:
    """Iterate rounds to the fixpoint and certify the result coherent.

    The identity diagonal is split off first if the input did not already
    isolate it.  After the fixpoint, transpose-closure is checked; a
    violation splits colors by their transposes and iteration resumes (this
    never fires for colorings of symmetric origin but keeps arbitrary input
    files safe).  The returned trace ends with the certified configuration.
    """
    n = coloring.n
    C, rank = _seed_diagonal(coloring)
    history = [rank]
    while True:
        new_c, new_rank = _wl_round(C, rank, n)
        history.append(new_rank)
        if new_rank == rank and np.array_equal(new_c, C):
            # fixpoint reached; enforce transpose closure before accepting
            tkey = C.astype(np.int64) * rank + C.T
            closed, closed_rank = canonical_renumber(tkey)
            if closed_rank == rank:
                break
            C, rank = closed, closed_rank
            history.append(closed_rank)
        else:
            C, rank = new_c, new_rank
    final_coloring = PairColoring(n=n, color=C, num_colors=rank)
    config = intersection_tensor(final_coloring, mode=full_check_mode(n, check_level))
    return RefinementTrace(
        rounds=len(history) - 1,
        colors_per_round=history,
        final=config,
    )


def schurian_flag(wl_classes: int, orbital_classes: int) -> str:
    """Compare the coherent closure against the full-group orbital scheme."""
    if wl_classes > orbital_classes:
        raise RefinementViolation(
            f"coherent closure has {wl_classes} classes, exceeding the "
            f"orbital scheme's {orbital_classes}"
        )
    return SCHURIAN_CONSISTENT if wl_classes == orbital_classes else NON_SCHURIAN
