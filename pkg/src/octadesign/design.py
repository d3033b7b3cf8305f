"""The block design: orbit of the basic octahedron under PSL(2,q).

Blocks are six-point sets carrying a partition of their point pairs into
twelve edges and three diagonals.  The orbit is grown breadth-first; when a
new block is discovered as the image of an old one, its diagonal partition
is the image of the parent's.  Outside characteristic 5 the labels are
intrinsic (a pair is a diagonal of every block containing it, and the two
labels have different concurrence counts); in characteristic 5 every
adjacent pair lies in a single block and the labels are only per-block
bookkeeping.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import counting, pgroup
from .errors import (
    BadInput,
    CountMismatch,
    DegenerateBlock,
    LabelClash,
    NotDivisor,
)
from .gf import Field
from .pgroup import PointSet, PslElement

BRUTE_FORCE_GROUP_LIMIT = 50_000


@dataclass(frozen=True)
class Block:
    """Six point indices plus the three diagonal pairs, all sorted."""

    points: tuple[int, ...]
    diagonals: tuple[tuple[int, int], ...]

    def pairs(self):
        pts = self.points
        for s in range(6):
            for t in range(s + 1, 6):
                yield (pts[s], pts[t])

    def edges(self):
        diag = set(self.diagonals)
        return [pr for pr in self.pairs() if pr not in diag]


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    m: int
    lambda_by_class: dict
    degenerate: bool


@dataclass
class Design:
    field: Field
    point_set: PointSet
    blocks: list
    point_to_blocks: list
    lambda_of_pair: dict
    edge_pairs: set
    diag_pairs: set
    params: DesignParams | None = dc_field(default=None)

    @property
    def n(self) -> int:
        return self.point_set.n


def basic_block(ps: PointSet) -> Block:
    """The octahedron on the six fixed vertex classes."""
    verts = [v.index for v in pgroup.octahedron_vertices(ps)]
    if len(set(verts)) != 6:
        raise DegenerateBlock(f"basic block has {len(set(verts))} distinct points")
    diag_vertex_pairs = ((0, 5), (1, 3), (2, 4))
    diags = tuple(
        sorted(tuple(sorted((verts[s], verts[t]))) for s, t in diag_vertex_pairs)
    )
    return Block(points=tuple(sorted(verts)), diagonals=diags)


def build_design(field: Field, ps: PointSet | None = None) -> Design:
    """Grow the block orbit and collect concurrence and label data."""
    if ps is None:
        ps = PointSet(field)
    perms = [g.tolist() for g in pgroup.generator_perms(ps)]
    start = basic_block(ps)
    visited = {start.points}
    blocks = [start]
    queue = deque([start])
    while queue:
        blk = queue.popleft()
        for g in perms:
            pts = tuple(sorted(g[x] for x in blk.points))
            if pts in visited:
                continue
            visited.add(pts)
            diags = tuple(
                sorted(tuple(sorted((g[a], g[b]))) for a, b in blk.diagonals)
            )
            img = Block(points=pts, diagonals=diags)
            blocks.append(img)
            queue.append(img)

    point_to_blocks = [[] for _ in range(ps.n)]
    lambda_of_pair: dict = {}
    edge_pairs: set = set()
    diag_pairs: set = set()
    for bi, blk in enumerate(blocks):
        for x in blk.points:
            point_to_blocks[x].append(bi)
        diag = set(blk.diagonals)
        for pr in blk.pairs():
            lambda_of_pair[pr] = lambda_of_pair.get(pr, 0) + 1
            (diag_pairs if pr in diag else edge_pairs).add(pr)
    if field.p != 5 and (edge_pairs & diag_pairs):
        clash = sorted(edge_pairs & diag_pairs)[:3]
        raise LabelClash(f"pairs labeled both edge and diagonal: {clash}")
    return Design(
        field=field,
        point_set=ps,
        blocks=blocks,
        point_to_blocks=point_to_blocks,
        lambda_of_pair=lambda_of_pair,
        edge_pairs=edge_pairs,
        diag_pairs=diag_pairs,
    )


def verify_counts(design: Design) -> DesignParams:
    """Check every counted quantity against its closed form."""
    f = design.field
    expect = counting.design_counts(f.p, f.alpha)
    v, b = design.n, len(design.blocks)
    if v != expect["v"]:
        raise CountMismatch("v", expect["v"], v)
    if b != expect["b"]:
        raise CountMismatch("b", expect["b"], b)
    for blk in design.blocks:
        if len(set(blk.points)) != 6:
            raise CountMismatch("block size", 6, len(set(blk.points)))
    replication = {len(lst) for lst in design.point_to_blocks}
    if replication != {expect["r"]}:
        raise CountMismatch("r", {expect["r"]}, replication)
    r = expect["r"]
    if b * 6 != v * r:
        raise CountMismatch("b*k", v * r, b * 6)
    total = sum(design.lambda_of_pair.values())
    if total != 15 * b:
        raise CountMismatch("sum of pair concurrences", 15 * b, total)
    if f.p == 5:
        bad = {lam for lam in design.lambda_of_pair.values() if lam != 1}
        if bad:
            raise CountMismatch("adjacent concurrence", {1}, bad)
    else:
        for pr in design.edge_pairs:
            if design.lambda_of_pair[pr] != 4:
                raise CountMismatch(f"edge concurrence {pr}", 4, design.lambda_of_pair[pr])
        for pr in design.diag_pairs:
            if design.lambda_of_pair[pr] != 1:
                raise CountMismatch(f"diagonal concurrence {pr}", 1, design.lambda_of_pair[pr])
        labeled = len(design.edge_pairs) + len(design.diag_pairs)
        if labeled != len(design.lambda_of_pair):
            raise CountMismatch("labeled pairs", len(design.lambda_of_pair), labeled)
    params = DesignParams(
        v=v,
        b=b,
        r=r,
        k=6,
        m=expect["m"],
        lambda_by_class=dict(expect["lambda_by_class"]),
        degenerate=(b == 1),
    )
    design.params = params
    return params


def edge_diagonal_census(design: Design) -> dict:
    """Pair-class counts for characteristic other than 5."""
    f = design.field
    if f.p == 5:
        raise BadInput("edge/diagonal classes are not intrinsic in characteristic 5")
    expect = counting.design_counts(f.p, f.alpha)
    ne, nd = len(design.edge_pairs), len(design.diag_pairs)
    if ne != expect["edge_pairs"]:
        raise CountMismatch("edge count", expect["edge_pairs"], ne)
    if nd != expect["diagonal_pairs"]:
        raise CountMismatch("diagonal count", expect["diagonal_pairs"], nd)
    per_edge = {design.lambda_of_pair[pr] for pr in design.edge_pairs}
    per_diag = {design.lambda_of_pair[pr] for pr in design.diag_pairs}
    if per_edge != {4}:
        raise CountMismatch("blocks per edge", {4}, per_edge)
    if per_diag != {1}:
        raise CountMismatch("blocks per diagonal", {1}, per_diag)
    return {
        "edges": ne,
        "diagonals": nd,
        "blocks_per_edge": 4,
        "blocks_per_diagonal": 1,
    }


def block_rotation_reps(field: Field) -> list[PslElement]:
    """Twelve explicit unimodular matrices rotating the basic octahedron."""
    one, i, zero = field.one, field.i_elem, field.zero
    mats = [
        (one, zero, zero, one),
        (zero, -i, -i, -one),
        (-one, i, i, zero),
        (-i, zero, -one - i, i),
        (-one + i, one, i, -i),
        (one, -one, one, zero),
        (one, -one - i, one - i, -one),
        (-one - i, i, -one, i),
        (i, one, i, one - i),
        (-i, -one + i, zero, i),
        (zero, one, -one, one),
        (i, -i, one, -one - i),
    ]
    return [PslElement.from_matrix(m) for m in mats]


def block_stabilizer_report(design: Design) -> dict:
    """Setwise stabilizer of the basic block: order and element structure.

    The order always comes from the orbit-stabilizer theorem.  When the whole
    group is small enough we also enumerate it and list the stabilizer's
    element orders, and outside characteristic 5 we check the twelve explicit
    rotation representatives individually.
    """
    f = design.field
    ps = design.point_set
    g_order = pgroup.group_order(f)
    b = len(design.blocks)
    if g_order % b != 0:
        raise NotDivisor(f"group order {g_order} not divisible by {b} blocks")
    order = g_order // b
    expect = counting.design_counts(f.p, f.alpha)["block_stabilizer_order"]
    if order != expect:
        raise CountMismatch("block stabilizer order", expect, order)

    report = {
        "order": order,
        "brute_forced": False,
        "element_orders": None,
        "has_order_six_element": None,
        "explicit_reps_verified": None,
    }

    base = basic_block(ps)
    base_keys = {ps.points[x].key() for x in base.points}

    def fixes_block(g: PslElement) -> bool:
        keys = set()
        for x in base.points:
            a, pb = ps.points[x].rep
            img = ps.canonicalize((g.m[0] * a + g.m[1] * pb, g.m[2] * a + g.m[3] * pb))
            k = (img[0].coeffs, img[1].coeffs)
            if k not in base_keys:
                return False
            keys.add(k)
        return len(keys) == 6

    if f.p != 5:
        reps = block_rotation_reps(f)
        if len(set(reps)) != 12:
            raise CountMismatch("distinct rotation representatives", 12, len(set(reps)))
        report["explicit_reps_verified"] = all(fixes_block(g) for g in reps)
        if not report["explicit_reps_verified"]:
            raise CountMismatch("rotation representatives fixing the block", 12,
                                sum(fixes_block(g) for g in reps))

    if g_order <= BRUTE_FORCE_GROUP_LIMIT:
        group = pgroup.mulclose(pgroup.psl_generators(f))
        if len(group) != g_order:
            raise CountMismatch("group order by closure", g_order, len(group))
        stab = [g for g in group if fixes_block(g)]
        if len(stab) != order:
            raise CountMismatch("brute-forced stabilizer order", order, len(stab))
        orders = sorted(g.order() for g in stab)
        report["brute_forced"] = True
        report["element_orders"] = orders
        report["has_order_six_element"] = 6 in orders
    return report


def lambda_matrix(design: Design, diagonal: str = "r") -> np.ndarray:
    """Dense symmetric concurrence matrix; diagonal holds r or zero."""
    n = design.n
    lam = np.zeros((n, n), dtype=np.int16)
    for (a, b), count in design.lambda_of_pair.items():
        lam[a, b] = count
        lam[b, a] = count
    if diagonal == "r":
        np.fill_diagonal(lam, len(design.point_to_blocks[0]))
    elif diagonal != "zero":
        raise ValueError(f"unknown diagonal mode {diagonal!r}")
    return lam


def dump_design(design: Design, path: str) -> None:
    """Write "q v b" then one line per block: six points | three diagonals."""
    lines = [f"{design.field.q} {design.n} {len(design.blocks)}"]
    for blk in design.blocks:
        pts = " ".join(str(x) for x in blk.points)
        diags = " ".join(f"{a}-{b}" for a, b in blk.diagonals)
        lines.append(f"{pts} | {diags}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
