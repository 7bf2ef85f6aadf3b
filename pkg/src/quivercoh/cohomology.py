"""The cohomology engine.

For a valid representation, every nonsingular vertex contributes one
irreducible module in one degree.  Between vertices in adjacent chambers
carrying the same module, a differential acts: the product of the
representation's arrow matrices along the straight segment joining them,
with a sign.  Signs are chosen per space so that every square of the
chamber adjacency graph anticommutes; the resulting sequence is a
complex and its cohomology, degree by degree, is the cohomology of the
bundle.

Truncations keep only segment compositions of at most a given number of
steps.  The one-step truncation is itself a complex; intermediate
truncations are reported as plain sequences with a caveat, since no
inclusion structure is claimed for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import bott, linalg, rootsys
from .bott import chamber_graph, chamber_key, mirrors
from .errors import DomainError, InternalCheckError
from .linalg import Matrix, matmul, solve_gf2, zeros
from .quiver import QuiverRep, check_relations
from .rootsys import Space, Weight


@dataclass(frozen=True)
class GradedPiece:
    """All vertices of a representation sharing one cohomology module and
    one degree, with their multiplicities."""

    nu: Weight
    degree: int
    blocks: tuple[tuple[int, int], ...]  # (vertex index, multiplicity)


def graded_cohomology(rep: QuiverRep, checked: bool = False) -> list[GradedPiece]:
    """Cohomology of the associated graded bundle, grouped by module and
    degree.  Singular vertices contribute nothing."""
    if not checked:
        _require_valid(rep)
    groups: dict[tuple[Weight, int], list[tuple[int, int]]] = {}
    for i, v in enumerate(rep.vertices):
        value = bott.bott(rep.space, v.weight)
        if value is None:
            continue
        groups.setdefault((value.nu, value.degree), []).append((i, v.dim))
    return [
        GradedPiece(nu, degree, tuple(blocks))
        for (nu, degree), blocks in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]


def _require_valid(rep: QuiverRep):
    violations = check_relations(rep)
    if violations:
        first = violations[0]
        raise DomainError(
            f"representation violates {len(violations)} relation(s); first at "
            f"{first.source} -> {first.target}"
        )


@lru_cache(maxsize=None)
def _sign_table(space: Space, twist: frozenset = frozenset()) -> dict[tuple, int]:
    """A sign per degree-raising edge of the chamber adjacency graph such
    that every square multiplies to -1.  The optional twist flips all
    edges at the named chambers, producing a second valid solution."""
    weights, edges = chamber_graph(space)
    keys = [chamber_key(space, w) for w in weights]
    edge_index = {e: i for i, e in enumerate(edges)}
    outgoing: dict[int, list[int]] = {}
    for a, b in edges:
        outgoing.setdefault(a, []).append(b)
    equations = []
    for a in outgoing:
        targets: dict[int, list[int]] = {}
        for b in outgoing[a]:
            for c in outgoing.get(b, []):
                targets.setdefault(c, []).append(b)
        for c, mids in targets.items():
            if len(mids) > 2:
                raise InternalCheckError(
                    f"{len(mids)} chambers between a pair in {space}"
                )
            if len(mids) == 2:
                b1, b2 = mids
                idxs = (
                    edge_index[(a, b1)],
                    edge_index[(b1, c)],
                    edge_index[(a, b2)],
                    edge_index[(b2, c)],
                )
                equations.append((idxs, 1))
    solution = solve_gf2(equations, len(edges))
    if solution is None:
        raise InternalCheckError(f"sign system for {space} is inconsistent")
    table = {}
    for (a, b), bit in zip(edges, solution):
        flip = (1 if keys[a] in twist else 0) ^ (1 if keys[b] in twist else 0)
        table[(keys[a], keys[b])] = -1 if (bit ^ flip) else 1
    return table


@dataclass(frozen=True)
class ClassComplex:
    """Differentials for one cohomology module: vertex blocks per degree
    and the map out of each degree."""

    nu: Weight
    degrees: tuple[int, ...]
    blocks: dict[int, tuple[tuple[int, int], ...]]
    maps: dict[int, Matrix]  # degree d -> matrix from degree d to d+1


@dataclass(frozen=True)
class CohomologyComplex:
    space: Space
    classes: tuple[ClassComplex, ...]
    max_steps: int | None
    is_complex: bool


def _segment_product(rep: QuiverRep, start: Weight, box, steps: int) -> Matrix | None:
    """Product of the representation's arrow matrices along the straight
    segment, or None when an intermediate vertex is missing."""
    space = rep.space
    xi = rootsys.box_weight(space, *box)
    w = start
    idx = rep.vertex_index(w)
    if idx is None:
        return None
    product = linalg.identity(rep.vertices[idx].dim)
    for _ in range(steps):
        nxt_w = rootsys.wadd(w, xi)
        nxt = rep.vertex_index(nxt_w)
        if nxt is None:
            return None
        matrix = rep.arrow_matrix(idx, nxt)
        if matrix is None:
            matrix = zeros(rep.vertices[nxt].dim, rep.vertices[idx].dim)
        product = matmul(matrix, product)
        w, idx = nxt_w, nxt
    return product


def build_complex(
    rep: QuiverRep,
    max_steps: int | None = None,
    gauge_twist: frozenset = frozenset(),
    checked: bool = False,
) -> CohomologyComplex:
    """Assemble the differentials.  With max_steps = None the result must
    square to zero (hard error otherwise); truncations keep only segment
    compositions of at most max_steps arrows."""
    if not checked:
        _require_valid(rep)
    space = rep.space
    signs = _sign_table(space, gauge_twist)
    pieces = graded_cohomology(rep, checked=True)
    by_nu: dict[Weight, dict[int, tuple[tuple[int, int], ...]]] = {}
    for piece in pieces:
        by_nu.setdefault(piece.nu, {})[piece.degree] = piece.blocks

    classes = []
    is_complex = True
    for nu in sorted(by_nu):
        blocks = by_nu[nu]
        degrees = tuple(sorted(blocks))
        maps = {}
        for d in degrees:
            if d + 1 not in blocks:
                continue
            rows = sum(dim for _, dim in blocks[d + 1])
            cols = sum(dim for _, dim in blocks[d])
            entries = [[Fraction(0)] * cols for _ in range(rows)]
            col_off = 0
            for src_idx, src_dim in blocks[d]:
                src_w = rep.vertices[src_idx].weight
                found = {}
                for mirror in mirrors(space, src_w):
                    if not mirror.up:
                        continue
                    if max_steps is not None and mirror.steps > max_steps:
                        continue
                    row_off = 0
                    for dst_idx, dst_dim in blocks[d + 1]:
                        if rep.vertices[dst_idx].weight == mirror.target:
                            if dst_idx in found:
                                raise InternalCheckError(
                                    "two directions join one vertex pair"
                                )
                            found[dst_idx] = True
                            product = _segment_product(
                                rep, src_w, mirror.box, mirror.steps
                            )
                            if product is not None:
                                sign = signs[
                                    (
                                        chamber_key(space, src_w),
                                        chamber_key(space, mirror.target),
                                    )
                                ]
                                for i in range(dst_dim):
                                    for j in range(src_dim):
                                        entries[row_off + i][col_off + j] = (
                                            sign * product[i][j]
                                        )
                        row_off += dst_dim
                col_off += src_dim
            maps[d] = linalg.mat(entries)
        for d in degrees:
            if d in maps and d + 1 in maps:
                if not linalg.is_zero_matrix(matmul(maps[d + 1], maps[d])):
                    is_complex = False
        classes.append(ClassComplex(nu, degrees, blocks, maps))
    if not is_complex and (max_steps is None or max_steps == 1):
        raise InternalCheckError(
            "differentials do not square to zero"
            + ("" if max_steps is None else " in the one-step truncation")
        )
    return CohomologyComplex(space, tuple(classes), max_steps, is_complex)


@dataclass(frozen=True)
class TableRow:
    degree: int
    nu: Weight
    multiplicity: int
    dim: int


@dataclass(frozen=True)
class CohomologyTable:
    space: Space
    rows: tuple[TableRow, ...]

    def multiplicity(self, degree: int, nu) -> int:
        nu = tuple(nu)
        for row in self.rows:
            if row.degree == degree and row.nu == nu:
                return row.multiplicity
        return 0

    def total_dim(self, degree: int) -> int:
        return sum(r.multiplicity * r.dim for r in self.rows if r.degree == degree)

    def euler_characteristic(self) -> int:
        return sum((-1) ** r.degree * r.multiplicity * r.dim for r in self.rows)

    def is_empty(self) -> bool:
        return not self.rows


def _homology_table(space: Space, complex_: CohomologyComplex) -> CohomologyTable:
    rows = []
    for cls in complex_.classes:
        dim_nu = rootsys.module_dim(space, cls.nu)
        for d in cls.degrees:
            total = sum(dim for _, dim in cls.blocks[d])
            rank_out = linalg.rank(cls.maps[d]) if d in cls.maps else 0
            rank_in = linalg.rank(cls.maps[d - 1]) if d - 1 in cls.maps else 0
            mult = total - rank_out - rank_in
            if mult:
                rows.append(TableRow(d, cls.nu, mult, dim_nu))
    rows.sort(key=lambda r: (r.degree, r.nu))
    return CohomologyTable(space, tuple(rows))


def cohomology(rep: QuiverRep, gauge_twist: frozenset = frozenset()) -> CohomologyTable:
    """Cohomology of the bundle: kernel modulo image in every degree of
    every class of the full complex."""
    complex_ = build_complex(rep, gauge_twist=gauge_twist)
    return _homology_table(rep.space, complex_)


def graded_table(rep: QuiverRep) -> CohomologyTable:
    """Cohomology of the associated graded bundle as a table."""
    rows = []
    for piece in graded_cohomology(rep):
        mult = sum(dim for _, dim in piece.blocks)
        rows.append(
            TableRow(piece.degree, piece.nu, mult, rootsys.module_dim(rep.space, piece.nu))
        )
    rows.sort(key=lambda r: (r.degree, r.nu))
    return CohomologyTable(rep.space, tuple(rows))


@dataclass(frozen=True)
class TruncatedResult:
    """Homology of the truncated sequence.  For 1 < steps < full this is
    reported with a caveat: the truncated maps need not square to zero
    and no filtration of the full cohomology is claimed."""

    steps: int
    is_full: bool
    is_complex: bool
    table: CohomologyTable
    caveat: str | None


def truncated_complex(rep: QuiverRep, nsteps: int) -> TruncatedResult:
    if nsteps < 1:
        raise DomainError("truncation needs at least one step")
    full = build_complex(rep)
    truncated = build_complex(rep, max_steps=nsteps, checked=True)
    is_full = _same_maps(full, truncated)
    table = _homology_table(rep.space, truncated)
    caveat = None
    if not is_full and nsteps > 1:
        caveat = (
            "homology of the truncated sequence; no inclusion into the full "
            "cohomology is claimed"
        )
    return TruncatedResult(nsteps, is_full, truncated.is_complex, table, caveat)


def _same_maps(a: CohomologyComplex, b: CohomologyComplex) -> bool:
    if len(a.classes) != len(b.classes):
        return False
    for ca, cb in zip(a.classes, b.classes):
        if ca.nu != cb.nu or ca.degrees != cb.degrees:
            return False
        if set(ca.maps) != set(cb.maps):
            return False
        for d in ca.maps:
            if ca.maps[d] != cb.maps[d]:
                return False
    return True
