"""Slopes, characters, semistability tests, and moduli invariants.

The canonical character pairs a subrepresentation's dimension vector
with rank-weighted first Chern classes; a representation is semistable
when every arrow-closed subspace pairs nonnegatively.  General
semistability over an infinite field is not decided here: the engine
gives exact decisions for representations supported on a single segment
(via the interval decomposition) and witness verification elsewhere.

The tangent dimension is that of the relation variety at the point,
linearized over all arrow slots inside the support, minus the dimension
of the orbit of the base-change group; the output is the tangent
dimension of the relation variety modulo gauge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg, rootsys
from .errors import DomainError
from .linalg import Matrix, SpanBasis, mat, matmul
from .quiver import (
    QuiverRep,
    _closure_spans,
    arrows_from,
    check_relations,
    double_additions,
    relation_system,
)
from .rootsys import Weight


@dataclass(frozen=True)
class Character:
    """Integer weights per vertex, pairing to zero against the full
    dimension vector of the representation they were derived from."""

    sigma: tuple[tuple[Weight, int], ...]
    scale: int

    def value(self, weight) -> int:
        w = tuple(weight)
        for vw, s in self.sigma:
            if vw == w:
                return s
        raise DomainError(f"character has no entry for vertex {w}")


def canonical_character(rep: QuiverRep) -> Character:
    """sigma_v = c1(F) rk(E_v) - rk(F) c1(E_v) for F the whole graded
    bundle.  Both terms are integers on these spaces; if a denominator
    ever appeared it would be cleared and recorded in scale."""
    space = rep.space
    ranks = [rootsys.bundle_rank(space, v.weight) for v in rep.vertices]
    chern = [Fraction(rootsys.first_chern(space, v.weight)) for v in rep.vertices]
    rk_total = sum(r * v.dim for r, v in zip(ranks, rep.vertices))
    c1_total = sum(c * v.dim for c, v in zip(chern, rep.vertices))
    values = [c1_total * r - rk_total * c for r, c in zip(ranks, chern)]
    denom = 1
    for x in values:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    sigma = tuple(
        (v.weight, int(x * denom)) for v, x in zip(rep.vertices, values)
    )
    return Character(sigma, denom)


def pairing(ch: Character, subdims: dict) -> int:
    """Pair the character with a dimension vector (weights to sizes)."""
    total = 0
    for w, s in ch.sigma:
        total += s * int(subdims.get(tuple(w), 0))
    return total


@dataclass(frozen=True)
class WitnessReport:
    arrow_closed: bool
    subdims: tuple[tuple[Weight, int], ...]
    pairing: int
    destabilizes: bool


def check_witness(rep: QuiverRep, spans, ch: Character) -> WitnessReport:
    """Close the given spanning sets under the arrows, report the pairing
    of the resulting subrepresentation.  Negative pairing exhibits a
    destabilizer (semistable needs >= 0 on every subrepresentation)."""
    given = []
    for v, vecs in zip(rep.vertices, spans):
        basis = SpanBasis(v.dim)
        for vec in vecs:
            basis.add(vec)
        given.append(basis.dim)
    bases = _closure_spans(rep, spans)
    closed = all(b.dim == g for b, g in zip(bases, given))
    subdims = {v.weight: b.dim for v, b in zip(rep.vertices, bases)}
    value = pairing(ch, subdims)
    return WitnessReport(
        closed,
        tuple(sorted(subdims.items())),
        value,
        destabilizes=value < 0,
    )


def _segment_support(rep: QuiverRep) -> tuple[list[int], tuple[int, int]]:
    """Vertex order along a single straight segment, with its box pair."""
    space = rep.space
    if len(rep.vertices) == 1:
        return [0], (1, 1)
    weights = [v.weight for v in rep.vertices]
    for box in rootsys.omega1_boxes(space):
        xi = rootsys.box_weight(space, *box)
        for start in range(len(weights)):
            chain = [start]
            w = weights[start]
            while True:
                nxt = rootsys.wadd(w, xi)
                idx = rep.vertex_index(nxt)
                if idx is None:
                    break
                chain.append(idx)
                w = nxt
            if len(chain) == len(weights):
                return chain, box
    raise DomainError("support is not a single segment")


def interval_multiplicities(rep: QuiverRep) -> dict[tuple[int, int], int]:
    """Decomposition of a segment representation into intervals [s, t]
    (positions along the chain, inclusive), by composite ranks."""
    chain, _ = _segment_support(rep)
    dims = [rep.vertices[i].dim for i in chain]
    n = len(chain)

    def composite_rank(s: int, t: int) -> int:
        if s < 0 or t >= n or s > t:
            return 0
        if s == t:
            return dims[s]
        product = linalg.identity(dims[s])
        for pos in range(s, t):
            m = rep.arrow_matrix(chain[pos], chain[pos + 1])
            if m is None:
                m = linalg.zeros(dims[pos + 1], dims[pos])
            product = matmul(m, product)
        return linalg.rank(product)

    out = {}
    for s in range(n):
        for t in range(s, n):
            mult = (
                composite_rank(s, t)
                - composite_rank(s - 1, t)
                - composite_rank(s, t + 1)
                + composite_rank(s - 1, t + 1)
            )
            if mult:
                out[(s, t)] = mult
    return out


def path_semistable(rep: QuiverRep, ch: Character) -> bool:
    """Exact semistability for a representation supported on one segment:
    every terminal piece of every interval summand must pair >= 0."""
    chain, _ = _segment_support(rep)
    weights = [rep.vertices[i].weight for i in chain]
    sigma = [ch.value(w) for w in weights]
    for (s, t), mult in interval_multiplicities(rep).items():
        if mult <= 0:
            continue
        for u in range(s, t + 1):
            if sum(sigma[u : t + 1]) < 0:
                return False
    return True


def _arrow_slots(rep: QuiverRep) -> list[tuple[int, int]]:
    """All quiver arrows between support vertices, present or not."""
    slots = []
    for i, v in enumerate(rep.vertices):
        for _, target in arrows_from(rep.space, v.weight):
            j = rep.vertex_index(target)
            if j is not None:
                slots.append((i, j))
    return slots


def tangent_dim(rep: QuiverRep) -> int:
    """Dimension of the linearized relation variety at the point, minus
    the orbit dimension of the base-change group."""
    violations = check_relations(rep)
    if violations:
        raise DomainError("tangent space is computed at valid points only")
    space = rep.space
    dims = rep.dims()
    slots = _arrow_slots(rep)
    offsets = {}
    total = 0
    for (i, j) in slots:
        offsets[(i, j)] = total
        total += dims[j] * dims[i]

    def slot_matrix(i, j):
        m = rep.arrow_matrix(i, j)
        if m is None:
            m = linalg.zeros(dims[j], dims[i])
        return m

    equations: list[list[Fraction]] = []
    for src, v in enumerate(rep.vertices):
        for boxes in double_additions(space, v.weight):
            for equation in relation_system(space, v.weight, boxes):
                tgt = rep.vertex_index(equation.target)
                if tgt is None:
                    continue
                rows = dims[tgt]
                cols = dims[src]
                coeff_rows = [
                    [Fraction(0)] * total for _ in range(rows * cols)
                ]
                touched = False
                for first, second, coeff in equation.terms:
                    mid_w = rootsys.wadd(
                        v.weight, rootsys.box_weight(space, *first)
                    )
                    mid = rep.vertex_index(mid_w)
                    if mid is None:
                        continue
                    end_w = rootsys.wadd(
                        mid_w, rootsys.box_weight(space, *second)
                    )
                    if rep.vertex_index(end_w) != tgt:
                        continue
                    touched = True
                    m1 = slot_matrix(src, mid)
                    m2 = slot_matrix(mid, tgt)
                    off1 = offsets[(src, mid)]
                    off2 = offsets[(mid, tgt)]
                    dmid = dims[mid]
                    # d/d(delta2): coeff * delta2 m1 ; d/d(delta1): coeff * m2 delta1
                    for r in range(rows):
                        for c in range(cols):
                            row = coeff_rows[r * cols + c]
                            for x in range(dmid):
                                row[off2 + r * dmid + x] += coeff * m1[x][c]
                                row[off1 + x * cols + c] += coeff * m2[r][x]
                if touched:
                    equations.extend(coeff_rows)
    if equations:
        deformation = total - linalg.rank(mat(equations))
    else:
        deformation = total

    end_dim = _endomorphism_dim(rep)
    gauge = sum(d * d for d in dims) - end_dim
    result = deformation - gauge
    if result < 0:
        raise DomainError(
            f"negative tangent dimension: deformations {deformation}, "
            f"gauge {gauge}, endomorphisms {end_dim}"
        )
    return result


def _endomorphism_dim(rep: QuiverRep) -> int:
    """Dimension of the space of vertex maps commuting with every arrow."""
    dims = rep.dims()
    offsets = []
    total = 0
    for d in dims:
        offsets.append(total)
        total += d * d
    rows: list[list[Fraction]] = []
    for a in rep.arrows:
        m = a.matrix
        du, dv = dims[a.src], dims[a.dst]
        for r in range(dv):
            for c in range(du):
                row = [Fraction(0)] * total
                # (A_dst M - M A_src)[r][c] = 0
                for x in range(dv):
                    row[offsets[a.dst] + r * dv + x] += m[x][c]
                for x in range(du):
                    row[offsets[a.src] + x * du + c] -= m[r][x]
                rows.append(row)
    if not rows:
        return total
    return total - linalg.rank(mat(rows))


@dataclass(frozen=True)
class Ex73Report:
    """Invariants of the seven-vertex family on the projective plane with
    multiplicity two in the middle."""

    s: Fraction
    t: Fraction
    branch: str
    middle_destabilized: bool
    semistable_flag: bool


def ex73_invariants(rep: QuiverRep) -> Ex73Report:
    """Evaluate the two generating invariants of the family and classify
    the point.  The middle row destabilizes exactly when the image of the
    incoming rank-one map meets the kernel of the outgoing one."""
    space = rep.space
    if space.k != 0 or space.n != 2:
        raise DomainError("this family lives on the projective plane")
    positions = {
        "top_in": (1, 1),      # Q(1)
        "middle": (-1, 2),     # Sym^2 Q(-1)
        "right_in": (0, 3),    # Sym^3 Q
        "out_left": (-2, 1),   # Q(-2)
        "out_down": (-3, 3),   # Sym^3 Q(-3)
    }
    idx = {}
    for name, w in positions.items():
        i = rep.vertex_index(w)
        if i is None:
            raise DomainError(f"support misses the vertex at {w}")
        idx[name] = i
    if rep.vertices[idx["middle"]].dim != 2:
        raise DomainError("middle multiplicity must be 2")

    def arrow(src, dst):
        m = rep.arrow_matrix(idx[src], idx[dst])
        if m is None:
            raise DomainError(f"missing arrow {src} -> {dst}")
        return m

    f1 = arrow("top_in", "middle")
    f2 = arrow("right_in", "middle")
    f3 = arrow("middle", "out_down")
    f4 = arrow("middle", "out_left")

    def scalar(m: Matrix) -> Fraction:
        return m[0][0]

    s41 = scalar(matmul(f4, f1))
    s32 = scalar(matmul(f3, f2))
    s42 = scalar(matmul(f4, f2))
    s31 = scalar(matmul(f3, f1))
    s = s41 * s32 * s32
    t = s42 * s32 * s31

    if s == 0 and t == 0:
        branch = "degenerate"
    elif s == 0:
        branch = "s_zero"
    elif t == 0:
        branch = "t_zero"
    elif s == t:
        branch = "s_equals_t"
    else:
        branch = "generic"

    def nonzero(m):
        return any(x != 0 for row in m for x in row)

    middle_destabilized = nonzero(f2) and nonzero(f3) and s32 == 0
    return Ex73Report(s, t, branch, middle_destabilized, not middle_destabilized)
