"""The quiver of irreducible bundles and its finite representations.

Vertices are D_1 weights, arrows are the box-pair translations carried
by the cotangent bundle, and a homogeneous bundle is a representation:
a multiplicity space per vertex and an exact rational matrix per arrow.
Missing arrows are zero matrices; representations are stored sparsely
and are immutable after construction.

The quadratic relations a representation must satisfy are generated
lazily per (source, two-box target).  Their coefficients are rational
functions of the source shape; the pieri module verifies them against a
brute-force equivariant construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, rootsys
from .errors import DomainError, ParseError
from .linalg import Matrix, SpanBasis, mat, matmul, zeros
from .rootsys import BundleShape, Space, Weight

Box = tuple[int, int]


@dataclass(frozen=True)
class Vertex:
    weight: Weight
    dim: int


@dataclass(frozen=True)
class Arrow:
    src: int
    dst: int
    box: Box
    matrix: Matrix


@dataclass(frozen=True)
class QuiverRep:
    space: Space
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    def vertex_index(self, weight) -> int | None:
        w = tuple(weight)
        for i, v in enumerate(self.vertices):
            if v.weight == w:
                return i
        return None

    def arrow_matrix(self, src: int, dst: int) -> Matrix | None:
        for a in self.arrows:
            if a.src == src and a.dst == dst:
                return a.matrix
        return None

    def dims(self) -> tuple[int, ...]:
        return tuple(v.dim for v in self.vertices)


def arrows_from(space: Space, w) -> list[tuple[Box, Weight]]:
    """All quiver arrows out of w: the box pairs whose addition keeps
    both partitions valid, with their target weights."""
    sh = rootsys.weight_to_shape(space, w)
    out = []
    for p, q in rootsys.omega1_boxes(space):
        if _box_addable(sh.alpha, p, space.k + 1) and _box_addable(
            sh.beta, q, space.n - space.k
        ):
            out.append(((p, q), rootsys.wadd(w, rootsys.box_weight(space, p, q))))
    return out


def _box_addable(part: tuple[int, ...], row: int, nrows: int) -> bool:
    if row > nrows:
        return False
    padded = list(part) + [0] * (nrows - len(part))
    if row == 1:
        return True
    return padded[row - 1] + 1 <= padded[row - 2]


def _add_box(part: tuple[int, ...], row: int) -> tuple[int, ...]:
    padded = list(part) + [0] * max(0, row - len(part))
    padded[row - 1] += 1
    return tuple(padded)


def make_rep(space: Space, vertices, arrows) -> QuiverRep:
    """Validating, canonicalizing constructor.

    vertices: iterable of (weight, dim).  arrows: iterable of
    (src_weight, box, matrix) or (src_index, dst_index, box, matrix)
    against the given vertex order.  Vertices are reordered
    lexicographically by weight; arrow indices follow.
    """
    raw_vertices = [(rootsys.require_d1(space, w), int(d)) for w, d in vertices]
    if any(d < 1 for _, d in raw_vertices):
        raise DomainError("vertex multiplicities must be >= 1")
    weights = [w for w, _ in raw_vertices]
    if len(set(weights)) != len(weights):
        raise DomainError("duplicate vertex weights")
    classes = {rootsys.component_class(space, w) for w in weights}
    if len(classes) > 1:
        raise DomainError(
            "vertices lie in different connected components of the quiver"
        )
    order = sorted(range(len(raw_vertices)), key=lambda i: raw_vertices[i][0])
    new_vertices = tuple(Vertex(*raw_vertices[i]) for i in order)
    old_to_new = {old: new for new, old in enumerate(order)}

    new_arrows = []
    seen_pairs = set()
    for entry in arrows:
        if len(entry) == 3:
            src_w, box, matrix = entry
            src_old = weights.index(rootsys.check_weight(space, src_w))
            dst_w = rootsys.wadd(weights[src_old], rootsys.box_weight(space, *box))
            if dst_w not in weights:
                raise DomainError(f"arrow target {dst_w} is not a vertex")
            dst_old = weights.index(dst_w)
        else:
            src_old, dst_old, box, matrix = entry
        box = (int(box[0]), int(box[1]))
        src = old_to_new[src_old]
        dst = old_to_new[dst_old]
        sw, dw = new_vertices[src].weight, new_vertices[dst].weight
        if rootsys.wsub(dw, sw) != rootsys.box_weight(space, *box):
            raise DomainError(
                f"arrow {sw} -> {dw} does not match box pair {box}"
            )
        matrix = mat(matrix)
        if linalg.shape(matrix) != (new_vertices[dst].dim, new_vertices[src].dim):
            raise DomainError(f"arrow matrix shape mismatch at {sw} -> {dw}")
        if (src, dst) in seen_pairs:
            raise DomainError(f"duplicate arrow {sw} -> {dw}")
        seen_pairs.add((src, dst))
        new_arrows.append(Arrow(src, dst, box, matrix))
    new_arrows.sort(key=lambda a: (a.src, a.dst))
    return QuiverRep(space, new_vertices, tuple(new_arrows))


@dataclass(frozen=True)
class RelationEquation:
    """One quadratic relation: sum of coeff * (second arrow) o (first
    arrow) over two-step paths from source to target."""

    source: Weight
    target: Weight
    terms: tuple[tuple[Box, Box, Fraction], ...]


def double_additions(space: Space, w) -> list[tuple[Box, Box]]:
    """All unordered valid double box additions from w, as pairs of box
    pairs ((p1, q1), (p2, q2)) with p1 <= p2 and q1 <= q2."""
    sh = rootsys.weight_to_shape(space, w)
    ka, kb = space.k + 1, space.n - space.k
    alpha_pairs = _double_rows(sh.alpha, ka)
    beta_pairs = _double_rows(sh.beta, kb)
    return [
        ((p1, q1), (p2, q2))
        for p1, p2 in alpha_pairs
        for q1, q2 in beta_pairs
    ]


def _double_rows(part: tuple[int, ...], nrows: int) -> list[tuple[int, int]]:
    out = []
    padded = list(part) + [0] * (nrows - len(part))
    for r1 in range(1, nrows + 1):
        for r2 in range(r1, nrows + 1):
            rows = list(padded)
            rows[r1 - 1] += 1
            rows[r2 - 1] += 1
            if all(rows[i] >= rows[i + 1] for i in range(nrows - 1)):
                out.append((r1, r2))
    return out


def _tilde(space: Space, sh: BundleShape, r1: int, r2: int, side: str) -> int:
    part = sh.alpha if side == "alpha" else sh.beta
    nrows = space.k + 1 if side == "alpha" else space.n - space.k
    padded = list(part) + [0] * (nrows - len(part))
    return padded[r1 - 1] - padded[r2 - 1] + r2 - r1


def relation_system(space: Space, w, boxes) -> list[RelationEquation]:
    """The quadratic relations binding the two-step paths from w through
    the given unordered pair of box pairs.

    Case analysis on ptilde = alpha_{p1} - alpha_{p2} + p2 - p1 and
    qtilde likewise for beta: two equations when both exceed 1 and the
    rows are distinct on both sides, down to none when both equal 1.
    """
    (pa, qa), (pb, qb) = boxes
    p1, p2 = min(pa, pb), max(pa, pb)
    q1, q2 = min(qa, qb), max(qa, qb)
    w = rootsys.require_d1(space, w)
    sh = rootsys.weight_to_shape(space, w)
    alpha2 = _add_box(_add_box(sh.alpha, p1), p2)
    beta2 = _add_box(_add_box(sh.beta, q1), q2)
    try:
        target_shape = rootsys.make_shape(space, alpha2, beta2, sh.t)
    except DomainError as exc:
        raise DomainError(f"invalid double box addition {boxes} from {w}: {exc}")
    target = rootsys.shape_to_weight(space, target_shape)

    one = Fraction(1)

    def eq(terms):
        return RelationEquation(w, target, tuple(terms))

    if p1 == p2 and q1 == q2:
        return []
    if p1 == p2:
        qt = _tilde(space, sh, q1, q2, "beta")
        p = p1
        if qt == 1:
            return [eq([((p, q1), (p, q2), one)])]
        return [
            eq(
                [
                    ((p, q1), (p, q2), Fraction(1 + qt, qt)),
                    ((p, q2), (p, q1), -one),
                ]
            )
        ]
    if q1 == q2:
        pt = _tilde(space, sh, p1, p2, "alpha")
        q = q1
        if pt == 1:
            return [eq([((p1, q), (p2, q), one)])]
        return [
            eq(
                [
                    ((p1, q), (p2, q), Fraction(1 + pt, pt)),
                    ((p2, q), (p1, q), -one),
                ]
            )
        ]
    pt = _tilde(space, sh, p1, p2, "alpha")
    qt = _tilde(space, sh, q1, q2, "beta")
    if pt == 1 and qt == 1:
        return []
    if pt == 1:
        return [
            eq(
                [
                    ((p1, q1), (p2, q2), Fraction(1, qt) - 1),
                    ((p1, q2), (p2, q1), -one),
                ]
            )
        ]
    if qt == 1:
        return [
            eq(
                [
                    ((p1, q1), (p2, q2), 1 - Fraction(1, pt)),
                    ((p2, q1), (p1, q2), one),
                ]
            )
        ]
    return [
        eq(
            [
                ((p1, q1), (p2, q2), Fraction(1, qt) - Fraction(1, pt)),
                ((p1, q2), (p2, q1), -one),
                ((p2, q1), (p1, q2), one),
            ]
        ),
        eq(
            [
                ((p1, q1), (p2, q2), Fraction(1, pt * qt) - 1),
                ((p1, q2), (p2, q1), -Fraction(1, pt)),
                ((p2, q1), (p1, q2), -Fraction(1, qt)),
                ((p2, q2), (p1, q1), one),
            ]
        ),
    ]


@dataclass(frozen=True)
class Violation:
    source: Weight
    target: Weight
    equation: RelationEquation
    residual: Matrix


def _path_product(rep: QuiverRep, src: int, first: Box, second: Box) -> Matrix | None:
    """Matrix of (second arrow) o (first arrow) from vertex src, or None
    when the path leaves the support."""
    space = rep.space
    w = rep.vertices[src].weight
    mid_w = rootsys.wadd(w, rootsys.box_weight(space, *first))
    mid = rep.vertex_index(mid_w)
    if mid is None:
        return None
    end_w = rootsys.wadd(mid_w, rootsys.box_weight(space, *second))
    end = rep.vertex_index(end_w)
    if end is None:
        return None
    m1 = rep.arrow_matrix(src, mid)
    m2 = rep.arrow_matrix(mid, end)
    if m1 is None or m2 is None:
        return zeros(rep.vertices[end].dim, rep.vertices[src].dim)
    return matmul(m2, m1)


def check_relations(rep: QuiverRep) -> list[Violation]:
    """Evaluate every relation over the representation; missing arrows
    count as zero.  Empty list means the representation is valid."""
    out = []
    space = rep.space
    for src, v in enumerate(rep.vertices):
        for boxes in double_additions(space, v.weight):
            for equation in relation_system(space, v.weight, boxes):
                tgt = rep.vertex_index(equation.target)
                if tgt is None:
                    continue
                total = zeros(rep.vertices[tgt].dim, v.dim)
                for first, second, coeff in equation.terms:
                    prod = _path_product(rep, src, first, second)
                    if prod is not None:
                        total = linalg.madd(total, linalg.mscale(coeff, prod))
                if not linalg.is_zero_matrix(total):
                    out.append(Violation(v.weight, equation.target, equation, total))
    return out


def commutative_scale(space: Space, w, box: Box) -> int:
    """Positive factor turning the arrow out of w along box into the
    commutativity normalization (projective space only)."""
    if space.k != 0:
        raise DomainError("commutativity rescaling is specific to projective space")
    w = rootsys.check_weight(space, w)
    _, i = box
    out = 1
    for m in range(2, i + 1):
        out *= sum(w[m - 1 : i]) + (i - m + 1)
    return out


def rescale_to_commutative(rep: QuiverRep) -> QuiverRep:
    """Rescale arrow matrices so the relations become commutativity of
    all square diagrams (absent corners read as zero)."""
    space = rep.space
    arrows = [
        (
            a.src,
            a.dst,
            a.box,
            linalg.mscale(
                commutative_scale(space, rep.vertices[a.src].weight, a.box), a.matrix
            ),
        )
        for a in rep.arrows
    ]
    return QuiverRep(space, rep.vertices, tuple(Arrow(*a) for a in arrows))


def unscale_from_commutative(rep: QuiverRep) -> QuiverRep:
    """Inverse of rescale_to_commutative."""
    space = rep.space
    arrows = []
    for a in rep.arrows:
        s = commutative_scale(space, rep.vertices[a.src].weight, a.box)
        arrows.append(Arrow(a.src, a.dst, a.box, linalg.mscale(Fraction(1, s), a.matrix)))
    return QuiverRep(space, rep.vertices, tuple(arrows))


def dual_rep(rep: QuiverRep) -> QuiverRep:
    """Dual bundle: dual vertex weights, reversed arrows with negated
    transposed matrices."""
    space = rep.space
    vertices = [
        (rootsys.dual_weight(space, v.weight), v.dim) for v in rep.vertices
    ]
    arrows = []
    for a in rep.arrows:
        p, q = a.box
        dual_box = (space.k + 2 - p, space.n - space.k + 1 - q)
        arrows.append(
            (a.dst, a.src, dual_box, linalg.mneg(linalg.transpose(a.matrix)))
        )
    return make_rep(space, vertices, arrows)


def direct_sum(r1: QuiverRep, r2: QuiverRep) -> QuiverRep:
    if r1.space != r2.space:
        raise DomainError("direct sum needs a common space")
    space = r1.space
    weights = sorted({v.weight for v in r1.vertices} | {v.weight for v in r2.vertices})
    dim1 = {v.weight: v.dim for v in r1.vertices}
    dim2 = {v.weight: v.dim for v in r2.vertices}
    dims = {w: dim1.get(w, 0) + dim2.get(w, 0) for w in weights}
    vertices = [(w, dims[w]) for w in weights]

    def blocks(w_src, w_dst):
        rows = dims[w_dst]
        cols = dims[w_src]
        out = [[Fraction(0)] * cols for _ in range(rows)]
        for rep, dim_map, roff, coff in (
            (r1, dim1, 0, 0),
            (r2, dim2, dim1.get(w_dst, 0), dim1.get(w_src, 0)),
        ):
            si = rep.vertex_index(w_src)
            di = rep.vertex_index(w_dst)
            if si is None or di is None:
                continue
            m = rep.arrow_matrix(si, di)
            if m is None:
                continue
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    out[roff + i][coff + j] = x
        return out

    arrows = []
    pairs = set()
    for rep in (r1, r2):
        for a in rep.arrows:
            pair = (rep.vertices[a.src].weight, rep.vertices[a.dst].weight, a.box)
            pairs.add(pair)
    for w_src, w_dst, box in sorted(pairs):
        arrows.append((w_src, box, blocks(w_src, w_dst)))
    return make_rep(space, vertices, arrows)


def _closure_spans(rep: QuiverRep, spans) -> list[SpanBasis]:
    bases = []
    for v, vecs in zip(rep.vertices, spans):
        basis = SpanBasis(v.dim)
        for vec in vecs:
            if len(vec) != v.dim:
                raise DomainError("witness vector length mismatch")
            basis.add(vec)
        bases.append(basis)
    changed = True
    while changed:
        changed = False
        for a in rep.arrows:
            for vec in bases[a.src].basis():
                image = linalg.matvec(a.matrix, vec)
                if bases[a.dst].add(image):
                    changed = True
    return bases


def submodule_generated(rep: QuiverRep, spans) -> QuiverRep:
    """Smallest subrepresentation containing the given spanning vectors,
    one list per vertex in canonical order.  Vertices whose subspace is
    zero are dropped."""
    bases = _closure_spans(rep, spans)
    return _restrict(rep, bases)


def _restrict(rep: QuiverRep, bases: list[SpanBasis]) -> QuiverRep:
    keep = [i for i, b in enumerate(bases) if b.dim > 0]
    vertices = [(rep.vertices[i].weight, bases[i].dim) for i in keep]
    arrows = []
    for a in rep.arrows:
        if a.src not in keep or a.dst not in keep:
            continue
        src_basis = bases[a.src].basis()
        dst_basis = bases[a.dst].basis()
        bmat = linalg.transpose(mat(dst_basis))
        cols = []
        for vec in src_basis:
            image = linalg.matvec(a.matrix, vec)
            x = linalg.solve(bmat, image)
            if x is None:
                raise DomainError("spans are not arrow-closed")
            cols.append(x)
        arrows.append(
            (
                rep.vertices[a.src].weight,
                a.box,
                linalg.transpose(mat(cols)),
            )
        )
    return make_rep(rep.space, vertices, arrows)


def quotient_by(rep: QuiverRep, spans) -> QuiverRep:
    """Quotient of rep by the subrepresentation generated by spans."""
    bases = _closure_spans(rep, spans)
    vertices = []
    complements = []
    for v, basis in zip(rep.vertices, bases):
        comp = []
        probe = SpanBasis(v.dim)
        for row in basis.basis():
            probe.add(row)
        for j in range(v.dim):
            unit = [Fraction(1 if i == j else 0) for i in range(v.dim)]
            if probe.add(unit):
                comp.append(tuple(unit))
        complements.append((basis, comp))
        vertices.append((v.weight, len(comp)))
    keep = [i for i, (_, comp) in enumerate(complements) if comp]
    arrows = []
    for a in rep.arrows:
        if a.src not in keep or a.dst not in keep:
            continue
        sub_basis, comp_src = complements[a.src]
        dst_sub, comp_dst = complements[a.dst]
        full = mat(list(dst_sub.basis()) + list(comp_dst))
        cols = []
        for vec in comp_src:
            image = linalg.matvec(a.matrix, vec)
            x = linalg.solve(linalg.transpose(full), image)
            assert x is not None
            cols.append(x[dst_sub.dim :])
        arrows.append((rep.vertices[a.src].weight, a.box, linalg.transpose(mat(cols))))
    vertices = [vertices[i] for i in keep]
    return make_rep(rep.space, vertices, arrows)


def quotient_arriving_at(rep: QuiverRep, vertex: int) -> QuiverRep:
    """Quotient by the largest subrepresentation invisible from the given
    vertex: vectors all of whose path images have zero component there."""
    if not 0 <= vertex < len(rep.vertices):
        raise DomainError("vertex index out of range")
    dims = rep.dims()
    kernels: list[list[tuple[Fraction, ...]]] = []
    for i, d in enumerate(dims):
        if i == vertex:
            kernels.append([])
        else:
            kernels.append(
                [
                    tuple(Fraction(1 if a == b else 0) for a in range(d))
                    for b in range(d)
                ]
            )
    changed = True
    while changed:
        changed = False
        for a in rep.arrows:
            current = kernels[a.src]
            if not current:
                continue
            # shrink the source space to vectors mapping into the target space
            functionals = _complement_projector(kernels[a.dst], dims[a.dst])
            basis_matrix = linalg.transpose(mat(current))
            coeff = matmul(functionals, matmul(a.matrix, basis_matrix))
            combos = linalg.nullspace(coeff)
            if len(combos) == len(current):
                continue
            span = SpanBasis(dims[a.src])
            kept = []
            for combo in combos:
                vec = linalg.matvec(basis_matrix, combo)
                if span.add(vec):
                    kept.append(tuple(vec))
            kernels[a.src] = kept
            changed = True
    return quotient_by(rep, kernels)


def _complement_projector(span_vectors, dim: int) -> Matrix:
    """Rows spanning functionals vanishing on the given vectors."""
    if not span_vectors:
        return linalg.identity(dim)
    kernel = linalg.nullspace(mat(span_vectors))
    if not kernel:
        return zeros(1, dim)
    return mat(kernel)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            out = Fraction(int(num), int(den))
        else:
            out = Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}")
    return out


def rep_to_json(rep: QuiverRep) -> str:
    data = {
        "space": {"k": rep.space.k, "n": rep.space.n},
        "vertices": [
            {"weight": list(v.weight), "dim": v.dim} for v in rep.vertices
        ],
        "arrows": [
            {
                "from": a.src,
                "to": a.dst,
                "box": list(a.box),
                "matrix": [[frac_str(x) for x in row] for row in a.matrix],
            }
            for a in rep.arrows
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True)


def rep_from_json(text: str) -> QuiverRep:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}")
    try:
        space = Space(int(data["space"]["k"]), int(data["space"]["n"]))
        vertices = [
            (tuple(int(c) for c in v["weight"]), int(v["dim"]))
            for v in data["vertices"]
        ]
        arrows = [
            (
                int(a["from"]),
                int(a["to"]),
                (int(a["box"][0]), int(a["box"][1])),
                [[parse_frac(x) for x in row] for row in a["matrix"]],
            )
            for a in data.get("arrows", [])
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad representation schema: {exc!r}")
    return make_rep(space, vertices, arrows)
