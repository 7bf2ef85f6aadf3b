"""Brute-force equivariant one-box (Pieri) maps on concrete Schur modules.

This module is the independent oracle for the relation coefficients used
by the quiver: it realizes Schur modules as explicit submodules of
products of symmetric powers, solves for the unique equivariant one-box
maps by linear algebra, and reads off composite coefficients, never
consulting the coefficient tables it is meant to check.

A realization of shape a on an m-space is generated from the highest
weight vector inside Sym^{a_1} x ... x Sym^{a_r} of C^m by repeated
lowering; multiplicity one makes every equivariant map recoverable by a
small solve on its highest weight vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg, rootsys
from .errors import DomainError, InternalCheckError
from .linalg import Matrix, mat, matmul, matvec
from .quiver import relation_system
from .rootsys import Space

Shape = tuple[int, ...]

MAX_BOXES = 8
MAX_DIM = 4


def semistandard_tableaux(a: Shape, m: int) -> list[tuple[tuple[int, ...], ...]]:
    """All semistandard tableaux of shape a with entries in 1..m."""
    a = rootsys.check_partition(a)
    if not a:
        return [()]

    rows: list[tuple[tuple[int, ...], ...]] = []

    def fill(done, row_idx):
        if row_idx == len(a):
            rows.append(tuple(done))
            return
        width = a[row_idx]
        above = done[row_idx - 1] if row_idx else None

        def fill_row(row, col):
            if col == width:
                fill(done + [tuple(row)], row_idx + 1)
                return
            lo = row[-1] if row else 1
            if above is not None and col < len(above):
                lo = max(lo, above[col] + 1)
            for entry in range(lo, m + 1):
                fill_row(row + [entry], col + 1)

        fill_row([], 0)

    fill([], 0)
    return rows


def tableau_content(tab, m: int) -> tuple[int, ...]:
    counts = [0] * m
    for row in tab:
        for x in row:
            counts[x - 1] += 1
    return tuple(counts)


def _sym_basis(d: int, m: int) -> list[tuple[int, ...]]:
    """Exponent vectors of monomials of degree d in m variables."""
    if m == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for v in range(remaining, -1, -1):
            rec(prefix + [v], remaining - v, slots - 1)

    rec([], d, m)
    return out


class _Ambient:
    """Product of symmetric powers of C^m with a sparse operator action."""

    def __init__(self, shape: Shape, m: int):
        self.shape = shape
        self.m = m
        factor_bases = [_sym_basis(d, m) for d in shape]
        self.basis: list[tuple[tuple[int, ...], ...]] = [()]
        for fb in factor_bases:
            self.basis = [prev + (mono,) for prev in self.basis for mono in fb]
        self.index = {b: i for i, b in enumerate(self.basis)}

    def weight(self, idx: int) -> tuple[int, ...]:
        w = [0] * self.m
        for mono in self.basis[idx]:
            for t, v in enumerate(mono):
                w[t] += v
        return tuple(w)

    def apply_E(self, p: int, q: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Matrix unit E_{pq} (0-based), acting as a derivation."""
        out: dict[int, Fraction] = {}
        for idx, coeff in vec.items():
            element = self.basis[idx]
            for f, mono in enumerate(element):
                if mono[q] == 0:
                    continue
                new_mono = list(mono)
                new_mono[q] -= 1
                new_mono[p] += 1
                new_elt = element[:f] + (tuple(new_mono),) + element[f + 1 :]
                j = self.index[new_elt]
                out[j] = out.get(j, Fraction(0)) + coeff * mono[q]
        return {i: c for i, c in out.items() if c != 0}


class _SparseEchelon:
    """Echelon basis of sparse vectors keyed by smallest index pivot."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        vec = dict(vec)
        for pivot in sorted(self.rows):
            if pivot in vec and vec[pivot] != 0:
                f = vec[pivot]
                for j, x in self.rows[pivot].items():
                    vec[j] = vec.get(j, Fraction(0)) - f * x
        return {i: c for i, c in vec.items() if c != 0}

    def add(self, vec) -> bool:
        red = self.reduce(vec)
        if not red:
            return False
        pivot = min(red)
        scale = red[pivot]
        self.rows[pivot] = {i: c / scale for i, c in red.items()}
        return True


@dataclass
class SchurRealization:
    """Concrete Schur module: basis vectors inside the ambient product of
    symmetric powers, the lowering tree that produced them, and the
    Chevalley generator action."""

    shape: Shape
    m: int
    ambient: _Ambient
    basis: list[dict[int, Fraction]]
    parents: list[tuple[int, int] | None]
    weights: list[tuple[int, ...]]
    tableaux: list
    _expand_cache: dict = field(default_factory=dict)
    _op_cache: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def kappa(self) -> int:
        return 0

    def basis_by_weight(self, w) -> list[int]:
        return [i for i, bw in enumerate(self.weights) if bw == tuple(w)]

    def expand(self, vec: dict[int, Fraction], w) -> list[Fraction]:
        """Coordinates of an ambient vector of weight w in this basis
        (zero for basis vectors of other weights)."""
        w = tuple(w)
        idxs = self.basis_by_weight(w)
        if not vec:
            return [Fraction(0)] * self.dim
        if w not in self._expand_cache:
            support = sorted(
                {i for j in idxs for i in self.basis[j]}
            )
            rows = [
                [self.basis[j].get(i, Fraction(0)) for j in idxs] for i in support
            ]
            self._expand_cache[w] = (support, mat(rows) if rows else ())
        support, matrix = self._expand_cache[w]
        rhs = [vec.get(i, Fraction(0)) for i in support]
        extra = set(vec) - set(support)
        if extra and any(vec[i] != 0 for i in extra):
            raise InternalCheckError("vector outside the realized module")
        x = linalg.solve(matrix, rhs)
        if x is None:
            raise InternalCheckError("vector outside the realized module")
        out = [Fraction(0)] * self.dim
        for pos, j in enumerate(idxs):
            out[j] = x[pos]
        return out

    def op_matrix(self, kind: str, i: int) -> Matrix:
        """Generator action: kind in {e, f, h}, 1 <= i <= m-1."""
        key = (kind, i)
        if key in self._op_cache:
            return self._op_cache[key]
        cols = []
        for j in range(self.dim):
            w = self.weights[j]
            if kind == "h":
                val = Fraction(w[i - 1] - w[i])
                cols.append([val if r == j else Fraction(0) for r in range(self.dim)])
                continue
            p, q = (i - 1, i) if kind == "e" else (i, i - 1)
            image = self.ambient.apply_E(p, q, self.basis[j])
            new_w = list(w)
            new_w[q] -= 1
            new_w[p] += 1
            cols.append(self.expand(image, new_w))
        matrix = linalg.transpose(mat(cols))
        self._op_cache[key] = matrix
        return matrix

    def e(self, i: int) -> Matrix:
        return self.op_matrix("e", i)

    def f(self, i: int) -> Matrix:
        return self.op_matrix("f", i)

    def h(self, i: int) -> Matrix:
        return self.op_matrix("h", i)


@lru_cache(maxsize=None)
def realize(a: Shape, m: int) -> SchurRealization:
    """Build the Schur module of shape a on an m-space from its highest
    weight vector by lowering closure."""
    a = rootsys.check_partition(a)
    if len(a) > m:
        raise DomainError(f"partition {a} has more than {m} parts")
    if sum(a) > MAX_BOXES or m > MAX_DIM:
        raise DomainError(
            f"realization limited to {MAX_BOXES} boxes on at most {MAX_DIM}-spaces"
        )
    ambient = _Ambient(a, m)
    content = tuple(list(a) + [0] * (m - len(a)))

    # highest weight vector: the weight-(content) solution of e_i v = 0
    hw_idxs = [i for i in range(len(ambient.basis)) if ambient.weight(i) == content]
    rows = []
    for p in range(m - 1):
        images: dict[int, dict[int, Fraction]] = {}
        for pos, idx in enumerate(hw_idxs):
            img = ambient.apply_E(p, p + 1, {idx: Fraction(1)})
            for amb, c in img.items():
                images.setdefault(amb, {})[pos] = c
        for amb in sorted(images):
            rowdata = images[amb]
            rows.append(
                [rowdata.get(pos, Fraction(0)) for pos in range(len(hw_idxs))]
            )
    if rows:
        kernel = linalg.nullspace(mat(rows))
    else:
        kernel = [
            tuple(Fraction(1 if i == j else 0) for i in range(len(hw_idxs)))
            for j in range(len(hw_idxs))
        ]
    if len(kernel) != 1:
        raise InternalCheckError(
            f"highest weight space of {a} on C^{m} has dimension {len(kernel)}"
        )
    vec = kernel[0]
    canonical = ambient.index[
        tuple(
            tuple(d if t == f else 0 for t in range(m))
            for f, d in enumerate(a)
        )
    ]
    pos_of = {idx: pos for pos, idx in enumerate(hw_idxs)}
    scale = vec[pos_of[canonical]]
    if scale == 0:
        raise InternalCheckError("canonical monomial missing from highest vector")
    kappa = {
        idx: vec[pos] / scale for idx, pos in pos_of.items() if vec[pos] != 0
    }

    basis = [kappa]
    parents: list[tuple[int, int] | None] = [None]
    weights = [content]
    echelons: dict[tuple[int, ...], _SparseEchelon] = {}
    ech = _SparseEchelon()
    ech.add(kappa)
    echelons[content] = ech

    queue = [0]
    while queue:
        j = queue.pop(0)
        for i in range(1, m):
            image = ambient.apply_E(i, i - 1, basis[j])
            if not image:
                continue
            w = list(weights[j])
            w[i - 1] -= 1
            w[i] += 1
            w = tuple(w)
            ech = echelons.setdefault(w, _SparseEchelon())
            if ech.add(image):
                basis.append(image)
                parents.append((j, i))
                weights.append(w)
                queue.append(len(basis) - 1)

    expected = rootsys.weyl_dim(a, m)
    if len(basis) != expected:
        raise InternalCheckError(
            f"closure of {a} on C^{m} has dimension {len(basis)}, expected {expected}"
        )

    tabs = semistandard_tableaux(a, m)
    by_content: dict[tuple[int, ...], list] = {}
    for t in sorted(tabs):
        by_content.setdefault(tableau_content(t, m), []).append(t)
    assigned = []
    counters: dict[tuple[int, ...], int] = {}
    for w in weights:
        k = counters.get(w, 0)
        assigned.append(by_content[w][k])
        counters[w] = k + 1
    return SchurRealization(a, m, ambient, basis, parents, weights, assigned)


def add_box(a: Shape, row: int) -> Shape:
    padded = list(a) + [0] * max(0, row - len(a))
    padded[row - 1] += 1
    return rootsys.check_partition(padded)


def box_addable(a: Shape, row: int, m: int) -> bool:
    if not 1 <= row <= m:
        return False
    padded = list(a) + [0] * max(0, row - len(a))
    return row == 1 or padded[row - 1] + 1 <= padded[row - 2]


def _product_weight(real: SchurRealization, i: int, t: int) -> tuple[int, ...]:
    w = list(real.weights[i])
    w[t] += 1
    return tuple(w)


def _highest_vectors(real: SchurRealization, target) -> list[tuple[Fraction, ...]]:
    """Highest weight vectors of the given weight in (module) x C^m,
    coordinates indexed i*m + t."""
    m = real.m
    target = tuple(target)
    candidates = []
    for i in range(real.dim):
        for t in range(m):
            if _product_weight(real, i, t) == target:
                candidates.append((i, t))
    if not candidates:
        return []
    rows = []
    for p in range(1, m):
        e_mat = real.e(p)
        images: dict[tuple[int, int], dict[int, Fraction]] = {}

        def put(coord, pos, c):
            row = images.setdefault(coord, {})
            row[pos] = row.get(pos, Fraction(0)) + c

        for pos, (i, t) in enumerate(candidates):
            for i2 in range(real.dim):
                c = e_mat[i2][i]
                if c != 0:
                    put((i2, t), pos, c)
            if t == p:  # E_{p,p+1} sends e_{p+1} to e_p (0-based t)
                put((i, p - 1), pos, Fraction(1))
        for coord in sorted(images):
            rowdata = images[coord]
            rows.append([rowdata.get(pos, Fraction(0)) for pos in range(len(candidates))])
    kernel = linalg.nullspace(mat(rows)) if rows else [
        tuple(Fraction(1 if i == j else 0) for i in range(len(candidates)))
        for j in range(len(candidates))
    ]
    out = []
    for vec in kernel:
        full = [Fraction(0)] * (real.dim * m)
        for pos, (i, t) in enumerate(candidates):
            full[i * m + t] = vec[pos]
        out.append(tuple(full))
    return out


@dataclass(frozen=True)
class PieriMatrix:
    """The equivariant one-box map from the module of the larger shape
    into (module of the smaller shape) x C^m, normalized so the highest
    vector maps to kappa x e_row plus lower terms with coefficient 1.
    Rows are indexed i*m + t over the target realization basis."""

    source: Shape
    target: Shape
    row: int
    m: int
    matrix: Matrix


@lru_cache(maxsize=None)
def _pieri_highest(a: Shape, row: int, m: int) -> tuple[Fraction, ...]:
    """Normalized image of the highest vector of a+box under the one-box
    map into (module a) x C^m."""
    if not box_addable(a, row, m):
        raise DomainError(f"cannot add a box in row {row} of {a} inside {m} rows")
    real = realize(a, m)
    target = add_box(a, row)
    content = tuple(list(target) + [0] * (m - len(target)))
    sols = _highest_vectors(real, content)
    if len(sols) != 1:
        raise InternalCheckError(
            f"one-box map space for {a} + row {row} has dimension {len(sols)}"
        )
    z = sols[0]
    norm = z[real.kappa * m + (row - 1)]
    if norm == 0:
        raise InternalCheckError("normalizing coefficient vanished in one-box map")
    return tuple(x / norm for x in z)


@lru_cache(maxsize=None)
def pieri_map(a: Shape, row: int, m: int) -> PieriMatrix:
    """Full matrix of the normalized one-box map, columns over the
    realization of a+box, built by lowering the highest column."""
    a = rootsys.check_partition(a)
    z = _pieri_highest(a, row, m)
    real = realize(a, m)
    source = realize(add_box(a, row), m)
    f_mats = [real.f(i) for i in range(1, m)]
    cols: list[list[Fraction]] = [list(z)]
    for j in range(1, source.dim):
        parent, i = source.parents[j]
        col = _lower_product(real, f_mats[i - 1], i, cols[parent])
        cols.append(col)
    return PieriMatrix(
        source.shape, a, row, m, linalg.transpose(mat(cols))
    )


def _lower_product(real: SchurRealization, f_mat: Matrix, i: int, vec) -> list[Fraction]:
    """Apply f_i x 1 + 1 x f_i on (module) x C^m coordinates."""
    m = real.m
    out = [Fraction(0)] * (real.dim * m)
    for idx, c in enumerate(vec):
        if c == 0:
            continue
        b, t = divmod(idx, m)
        for b2 in range(real.dim):
            fc = f_mat[b2][b]
            if fc != 0:
                out[b2 * m + t] += c * fc
        if t == i - 1:  # f_i sends e_i to e_{i+1} (0-based t)
            out[b * m + i] += c
    return out


def product_op(real: SchurRealization, kind: str, i: int) -> Matrix:
    """Generator action on (module) x C^m, for equivariance checks."""
    m = real.m
    base = real.op_matrix(kind, i)
    dim = real.dim * m
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for b in range(real.dim):
        for b2 in range(real.dim):
            c = base[b2][b]
            if c != 0:
                for t in range(m):
                    rows[b2 * m + t][b * m + t] += c
    for b in range(real.dim):
        if kind == "e":
            rows[b * m + (i - 1)][b * m + i] += 1
        elif kind == "f":
            rows[b * m + i][b * m + (i - 1)] += 1
        else:
            rows[b * m + (i - 1)][b * m + (i - 1)] += 1
            rows[b * m + i][b * m + i] += -1
    return mat(rows)


def equivariance_residuals(pm: PieriMatrix):
    """Yield residual matrices of the intertwining identity for every
    Chevalley generator (all must vanish)."""
    source = realize(pm.source, pm.m)
    target = realize(pm.target, pm.m)
    for kind in ("e", "f"):
        for i in range(1, pm.m):
            lhs = matmul(pm.matrix, source.op_matrix(kind, i))
            rhs = matmul(product_op(target, kind, i), pm.matrix)
            yield linalg.madd(lhs, linalg.mneg(rhs))


def two_step_coefficients(a: Shape, rows: tuple[int, int], m: int) -> tuple[Fraction, Fraction]:
    """Compose the one-box maps adding a box in rows[0] then rows[1]
    (each normalized) and read the coefficients of kappa x e_i x e_j and
    kappa x e_j x e_i in the image of the top highest vector."""
    i, j = rows
    a = rootsys.check_partition(a)
    if not box_addable(a, i, m):
        raise DomainError(f"cannot add a box in row {i} of {a}")
    a1 = add_box(a, i)
    if not box_addable(a1, j, m):
        raise DomainError(f"cannot add a box in row {j} of {a1}")
    z2 = _pieri_highest(a1, j, m)
    psi1 = pieri_map(a, i, m)
    real1 = realize(a1, m)
    kappa_block = realize(a, m).kappa * m

    def component(t: int) -> tuple[Fraction, ...]:
        vec = [z2[b * m + t] for b in range(real1.dim)]
        return matvec(psi1.matrix, vec)

    c_ij = component(j - 1)[kappa_block + (i - 1)]
    c_ji = component(i - 1)[kappa_block + (j - 1)]
    return c_ij, c_ji


class MultMap:
    """The unique equivariant surjection (module a) x C^m onto the module
    of a+box, normalized to send kappa x e_row to kappa."""

    def __init__(self, a: Shape, row: int, m: int):
        if not box_addable(a, row, m):
            raise DomainError(f"cannot add a box in row {row} of {a}")
        self.a = a
        self.row = row
        self.m = m
        self.source = realize(a, m)
        self.target_shape = add_box(a, row)
        self.target = realize(self.target_shape, m)
        real = self.source
        f_mats = [real.f(i) for i in range(1, m)]
        columns: list[list[Fraction]] = []
        self._target_dim = self.target.dim
        addable = [r for r in range(1, m + 1) if box_addable(a, r, m)]
        ordered = [row] + [r for r in addable if r != row]
        for r in ordered:
            sols = _highest_vectors(real, tuple(_padded_content(add_box(a, r), m)))
            if len(sols) != 1:
                raise InternalCheckError(
                    f"summand {add_box(a, r)} of {a} x C^{m} not multiplicity one"
                )
            block = [list(sols[0])]
            summand = realize(add_box(a, r), m)
            for jj in range(1, summand.dim):
                parent, i = summand.parents[jj]
                block.append(_lower_product(real, f_mats[i - 1], i, block[parent]))
            columns.extend(block)
        dim = real.dim * m
        if len(columns) != dim:
            raise InternalCheckError("summand dimensions do not fill the product")
        self._cmatrix = linalg.transpose(mat(columns))
        kappa_vec = [Fraction(0)] * dim
        kappa_vec[real.kappa * m + (row - 1)] = Fraction(1)
        raw = self._raw_apply(kappa_vec)
        norm = raw[self.target.kappa]
        if norm == 0:
            raise InternalCheckError("normalizing coefficient vanished in product map")
        if any(x != 0 for k, x in enumerate(raw) if k != self.target.kappa):
            raise InternalCheckError("kappa x e_row image is not a highest vector")
        self._norm = norm

    def _raw_apply(self, vec) -> list[Fraction]:
        x = linalg.solve(self._cmatrix, vec)
        if x is None:
            raise InternalCheckError("product vector outside the summand basis")
        return list(x[: self._target_dim])

    def apply(self, vec) -> list[Fraction]:
        return [x / self._norm for x in self._raw_apply(vec)]

    def apply_to(self, t: int, module_vec) -> list[Fraction]:
        """Image of module_vec x e_{t} (t 1-based)."""
        m = self.m
        vec = [Fraction(0)] * (self.source.dim * m)
        for b, c in enumerate(module_vec):
            vec[b * m + (t - 1)] = c
        return self.apply(vec)


def _padded_content(a: Shape, m: int) -> list[int]:
    return list(a) + [0] * (m - len(a))


@lru_cache(maxsize=None)
def mult_map(a: Shape, row: int, m: int) -> MultMap:
    return MultMap(rootsys.check_partition(a), row, m)


def _side_constant(a: Shape, m: int, first_row: int, second_row: int,
                   fed_first: int, fed_second: int) -> Fraction | None:
    """kappa coefficient of m2(e_fed2 x m1(e_fed1 x kappa)) on one side,
    or None when a step is invalid."""
    if not box_addable(a, first_row, m):
        return None
    a1 = add_box(a, first_row)
    if not box_addable(a1, second_row, m):
        return None
    m1 = mult_map(a, first_row, m)
    m2 = mult_map(a1, second_row, m)
    kappa0 = [Fraction(1 if i == 0 else 0) for i in range(m1.source.dim)]
    mid = m1.apply_to(fed_first, kappa0)
    out = m2.apply_to(fed_second, mid)
    return out[0]


def wedge_functionals(space: Space, w, boxes):
    """Evaluation constants of the antisymmetrized two-step compositions.

    Returns (paths, functionals): paths is the ordered list of existing
    two-step paths (first box pair, second box pair); each functional is
    the list of constants multiplying the corresponding path composites
    in one component of the quadratic obstruction.
    """
    (pa, qa), (pb, qb) = boxes
    p1, p2 = min(pa, pb), max(pa, pb)
    q1, q2 = min(qa, qb), max(qa, qb)
    sh = rootsys.weight_to_shape(space, w)
    mu, mq = space.k + 1, space.n - space.k

    path_list = sorted({
        ((pi, qj), (p1 + p2 - pi, q1 + q2 - qj))
        for pi in (p1, p2)
        for qj in (q1, q2)
    })

    def term(path, fed1, fed2):
        (pi, qj), (pl, qm) = path
        ku = _side_constant(sh.alpha, mu, pi, pl, fed1[0], fed2[0])
        kq = _side_constant(sh.beta, mq, qj, qm, fed1[1], fed2[1])
        if ku is None or kq is None:
            return None
        return ku * kq

    def functional(nA, nB):
        values = []
        for path in path_list:
            t1 = term(path, nB, nA)
            t2 = term(path, nA, nB)
            if t1 is None and t2 is None:
                values.append(None)
            else:
                values.append((t1 or Fraction(0)) - (t2 or Fraction(0)))
        return values

    wedges = []
    if p1 != p2 and q1 != q2:
        wedges.append(functional((p1, q2), (p2, q1)))
        wedges.append(functional((p1, q1), (p2, q2)))
    elif p1 == p2 and q1 != q2:
        wedges.append(functional((p1, q1), (p1, q2)))
    elif p1 != p2 and q1 == q2:
        wedges.append(functional((p1, q1), (p2, q1)))
    return path_list, wedges


def verify_relation_coefficients(space: Space, w, boxes) -> bool:
    """Check the emitted relation equations against the oracle constants.

    The span of the oracle functionals over existing paths must equal the
    span of the relation equations; mismatch raises.
    """
    path_list, wedges = wedge_functionals(space, w, boxes)
    exists = [i for i, p in enumerate(path_list) if _path_exists(space, w, p)]
    rows_oracle = []
    for func in wedges:
        row = [func[i] if func[i] is not None else Fraction(0) for i in exists]
        rows_oracle.append(row)
    equations = relation_system(space, w, boxes)
    rows_eq = []
    for equation in equations:
        coeffs = {(f, s): c for f, s, c in equation.terms}
        rows_eq.append([coeffs.get(path_list[i], Fraction(0)) for i in exists])

    oracle_nonzero = [r for r in rows_oracle if any(x != 0 for x in r)]
    if not rows_eq:
        if oracle_nonzero:
            raise InternalCheckError(
                f"oracle finds obstructions at {w} {boxes} but no equations emitted"
            )
        return True
    if not oracle_nonzero:
        raise InternalCheckError(
            f"equations emitted at {w} {boxes} but oracle functionals vanish"
        )
    if not _same_row_span(rows_oracle, rows_eq):
        raise InternalCheckError(
            f"relation equations at {w} {boxes} disagree with oracle constants: "
            f"oracle {rows_oracle}, equations {rows_eq}"
        )
    return True


def _path_exists(space: Space, w, path) -> bool:
    sh = rootsys.weight_to_shape(space, w)
    (pi, qj), (pl, qm) = path
    mu, mq = space.k + 1, space.n - space.k
    if not (box_addable(sh.alpha, pi, mu) and box_addable(sh.beta, qj, mq)):
        return False
    return box_addable(add_box(sh.alpha, pi), pl, mu) and box_addable(
        add_box(sh.beta, qj), qm, mq
    )


def _same_row_span(rows_a, rows_b) -> bool:
    if not rows_a or not rows_b:
        return not rows_a and not rows_b
    a = mat(rows_a)
    b = mat(rows_b)
    ra = linalg.rank(a)
    rb = linalg.rank(b)
    rab = linalg.rank(mat(list(rows_a) + list(rows_b)))
    return ra == rb == rab


# -------------------------------------------------------------- P^2 matrices


Ext = tuple[Fraction, Fraction, Fraction, Fraction]  # 1, x, y, x^y


def ext(c0=0, cx=0, cy=0, cxy=0) -> Ext:
    return (Fraction(c0), Fraction(cx), Fraction(cy), Fraction(cxy))


def ext_mul(u: Ext, v: Ext) -> Ext:
    a0, ax, ay, axy = u
    b0, bx, by, bxy = v
    return (
        a0 * b0,
        a0 * bx + ax * b0,
        a0 * by + ay * b0,
        a0 * bxy + axy * b0 + ax * by - ay * bx,
    )


def ext_add(u: Ext, v: Ext) -> Ext:
    return tuple(a + b for a, b in zip(u, v))


def ext_zero(u: Ext) -> bool:
    return all(c == 0 for c in u)


def ext_matmul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    assert len(A[0]) == inner
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ext()
            for k in range(inner):
                acc = ext_add(acc, ext_mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def ext_mat_add(A, B):
    return [[ext_add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def ext_mat_zero(A) -> bool:
    return all(ext_zero(x) for row in A for x in row)


def p2_matrices(k: int):
    """The bidiagonal extension matrices over the rank-2 exterior algebra
    (entries in 1, x, y, x^y), with their 1/(k+1) and 1/k prefactors."""
    if k < 1:
        raise DomainError("k must be >= 1")
    c = [[ext() for _ in range(k + 1)] for _ in range(k)]
    for i in range(k):
        c[i][i] = ext(cx=Fraction(1, k + 1))
        c[i][i + 1] = ext(cy=Fraction(1, k + 1))
    b = [[ext() for _ in range(k)] for _ in range(k + 1)]
    for i in range(k):
        b[i][i] = ext(cy=Fraction(-(k - i), k))
        b[i + 1][i] = ext(cx=Fraction(i + 1, k))
    return c, b


def wedge_check(k: int) -> bool:
    """Verify the three composition identities tying consecutive
    extension matrices together."""
    c_k, b_k = p2_matrices(k)
    c_k1, b_k1 = p2_matrices(k + 1)
    if not ext_mat_zero(ext_matmul(c_k, c_k1)):
        return False
    if not ext_mat_zero(ext_matmul(b_k1, b_k)):
        return False
    mixed = ext_mat_add(ext_matmul(c_k1, b_k1), ext_matmul(b_k, c_k))
    return ext_mat_zero(mixed)
