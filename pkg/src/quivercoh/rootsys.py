"""Type A weight lattice and the bundle dictionary for Gr(P^k, P^n).

Weights are tuples of integers: the coefficients of the fundamental
weights of SL(n+1).  The space Gr(P^k, P^n) is the quotient of SL(n+1)
by the parabolic subgroup crossed at node k+1; projective space is the
case k = 0.  Irreducible homogeneous bundles are indexed by weights in
D_1 (coordinates nonnegative away from the crossed node), equivalently
by triples (alpha, beta, t): two partitions and an integer twist.

Everything here is pure int/Fraction arithmetic, so all values are
immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

Weight = tuple[int, ...]


@dataclass(frozen=True)
class Space:
    """The Grassmannian of projective k-planes in P^n."""

    k: int
    n: int

    def __post_init__(self):
        if not (0 <= self.k < self.n):
            raise DomainError(f"need 0 <= k < n, got k={self.k}, n={self.n}")

    @property
    def rank(self) -> int:
        return self.n

    @property
    def dim(self) -> int:
        return (self.k + 1) * (self.n - self.k)

    @property
    def crossed(self) -> int:
        """1-based index of the crossed Dynkin node."""
        return self.k + 1

    def __str__(self):
        return f"P^{self.n}" if self.k == 0 else f"Gr({self.k},{self.n})"


def check_weight(space: Space, w) -> Weight:
    w = tuple(int(x) for x in w)
    if len(w) != space.rank:
        raise DomainError(f"weight length {len(w)} != rank {space.rank}")
    return w


def wadd(w1: Weight, w2: Weight) -> Weight:
    return tuple(a + b for a, b in zip(w1, w2))


def wsub(w1: Weight, w2: Weight) -> Weight:
    return tuple(a - b for a, b in zip(w1, w2))


def wscale(c: int, w: Weight) -> Weight:
    return tuple(c * a for a in w)


def g_weight(space: Space) -> Weight:
    """Sum of the fundamental weights (all coordinates 1)."""
    return (1,) * space.rank


def fundamental(space: Space, i: int) -> Weight:
    if not 1 <= i <= space.rank:
        raise DomainError(f"fundamental weight index {i} out of range")
    return tuple(1 if j == i - 1 else 0 for j in range(space.rank))


def simple_root(space: Space, i: int) -> Weight:
    """alpha_i in fundamental-weight coordinates (a Cartan matrix row)."""
    if not 1 <= i <= space.rank:
        raise DomainError(f"simple root index {i} out of range")
    w = [0] * space.rank
    w[i - 1] = 2
    if i >= 2:
        w[i - 2] = -1
    if i < space.rank:
        w[i] = -1
    return tuple(w)


def to_eps(space: Space, w) -> tuple[int, ...]:
    """GL(n+1) coordinates with the last entry pinned to 0.

    e_i - e_{i+1} = w_i, so e is the suffix-sum vector of w.
    """
    w = check_weight(space, w)
    e = [0] * (space.rank + 1)
    for i in range(space.rank - 1, -1, -1):
        e[i] = e[i + 1] + w[i]
    return tuple(e)


def from_eps(space: Space, e) -> Weight:
    e = tuple(int(x) for x in e)
    if len(e) != space.rank + 1:
        raise DomainError(f"eps length {len(e)} != {space.rank + 1}")
    return tuple(e[i] - e[i + 1] for i in range(space.rank))


def killing(space: Space, w1, w2) -> Fraction:
    """Invariant pairing normalized so every root has square length 2."""
    e1 = to_eps(space, w1)
    e2 = to_eps(space, w2)
    m = space.rank + 1
    dot = sum(a * b for a, b in zip(e1, e2))
    return Fraction(dot) - Fraction(sum(e1) * sum(e2), m)


def _root_positions(space: Space, phi) -> tuple[int, int]:
    """For a root phi = eps_p - eps_q return 0-based (p, q)."""
    e = to_eps(space, phi)
    m = space.rank + 1
    total = sum(e)
    if total % m != 0:
        raise DomainError(f"{phi} is not a root")
    shift = total // m
    centered = [x - shift for x in e]
    pos = [i for i, x in enumerate(centered) if x == 1]
    neg = [i for i, x in enumerate(centered) if x == -1]
    rest = [x for x in centered if x not in (0, 1, -1)]
    if len(pos) != 1 or len(neg) != 1 or rest:
        raise DomainError(f"{phi} is not a root")
    return pos[0], neg[0]


def reflect(space: Space, phi, w) -> Weight:
    """Reflection of w in the hyperplane orthogonal to the root phi.

    In eps coordinates this swaps the two entries singled out by phi.
    """
    p, q = _root_positions(space, phi)
    e = list(to_eps(space, w))
    e[p], e[q] = e[q], e[p]
    last = e[-1]
    return from_eps(space, [x - last for x in e])


def check_partition(a) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise DomainError(f"negative part in partition {a}")
    if any(a[i] < a[i + 1] for i in range(len(a) - 1)):
        raise DomainError(f"partition {a} is not weakly decreasing")
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def weyl_dim(a, m: int) -> int:
    """dim of the Schur module with shape a on an m-dimensional space."""
    a = check_partition(a)
    if len(a) > m:
        raise DomainError(f"partition {a} has more than {m} parts")
    row = list(a) + [0] * (m - len(a))
    num = 1
    den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= row[i] - row[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class BundleShape:
    """Canonical (alpha, beta, t) data of an irreducible bundle
    S^alpha(U) . S^beta(Q*) (t): alpha has strictly fewer than k+2 parts
    with the column of height k+1 absorbed into t, and likewise beta."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    t: int


def make_shape(space: Space, alpha, beta, t: int) -> BundleShape:
    """Canonicalize shape data: validate, strip zeros, absorb full columns."""
    alpha = check_partition(alpha)
    beta = check_partition(beta)
    if len(alpha) > space.k + 1:
        raise DomainError(f"alpha {alpha} has more than {space.k + 1} parts")
    if len(beta) > space.n - space.k:
        raise DomainError(f"beta {beta} has more than {space.n - space.k} parts")
    t = int(t)
    if len(alpha) == space.k + 1 and alpha[-1] > 0:
        m = alpha[-1]
        alpha = check_partition(tuple(x - m for x in alpha))
        t -= m
    if len(beta) == space.n - space.k and beta[-1] > 0:
        m = beta[-1]
        beta = check_partition(tuple(x - m for x in beta))
        t -= m
    return BundleShape(alpha, beta, t)


def omega1_boxes(space: Space) -> list[tuple[int, int]]:
    """Box pairs (p, q), p a row of alpha and q a row of beta, indexing
    the weights of the cotangent bundle."""
    return [
        (p, q)
        for p in range(1, space.k + 2)
        for q in range(1, space.n - space.k + 1)
    ]


def box_weight(space: Space, p: int, q: int) -> Weight:
    """Weight translation of the arrow adding a box to alpha row p and
    beta row q: minus the sum of consecutive simple roots crossing the
    marked node."""
    if not (1 <= p <= space.k + 1 and 1 <= q <= space.n - space.k):
        raise DomainError(f"box pair ({p}, {q}) out of range")
    lo = space.k + 2 - p
    hi = space.k + q
    w = [0] * space.rank
    for i in range(lo, hi + 1):
        for j, c in enumerate(simple_root(space, i)):
            w[j] -= c
    return tuple(w)


def omega1_weights(space: Space) -> list[Weight]:
    """Weights of the cotangent bundle, in box-pair order."""
    return [box_weight(space, p, q) for p, q in omega1_boxes(space)]


def in_d1(space: Space, w) -> bool:
    w = check_weight(space, w)
    cross = space.crossed - 1
    return all(c >= 0 for i, c in enumerate(w) if i != cross)


def require_d1(space: Space, w) -> Weight:
    w = check_weight(space, w)
    if not in_d1(space, w):
        raise DomainError(f"weight {w} is not in D_1 for {space}")
    return w


def shape_to_weight(space: Space, sh: BundleShape) -> Weight:
    """Dominant-for-the-Levi weight of S^alpha(U) . S^beta(Q*) (t).

    Pinned by two requirements: the empty shape with twist t maps to
    t times the Picard generator, and adding the (p, q) box pair
    translates by box_weight(space, p, q).
    """
    k, n = space.k, space.n
    alpha = list(sh.alpha) + [0] * (k + 1 - len(sh.alpha))
    beta = list(sh.beta) + [0] * (n - k - len(sh.beta))
    w = [0] * n
    for i in range(1, k + 1):
        w[i - 1] = alpha[k - i] - alpha[k + 1 - i]
    w[k] = sh.t - alpha[0] - beta[0]
    for i in range(k + 2, n + 1):
        w[i - 1] = beta[i - k - 2] - beta[i - k - 1]
    return tuple(w)


def weight_to_shape(space: Space, w) -> BundleShape:
    w = require_d1(space, w)
    k, n = space.k, space.n
    alpha = tuple(sum(w[:k + 1 - j]) for j in range(1, k + 2))
    beta = tuple(sum(w[k + j:]) for j in range(1, n - k + 1))
    t = w[k] + alpha[0] + beta[0]
    return make_shape(space, alpha, beta, t)


def shape_rank(space: Space, sh: BundleShape) -> int:
    return weyl_dim(sh.alpha, space.k + 1) * weyl_dim(sh.beta, space.n - space.k)


def bundle_rank(space: Space, w) -> int:
    return shape_rank(space, weight_to_shape(space, w))


def slope(space: Space, w) -> Fraction:
    """First Chern class over rank; additive in the coordinates of w."""
    sh = weight_to_shape(space, w)
    return (
        Fraction(sh.t)
        - Fraction(sum(sh.alpha), space.k + 1)
        - Fraction(sum(sh.beta), space.n - space.k)
    )


def omega1_slope(space: Space) -> Fraction:
    return Fraction(-(space.n + 1), space.dim)


def first_chern(space: Space, w) -> int:
    c1 = slope(space, w) * bundle_rank(space, w)
    assert c1.denominator == 1
    return int(c1)


def twist(space: Space, w, t: int) -> Weight:
    """Tensor by the t-th power of the Picard generator."""
    w = check_weight(space, w)
    cross = space.crossed - 1
    return tuple(c + t if i == cross else c for i, c in enumerate(w))


def dual_weight(space: Space, w) -> Weight:
    """Weight of the dual bundle.

    In eps coordinates: negate, then reverse within each Levi block
    (positions 1..k+1 and k+2..n+1), then renormalize the last entry.
    """
    e = to_eps(space, w)
    cut = space.k + 1
    block1 = [-x for x in e[:cut]][::-1]
    block2 = [-x for x in e[cut:]][::-1]
    out = block1 + block2
    last = out[-1]
    return from_eps(space, [x - last for x in out])


def component_class(space: Space, w) -> int:
    """Label of the connected component of the quiver containing w:
    the class of w in the weight lattice modulo the root lattice."""
    w = check_weight(space, w)
    m = space.rank + 1
    return sum((i + 1) * c for i, c in enumerate(w)) % m


def dominant(w) -> bool:
    return all(c >= 0 for c in w)


def weight_partition(w) -> tuple[int, ...]:
    """Young diagram rows of a dominant weight (suffix sums)."""
    if not dominant(w):
        raise DomainError(f"weight {w} is not dominant")
    n = len(w)
    rows = []
    total = 0
    for i in range(n - 1, -1, -1):
        total += w[i]
        rows.append(total)
    return tuple(reversed(rows))


def module_dim(space: Space, nu) -> int:
    """Dimension of the irreducible SL(n+1) module with highest weight nu."""
    nu = check_weight(space, nu)
    return weyl_dim(weight_partition(nu), space.rank + 1)


@lru_cache(maxsize=None)
def _space_cache(k: int, n: int) -> Space:
    return Space(k, n)


def space(k: int, n: int) -> Space:
    return _space_cache(k, n)
