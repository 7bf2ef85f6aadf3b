"""Cohomology of irreducible bundles and the geometry of Bott chambers.

The core algorithm: shift a weight by g, pass to eps coordinates, and
sort.  A tie means every cohomology group vanishes; otherwise the number
of inversions removed by the sort is the unique nonvanishing degree and
the sorted vector shifted back by g is the highest weight of the value.

Chambers are regions where that degree is constant.  Crossing a single
wall (a "mirror") moves the value one degree up or down while keeping
the same highest weight; these moves generate everything else in this
package: chamber enumeration, the Hasse path count, and the
differentials of the cohomology complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import rootsys
from .errors import DomainError
from .linalg import det, mat
from .rootsys import Space, Weight


@dataclass(frozen=True)
class BottValue:
    """Nonzero cohomology of an irreducible bundle: one degree, one
    dominant weight."""

    degree: int
    nu: Weight


def _merge_count(seq: list[int]) -> tuple[int, list[int]]:
    """Number of ascending pairs and the descending sort, by merge count."""
    n = len(seq)
    if n <= 1:
        return 0, list(seq)
    mid = n // 2
    cl, left = _merge_count(seq[:mid])
    cr, right = _merge_count(seq[mid:])
    merged = []
    i = j = cross = 0
    while i < len(left) and j < len(right):
        if left[i] >= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            cross += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return cl + cr + cross, merged


def bott(space: Space, w) -> BottValue | None:
    """Cohomology of the irreducible bundle with weight w in D_1.

    Returns None when the shifted weight is singular (all groups zero).
    """
    w = rootsys.require_d1(space, w)
    e = rootsys.to_eps(space, rootsys.wadd(w, rootsys.g_weight(space)))
    if len(set(e)) != len(e):
        return None
    inversions, ordered = _merge_count(list(e))
    nu = rootsys.wsub(
        rootsys.from_eps(space, [x - ordered[-1] for x in ordered]),
        rootsys.g_weight(space),
    )
    return BottValue(inversions, nu)


def chamber_key(space: Space, w) -> tuple[int, ...]:
    """Identifier of the Bott chamber containing a nonsingular weight:
    the permutation that sorts eps(w + g) descending."""
    e = rootsys.to_eps(space, rootsys.wadd(w, rootsys.g_weight(space)))
    if len(set(e)) != len(e):
        raise DomainError(f"weight {w} is singular; it lies on a wall")
    order = sorted(range(len(e)), key=lambda i: -e[i])
    return tuple(order)


@dataclass(frozen=True)
class Mirror:
    """Reflection of a weight into an adjacent chamber.

    target - source = (steps) * (the cotangent weight for box) when the
    move raises the degree, the negative otherwise.
    """

    target: Weight
    box: tuple[int, int]
    steps: int
    up: bool


def mirrors(space: Space, w) -> list[Mirror]:
    """All reflections of w into adjacent chambers, one wall crossed each.

    A candidate swap of eps entries is kept only when no other entry lies
    strictly between the two swapped values, which is exactly the
    condition that the segment to the target crosses a single wall.
    """
    value = bott(space, w)
    if value is None:
        raise DomainError(f"weight {w} is singular; no mirrors")
    g = rootsys.g_weight(space)
    e = list(rootsys.to_eps(space, rootsys.wadd(w, g)))
    out = []
    for p, q in rootsys.omega1_boxes(space):
        i = space.k + 1 - p          # 0-based slot in the first block
        j = space.k + q              # 0-based slot in the second block
        u, v = e[i], e[j]
        lo, hi = min(u, v), max(u, v)
        if any(lo < x < hi for idx, x in enumerate(e) if idx not in (i, j)):
            continue
        swapped = list(e)
        swapped[i], swapped[j] = v, u
        last = swapped[-1]
        target = rootsys.wsub(
            rootsys.from_eps(space, [x - last for x in swapped]), g
        )
        out.append(Mirror(target, (p, q), abs(u - v), up=u > v))
    return out


@lru_cache(maxsize=None)
def chamber_vertices(space: Space) -> tuple[tuple[Weight, int], ...]:
    """All weights whose cohomology is the trivial module, with their
    degrees: one per Bott chamber, found by closure under mirrors
    starting from zero.  Sorted by degree, then lexicographically."""
    zero = (0,) * space.rank
    seen = {zero}
    queue = [zero]
    while queue:
        w = queue.pop()
        for m in mirrors(space, w):
            if m.target not in seen:
                seen.add(m.target)
                queue.append(m.target)
    verts = []
    for w in seen:
        value = bott(space, w)
        assert value is not None and value.nu == zero
        verts.append((w, value.degree))
    verts.sort(key=lambda vw: (vw[1], vw[0]))
    return tuple(verts)


@lru_cache(maxsize=None)
def chamber_graph(space: Space) -> tuple[tuple[Weight, ...], tuple[tuple[int, int], ...]]:
    """Chamber adjacency: vertex weights and degree-raising edges
    (indices into the vertex tuple)."""
    verts = chamber_vertices(space)
    index = {w: i for i, (w, _) in enumerate(verts)}
    edges = []
    for w, _ in verts:
        for m in mirrors(space, w):
            if m.up:
                edges.append((index[w], index[m.target]))
    return tuple(w for w, _ in verts), tuple(sorted(set(edges)))


def hasse_degree(space: Space) -> int:
    """Number of maximal chains in the chamber adjacency graph: the
    degree of the minimal homogeneous embedding."""
    verts = chamber_vertices(space)
    weights, edges = chamber_graph(space)
    degree = {w: d for w, d in verts}
    paths = {i: 0 for i in range(len(weights))}
    for i, w in enumerate(weights):
        if degree[w] == 0:
            paths[i] = 1
    for i in sorted(range(len(weights)), key=lambda i: degree[weights[i]]):
        for a, b in edges:
            if a == i:
                paths[b] += paths[i]
    top = [i for i, w in enumerate(weights) if degree[w] == space.dim]
    assert len(top) == 1
    return paths[top[0]]


def components_count(cartan) -> int:
    """Number of connected components of the quiver of a space with the
    given Cartan matrix: the absolute value of its determinant."""
    rows = mat(cartan)
    if any(len(r) != len(rows) for r in rows):
        raise DomainError("Cartan matrix must be square")
    d = det(rows)
    assert d.denominator == 1
    return abs(int(d))


def cartan_matrix(letter: str, rank: int) -> list[list[int]]:
    """Cartan matrix of a simple type (A, B, C, D, E)."""
    letter = letter.upper()
    if rank < 1:
        raise DomainError("rank must be positive")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, down=-1, up=-1):
        a[i][j] = down
        a[j][i] = up

    if letter == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif letter == "B":
        if rank < 2:
            raise DomainError("type B needs rank >= 2")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, down=-2, up=-1)
    elif letter == "C":
        if rank < 2:
            raise DomainError("type C needs rank >= 2")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, down=-1, up=-2)
    elif letter == "D":
        if rank < 3:
            raise DomainError("type D needs rank >= 3")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif letter == "E":
        if rank not in (6, 7, 8):
            raise DomainError("type E needs rank 6, 7 or 8")
        # chain on nodes 0..rank-2, last node hangs off position 2
        for i in range(rank - 2):
            link(i, i + 1)
        link(2, rank - 1)
    else:
        raise DomainError(f"unknown type {letter!r}")
    return a
