"""Exact lattice polytopes in low dimension.

Hulls are computed with integer arithmetic only: a monotone chain in the
plane and gift wrapping across ridges in dimension 3 and 4.  Facet
normals are primitive *inner* normals, so a polytope is
``{x : <normal, x> >= offset for every facet}``.

Volumes are normalized so that Z^n has covolume 1, and the mixed volume is
the inclusion-exclusion polarization of the volume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence, Union

from .lattice import (
    IntVector,
    LatticeBasis,
    LatticeError,
    coordinates_in_basis,
    determinant,
    dot,
    kernel,
    lattice_index,
    primitive,
    rank,
    saturation,
)

MAX_DIM = 4


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many lattice points.

    ``facets`` is empty unless the polytope is full dimensional; a lower
    dimensional polytope is described by its vertices and
    :meth:`affine_normals`.
    """

    ambient_rank: int
    vertices: tuple[IntVector, ...]
    facets: tuple[tuple[IntVector, int], ...]
    dim: int

    def contains(self, x: Sequence[int]) -> bool:
        if self.dim == self.ambient_rank:
            return all(dot(nrm, x) >= off for nrm, off in self.facets)
        return convex_hull(list(self.vertices) + [tuple(x)]).vertices == self.vertices

    def affine_normals(self) -> list[IntVector]:
        """Primitive generators of the lattice orthogonal to the affine hull."""
        v0 = self.vertices[0]
        diffs = [tuple(a - b for a, b in zip(v, v0)) for v in self.vertices[1:]]
        diffs = [d for d in diffs if any(d)]
        return list(kernel(diffs, self.ambient_rank)) if diffs else list(kernel([], self.ambient_rank))

    def translate(self, b: Sequence[int]) -> "Polytope":
        return convex_hull([tuple(x + y for x, y in zip(v, b)) for v in self.vertices])


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    p0 = points[0]
    return rank([_sub(p, p0) for p in points[1:]])


def _frame(points):
    """Affine lattice chart: (origin, difference lattice, integer coordinates of every point)."""
    p0 = min(points)
    lat = LatticeBasis(len(p0), tuple(_sub(p, p0) for p in points if p != p0))
    basis = LatticeBasis(len(p0), lat.hnf())
    coords = _echelon_coordinates([_sub(p, p0) for p in points], basis.generators)
    return p0, basis, coords


def _echelon_coordinates(points, rows):
    """Coordinates of lattice points w.r.t. HNF rows (echelon form, so back-substitution is exact)."""
    pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
    out = []
    for p in points:
        rem = list(p)
        c = []
        for r, j in zip(rows, pivots):
            q, m = divmod(rem[j], r[j])
            if m:
                raise LatticeError(f"point {p} not in lattice")
            c.append(q)
            if q:
                rem = [a - q * b for a, b in zip(rem, r)]
        if any(rem):
            raise LatticeError(f"point {p} not in lattice")
        out.append(tuple(c))
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(pts):
    """Counter-clockwise hull vertices (no collinear points) of a planar point set."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_fulldim(pts):
    """Facets of a full dimensional point set in Z^d as (normal, offset, point indices)."""
    d = len(pts[0])
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        return [
            ((1,), lo, frozenset(i for i, p in enumerate(pts) if p[0] == lo)),
            ((-1,), -hi, frozenset(i for i, p in enumerate(pts) if p[0] == hi)),
        ]
    if d == 2:
        hull = _monotone_chain(pts)
        out = []
        for a, b in zip(hull, hull[1:] + hull[:1]):
            nrm = primitive((a[1] - b[1], b[0] - a[0]))
            off = dot(nrm, a)
            out.append((nrm, off, frozenset(i for i, p in enumerate(pts) if dot(nrm, p) == off)))
        return out
    return _gift_wrap(pts)


def _wrap(pts, ridge, u, old_facet):
    """Rotate the supporting hyperplane with normal ``u`` around ``ridge`` onto the next facet."""
    d = len(pts[0])
    r0 = pts[ridge[0]]
    diffs = [_sub(pts[i], r0) for i in ridge[1:]]
    perp = kernel([x for x in diffs if any(x)], d)
    w = next(o for o in perp if rank([o, u]) == 2)
    if old_facet is not None:
        ridge_set = set(ridge)
        for i in old_facet:
            if i not in ridge_set:
                if dot(w, _sub(pts[i], r0)) < 0:
                    w = tuple(-x for x in w)
                break
    best = None
    for p in pts:
        rel = _sub(p, r0)
        x = dot(u, rel)
        if x <= 0:
            continue
        y = dot(w, rel)
        if best is None or y * best[0] < best[1] * x:
            best = (x, y)
    xq, yq = best
    nrm = primitive(tuple(xq * a - yq * b for a, b in zip(w, u)))
    off = dot(nrm, r0)
    return nrm, off, frozenset(i for i, p in enumerate(pts) if dot(nrm, p) == off)


def _relative_facets(sub_pts):
    """Facets of conv(sub_pts) relative to its affine hull, as index sets into sub_pts."""
    _, _, coords = _frame(sub_pts)
    return [f[2] for f in _facets_fulldim(coords)]


def _gift_wrap(pts):
    d = len(pts[0])
    proj = sorted(set(p[:-1] for p in pts))
    nrm0, off0, _ = _facets_fulldim(proj)[0]
    u = nrm0 + (0,)
    face = sorted(i for i, p in enumerate(pts) if dot(u, p) == off0)
    if affine_dimension([pts[i] for i in face]) == d - 1:
        first = (u, off0, frozenset(face))
    else:
        first = _wrap(pts, face, u, None)
    found = {first[0]: first}
    queue = [first]
    while queue:
        nrm, off, members = queue.pop()
        idx = sorted(members)
        for local in _relative_facets([pts[i] for i in idx]):
            ridge = sorted(idx[j] for j in local)
            nxt = _wrap(pts, ridge, nrm, idx)
            if nxt[0] not in found:
                found[nxt[0]] = nxt
                queue.append(nxt)
    return list(found.values())


def _vertices_fulldim(pts, facets):
    d = len(pts[0])
    if d == 2:
        return _monotone_chain(pts)
    out = []
    for i, p in enumerate(pts):
        normals = [f[0] for f in facets if i in f[2]]
        if len(normals) >= d and rank(normals) == d:
            out.append(p)
    return out


@lru_cache(maxsize=4096)
def _hull(points: tuple[IntVector, ...]) -> Polytope:
    n = len(points[0])
    pts = list(points)
    if len(pts) == 1:
        return Polytope(n, (pts[0],), (), 0)
    p0, basis, coords = _frame(pts)
    k = len(basis.generators)
    if k == 0:
        return Polytope(n, (pts[0],), (), 0)
    if k == n:
        # facets in the original coordinates so that normals and offsets are ambient
        facets = _facets_fulldim(pts)
        vertices = tuple(sorted(_vertices_fulldim(pts, facets)))
        return Polytope(n, vertices, tuple(sorted((f[0], f[1]) for f in facets)), n)
    facets = _facets_fulldim(coords)
    vert_coords = _vertices_fulldim(coords, facets)
    index = {c: i for i, c in enumerate(coords)}
    vertices = tuple(sorted(pts[index[c]] for c in vert_coords))
    return Polytope(n, vertices, (), k)


def convex_hull(points: Iterable[Sequence[int]]) -> Polytope:
    pts = tuple(sorted(set(tuple(int(x) for x in p) for p in points)))
    if not pts:
        raise PolytopeError("empty support")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise PolytopeError("points of different lengths")
    if n > MAX_DIM:
        raise PolytopeError(f"ambient rank {n} exceeds the supported maximum {MAX_DIM}")
    if n == 0:
        return Polytope(0, ((),), (), 0)
    return _hull(pts)


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient_rank != q.ambient_rank:
        raise PolytopeError("ambient rank mismatch")
    return convex_hull(tuple(a + b for a, b in zip(x, y)) for x in p.vertices for y in q.vertices)


def _points_of(obj) -> Sequence[Sequence[int]]:
    return obj.vertices if isinstance(obj, Polytope) else obj


def support_value(obj: Union[Polytope, Sequence[Sequence[int]]], v: Sequence[int]) -> int:
    """h(v) = min <v, x> over the points (concave convention)."""
    return min(dot(v, x) for x in _points_of(obj))


def face_in_direction(points: Sequence[Sequence[int]], v: Sequence[int]) -> list[IntVector]:
    """Points of minimal weight <v, .>; with v = 0 this is the whole set."""
    pts = [tuple(p) for p in points]
    h = min(dot(v, p) for p in pts)
    return [p for p in pts if dot(v, p) == h]


def _simplices(points):
    """Triangulation (fan from the lexicographic minimum) of conv(points) in its affine hull."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return [(pts[0],)]
    _, basis, coords = _frame(pts)
    k = len(basis.generators)
    if k == 0:
        return [(pts[0],)]
    if k == 1:
        lo = min(range(len(pts)), key=lambda i: coords[i])
        hi = max(range(len(pts)), key=lambda i: coords[i])
        return [(pts[lo], pts[hi])]
    v0 = pts[0]
    i0 = 0
    out = []
    for _, _, members in _facets_fulldim(coords):
        if i0 in members:
            continue
        for s in _simplices([pts[i] for i in members]):
            out.append((v0,) + s)
    return out


def normalized_volume(p: Polytope) -> Fraction:
    n = p.ambient_rank
    if p.dim < n:
        return Fraction(0) if n > 0 else Fraction(1)
    if n == 1:
        return Fraction(p.vertices[-1][0] - p.vertices[0][0])
    if n == 2:
        hull = _monotone_chain(list(p.vertices))
        area2 = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(hull, hull[1:] + hull[:1]))
        return Fraction(abs(area2), 2)
    total = 0
    for s in _simplices(list(p.vertices)):
        total += abs(determinant([_sub(x, s[0]) for x in s[1:]]))
    return Fraction(total, factorial(n))


def mixed_volume(polytopes: Sequence[Polytope], ambient_rank: int | None = None) -> int:
    """Mixed volume of n polytopes in Z^n by inclusion-exclusion over all nonempty subsets."""
    polytopes = list(polytopes)
    n = polytopes[0].ambient_rank if polytopes else (ambient_rank or 0)
    if ambient_rank is not None and ambient_rank != n:
        raise PolytopeError("dimension/arity mismatch")
    if len(polytopes) != n or any(p.ambient_rank != n for p in polytopes):
        raise PolytopeError("dimension/arity mismatch")
    if n == 0:
        return 1
    if n == 1:
        return int(normalized_volume(polytopes[0]))
    sums: dict[int, Polytope] = {}
    total = Fraction(0)
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        i = low.bit_length() - 1
        sums[mask] = polytopes[i] if rest == 0 else minkowski_sum(sums[rest], polytopes[i])
        sign = -1 if (n - bin(mask).count("1")) % 2 else 1
        total += sign * normalized_volume(sums[mask])
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"mixed volume {total} of lattice polytopes is not a nonnegative integer")
    return int(total)


def mixed_volume_sublattice(polytopes: Sequence[Polytope], lattice: LatticeBasis) -> Fraction:
    """Mixed volume with respect to a sublattice L (covolume of L equal to 1)."""
    r = lattice.rank
    if len(polytopes) != r:
        raise PolytopeError("dimension/arity mismatch")
    if r == 0:
        return Fraction(1)
    rel = [[_sub(v, p.vertices[0]) for v in p.vertices] for p in polytopes]
    try:
        coords = [coordinates_in_basis(pts, lattice) for pts in rel]
        return Fraction(mixed_volume([convex_hull(c) for c in coords]))
    except LatticeError:
        pass
    sat = saturation(lattice)
    try:
        coords = [coordinates_in_basis(pts, sat) for pts in rel]
    except LatticeError:
        raise PolytopeError("polytope does not lie in a translate of the lattice span") from None
    return Fraction(mixed_volume([convex_hull(c) for c in coords]), lattice_index(lattice))


def project(polytope: Polytope, matrix: Sequence[Sequence[int]]) -> Polytope:
    """Image of a polytope under an integer linear map."""
    return convex_hull(tuple(dot(row, v) for row in matrix) for v in polytope.vertices)
