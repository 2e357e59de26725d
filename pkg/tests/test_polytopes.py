import random
from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from sparseres.lattice import LatticeBasis
from sparseres.polytopes import (
    PolytopeError,
    affine_dimension,
    convex_hull,
    face_in_direction,
    minkowski_sum,
    mixed_volume,
    mixed_volume_sublattice,
    normalized_volume,
    project,
    support_value,
)

from helpers import random_full_support, random_support

coord = st.integers(-3, 3)


def point_sets(n, min_size=1, max_size=6):
    return st.lists(st.tuples(*[coord] * n), min_size=min_size, max_size=max_size)


def full_dim(n):
    return point_sets(n, n + 1, 7).filter(lambda pts: affine_dimension(pts) == n)


def test_unit_square():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (0, 0)])
    assert p.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert p.dim == 2 and len(p.facets) == 4
    assert normalized_volume(p) == 1


def test_interior_points_dropped():
    p = convex_hull([(0, 0), (2, 0), (0, 2), (1, 0), (1, 1), (0, 1)])
    assert p.vertices == ((0, 0), (0, 2), (2, 0))
    assert normalized_volume(p) == 2


def test_lower_dimensional():
    seg = convex_hull([(0, 0), (1, 1), (2, 2)])
    assert seg.dim == 1 and seg.vertices == ((0, 0), (2, 2)) and seg.facets == ()
    assert normalized_volume(seg) == 0
    assert seg.contains((1, 1)) and not seg.contains((1, 0))
    assert [tuple(v) for v in seg.affine_normals()] in ([(1, -1)], [(-1, 1)])
    point = convex_hull([(3, 4)])
    assert point.dim == 0 and point.vertices == ((3, 4),)


def test_unit_cube_and_simplex():
    cube = convex_hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert len(cube.vertices) == 8 and len(cube.facets) == 6
    assert normalized_volume(cube) == 1
    simplex = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert normalized_volume(simplex) == Fraction(1, 6)
    box4 = convex_hull([(a, b, c, d) for a in (0, 2) for b in (0, 1) for c in (0, 1) for d in (0, 3)])
    assert normalized_volume(box4) == 6


def test_dimension_cap():
    with pytest.raises(PolytopeError, match="exceeds"):
        convex_hull([(0,) * 5, (1, 0, 0, 0, 0)])
    with pytest.raises(PolytopeError):
        convex_hull([])


@given(full_dim(2))
def test_hull_2d_matches_qhull(pts):
    p = convex_hull(pts)
    hull = ConvexHull(np.array(pts, dtype=float))
    assert set(p.vertices) == {tuple(int(x) for x in hull.points[i]) for i in hull.vertices}
    assert float(normalized_volume(p)) == pytest.approx(hull.volume)
    for q in pts:
        assert p.contains(q)


@given(full_dim(3))
def test_hull_3d_matches_qhull(pts):
    p = convex_hull(pts)
    hull = ConvexHull(np.array(pts, dtype=float))
    assert set(p.vertices) == {tuple(int(x) for x in hull.points[i]) for i in hull.vertices}
    assert float(normalized_volume(p)) == pytest.approx(hull.volume)


def test_hull_4d_matches_qhull():
    rng = random.Random(4)
    for _ in range(15):
        pts = random_full_support(rng, 4, max_points=8)
        p = convex_hull(pts)
        hull = ConvexHull(np.array(pts, dtype=float))
        assert set(p.vertices) == {tuple(int(x) for x in hull.points[i]) for i in hull.vertices}
        assert float(normalized_volume(p)) == pytest.approx(hull.volume)


@given(point_sets(2), st.tuples(coord, coord))
def test_support_value_and_face(pts, v):
    h = support_value(pts, v)
    face = face_in_direction(pts, v)
    assert face and all(v[0] * p[0] + v[1] * p[1] == h for p in face)
    assert support_value(convex_hull(pts), v) == h


@given(point_sets(2), point_sets(2), st.tuples(coord, coord))
def test_support_value_additive(a, b, v):
    s = minkowski_sum(convex_hull(a), convex_hull(b))
    assert support_value(s, v) == support_value(a, v) + support_value(b, v)


def test_mixed_volume_examples():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert mixed_volume([tri, tri]) == 1
    seg_x = convex_hull([(0, 0), (1, 0)])
    seg_y = convex_hull([(0, 0), (0, 1)])
    assert mixed_volume([seg_x, seg_y]) == 1
    assert mixed_volume([seg_x, seg_x]) == 0
    # two degree-2 curves: Bezout
    quad = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert mixed_volume([quad, quad]) == 4
    assert mixed_volume([convex_hull([(0,), (3,)])]) == 3
    assert mixed_volume([], ambient_rank=0) == 1
    with pytest.raises(PolytopeError, match="mismatch"):
        mixed_volume([tri])


@given(full_dim(2))
def test_mixed_volume_diagonal(pts):
    p = convex_hull(pts)
    assert mixed_volume([p, p]) == factorial(2) * normalized_volume(p)


@given(full_dim(3))
def test_mixed_volume_diagonal_3d(pts):
    p = convex_hull(pts)
    assert mixed_volume([p, p, p]) == factorial(3) * normalized_volume(p)


@given(point_sets(2), point_sets(2), point_sets(2), st.tuples(coord, coord))
def test_mixed_volume_axioms(a, b, c, t):
    p, q, r = convex_hull(a), convex_hull(b), convex_hull(c)
    mv = mixed_volume([p, q])
    assert mv >= 0
    assert mv == mixed_volume([q, p])
    assert mv == mixed_volume([p.translate(t), q])
    assert mixed_volume([minkowski_sum(p, r), q]) == mv + mixed_volume([r, q])


@given(point_sets(3, max_size=4), point_sets(3, max_size=4), point_sets(3, max_size=4))
def test_mixed_volume_polarization_oracle(a, b, c):
    # MV(P, Q, R) from the coefficient of lambda mu nu in vol(lambda P + mu Q + nu R)
    p, q, r = convex_hull(a), convex_hull(b), convex_hull(c)
    mv = mixed_volume([p, q, r])

    def scaled(poly, k):
        return convex_hull([tuple(k * x for x in v) for v in poly.vertices])

    def vol(l, m, k):
        return normalized_volume(minkowski_sum(minkowski_sum(scaled(p, l), scaled(q, m)), scaled(r, k)))

    # third forward difference in each variable isolates the mixed term
    total = Fraction(0)
    for i in (0, 1):
        for j in (0, 1):
            for k in (0, 1):
                sign = (-1) ** (3 - i - j - k)
                total += sign * vol(i, j, k)
    assert mv == total


@given(point_sets(2), point_sets(2))
def test_mixed_volume_monotone(a, b):
    p, q = convex_hull(a), convex_hull(b)
    bigger = convex_hull(list(a) + [(3, 3), (-3, 3)])
    assert mixed_volume([bigger, q]) >= mixed_volume([p, q])


def test_sublattice_examples():
    seg = convex_hull([(0, 0), (2, 2)])
    assert mixed_volume_sublattice([seg], LatticeBasis(2, ((1, 1),))) == 2
    assert mixed_volume_sublattice([seg], LatticeBasis(2, ((2, 2),))) == 1
    assert mixed_volume_sublattice([], LatticeBasis.zero(2)) == 1
    with pytest.raises(PolytopeError):
        mixed_volume_sublattice([convex_hull([(0, 0), (1, 0)])], LatticeBasis(2, ((1, 1),)))


def test_sublattice_index_scaling():
    tri = convex_hull([(0, 0), (2, 0), (0, 2)])
    full = mixed_volume_sublattice([tri, tri], LatticeBasis.full(2))
    assert full == mixed_volume([tri, tri]) == 4
    assert mixed_volume_sublattice([tri, tri], LatticeBasis(2, ((2, 0), (0, 2)))) == 1


def test_product_formula():
    rng = random.Random(10)
    line = LatticeBasis(3, ((1, 0, 0),))
    plane = LatticeBasis(3, ((1, 0, 0), (0, 1, 0)))
    # one segment in the saturated line Z e_1, two more polytopes in Z^3
    for _ in range(25):
        seg = convex_hull([(0, 0, 0), (rng.randint(1, 3), 0, 0)])
        qs = [convex_hull(random_support(rng, 3, max_points=4)) for _ in range(2)]
        quotient = [project(q, [[0, 1, 0], [0, 0, 1]]) for q in qs]
        assert mixed_volume([seg] + qs) == mixed_volume_sublattice([seg], line) * mixed_volume(quotient)
    # two polygons in the plane z = 0, one polytope in Z^3
    for _ in range(25):
        ps = [convex_hull([(x, y, 0) for x, y in random_full_support(rng, 2, max_points=4)]) for _ in range(2)]
        q = convex_hull(random_support(rng, 3, max_points=4))
        rhs = mixed_volume_sublattice(ps, plane) * mixed_volume([project(q, [[0, 0, 1]])])
        assert mixed_volume(ps + [q]) == rhs


def test_project():
    cube = convex_hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    sq = project(cube, [[1, 0, 0], [0, 1, 0]])
    assert sq.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    line = project(cube, [[1, 1, 1]])
    assert line.vertices == ((0,), (3,))


def test_random_polygons_agree_with_shoelace():
    rng = random.Random(1)
    for _ in range(50):
        pts = random_support(rng, 2, max_points=6, lo=-4, hi=4)
        p = convex_hull(pts)
        if p.dim < 2:
            continue
        hull = ConvexHull(np.array(pts, dtype=float))
        assert float(normalized_volume(p)) == pytest.approx(hull.volume)
