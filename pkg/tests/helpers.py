"""Shared generators for the test suite."""

import json
import random
from fractions import Fraction
from importlib import resources

import mpmath

from sparseres.laurent import LaurentPolynomial
from sparseres.problem import load_problem
from sparseres.supports import SupportFamily

POINT_AND_QUADRATIC = SupportFamily.of([[(0,)], [(0,), (1,), (2,)]])
TWO_SEGMENTS = SupportFamily.of([[(0, 1), (1, 0)], [(0, 0), (1, 0)], [(0, 0), (0, 1), (0, 2)]])
CORNER_TRIANGLES = SupportFamily.of(
    [[(0, 0), (-1, 0), (0, -1)], [(0, 0), (-1, 0), (0, -1)], [(0, 0), (1, 0), (0, 1), (0, 2)]]
)
SINGLETON_ESSENTIAL = SupportFamily.of([[(1, 1)], [(0, 0), (1, 0), (0, 1)], [(0, 0), (2, 0), (0, 1)]])

# the same family as TWO_SEGMENTS with the points of A_1 listed in the opposite order
TWO_SEGMENTS_SWAPPED = SupportFamily.of([[(0, 1), (1, 0)], [(1, 0), (0, 0)], [(0, 0), (0, 1), (0, 2)]])

PRINTED_TWO_SEGMENTS = "u0_0^2*u1_0^2*u2_0 + u0_0*u0_1*u1_0*u1_1*u2_1 + u0_1^2*u1_1^2*u2_2"


def fixture(name):
    path = resources.files("sparseres") / "fixtures" / name
    return load_problem(path.read_text())


def random_rational(rng, bound=20):
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def unit_circle(rng):
    return mpmath.expjpi(mpmath.mpf(rng.uniform(0, 2)))


def rational_polys(family, rng, bound=20):
    return [LaurentPolynomial(family.n, {p: random_rational(rng, bound) for p in a}) for a in family.supports]


def complex_polys(supports, rng, n=None):
    n = len(supports[0][0]) if n is None else n
    return [LaurentPolynomial(n, {p: unit_circle(rng) for p in a}) for a in supports]


def random_support(rng, n, max_points=4, lo=-2, hi=2, min_points=2):
    k = rng.randint(min_points, max_points)
    pts = set()
    while len(pts) < k:
        pts.add(tuple(rng.randint(lo, hi) for _ in range(n)))
    return tuple(sorted(pts))


def random_full_support(rng, n, max_points=4, lo=-2, hi=2):
    """A support whose convex hull is full dimensional."""
    from sparseres.polytopes import convex_hull

    while True:
        a = random_support(rng, n, max_points=max(max_points, n + 1), lo=lo, hi=hi, min_points=n + 1)
        if convex_hull(a).dim == n:
            return a


def rel(a, b):
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    scale = max(abs(a), abs(b))
    return 0 if scale == 0 else float(abs(a - b) / scale)


def dump(obj):
    return json.dumps(obj, sort_keys=True)
