import math
import random
from fractions import Fraction

import mpmath
import pytest

from sparseres.errors import InputError
from sparseres.laurent import LaurentPolynomial, evaluate
from sparseres.numeric import NumericOptions, to_mpc
from sparseres.poisson import eval_sparse_resultant
from sparseres.reconstruct import (
    MultihomogeneousIntPolynomial,
    candidate_monomials,
    parse_polynomial,
    reconstruct,
    term_count_bound,
    verify_height_bound,
)
from sparseres.solver import solve_square_system
from sparseres.supports import SupportFamily, analyze

from helpers import (
    CORNER_TRIANGLES,
    POINT_AND_QUADRATIC,
    PRINTED_TWO_SEGMENTS,
    SINGLETON_ESSENTIAL,
    TWO_SEGMENTS,
    TWO_SEGMENTS_SWAPPED,
    complex_polys,
    rational_polys,
    rel,
)

NATURAL_TWO_SEGMENTS = "u0_0^2*u1_1^2*u2_0 + u0_0*u0_1*u1_0*u1_1*u2_1 + u0_1^2*u1_0^2*u2_2"


@pytest.fixture(scope="module")
def corner():
    return reconstruct(CORNER_TRIANGLES)


def test_point_and_quadratic():
    p = reconstruct(POINT_AND_QUADRATIC)
    assert p.to_text() == "u0_0^2"


def test_singleton_essential():
    assert reconstruct(SINGLETON_ESSENTIAL).to_text() == "u0_0^2"


def test_two_segments_natural_labeling():
    p = reconstruct(TWO_SEGMENTS)
    assert p == parse_polynomial(NATURAL_TWO_SEGMENTS, (2, 2, 3))
    assert p.multidegree == (2, 2, 1)


def test_two_segments_swapped_labeling_gives_printed_form():
    p = reconstruct(TWO_SEGMENTS_SWAPPED)
    assert p.equal_up_to_sign(parse_polynomial(PRINTED_TWO_SEGMENTS, (2, 2, 3)))


def test_corner_triangles(corner):
    assert len(corner) == 24
    assert corner.multidegree == (3, 3, 1)
    assert corner.content() == 1
    height, bound, ok = verify_height_bound(corner, CORNER_TRIANGLES)
    assert ok and height <= bound
    assert height == pytest.approx(math.log(max(abs(c) for c in corner.terms.values())))


def test_corner_triangles_agrees_with_evaluation(corner):
    rng = random.Random(30)
    for _ in range(5):
        polys = rational_polys(CORNER_TRIANGLES, rng)
        blocks = [[f.coefficient(p) for p in a] for f, a in zip(polys, CORNER_TRIANGLES.supports)]
        exact = corner.evaluate(blocks)
        val = eval_sparse_resultant(CORNER_TRIANGLES, polys).magnitude
        assert rel(val, abs(mpmath.mpf(exact.numerator) / exact.denominator)) < 1e-9


def test_corner_triangles_vanishes_on_systems_with_a_common_root(corner):
    rng = random.Random(31)
    for _ in range(3):
        polys = complex_polys(CORNER_TRIANGLES.supports, rng)
        xi = solve_square_system(polys[1:], NumericOptions()).points()[0]
        a = (0, 0)
        terms = dict(polys[0].terms)
        terms[a] = 0
        terms[a] = -evaluate(LaurentPolynomial(2, terms), xi)
        polys[0] = LaurentPolynomial(2, terms)
        blocks = [[to_mpc(f.coefficient(p)) for p in s] for f, s in zip(polys, CORNER_TRIANGLES.supports)]
        assert abs(corner.evaluate(blocks)) < 1e-10 * sum(abs(c) for c in corner.terms.values()) * 10**3


def test_nonvanishing_demo(corner):
    # a generic rational system has no common root, so the resultant is a nonzero rational
    rng = random.Random(32)
    polys = rational_polys(CORNER_TRIANGLES, rng)
    blocks = [[f.coefficient(p) for p in a] for f, a in zip(polys, CORNER_TRIANGLES.supports)]
    assert corner.evaluate(blocks) != 0


def test_reconstruction_is_primitive_and_normalized(corner):
    for p in (corner, reconstruct(TWO_SEGMENTS)):
        assert p.content() == 1
        assert p.terms[min(p.terms)] > 0


def test_seed_independence():
    assert reconstruct(TWO_SEGMENTS, seed=0) == reconstruct(TWO_SEGMENTS, seed=5)


def test_trivial_and_gated():
    with pytest.raises(InputError, match="nothing to reconstruct"):
        reconstruct(SupportFamily.of([[(0,)], [(1,)]]))
    big = SupportFamily.of([[(i, j) for i in range(4) for j in range(4)]] * 3)
    assert term_count_bound(big) > 10_000
    with pytest.raises(InputError, match="gate"):
        reconstruct(big)


def test_linear_family_is_determinant():
    fam = SupportFamily.of([[(0, 0), (1, 0), (0, 1)]] * 3)
    p = reconstruct(fam)
    assert len(p) == 6 and sorted(abs(c) for c in p.terms.values()) == [1] * 6


def test_candidate_monomials_contain_support(corner):
    cands = candidate_monomials(CORNER_TRIANGLES, analyze(CORNER_TRIANGLES).degrees)
    assert set(corner.terms) <= set(cands)
    assert len(cands) == term_count_bound(CORNER_TRIANGLES)


def test_text_roundtrip(corner):
    assert parse_polynomial(corner.to_text(), corner.block_sizes) == corner
    q = MultihomogeneousIntPolynomial((2,), (2,), {(2, 0): 3, (1, 1): -2})
    assert q.to_text() == "3*u0_0^2 - 2*u0_0*u0_1"
    assert parse_polynomial(q.to_text(), (2,)) == q
    assert q.negate().equal_up_to_sign(q)


def test_multidegree_enforced():
    with pytest.raises(ValueError, match="multidegree"):
        MultihomogeneousIntPolynomial((2,), (2,), {(1, 0): 1})


def test_height_bound_examples():
    for fam in (POINT_AND_QUADRATIC, TWO_SEGMENTS, CORNER_TRIANGLES):
        p = reconstruct(fam)
        _, bound, ok = verify_height_bound(p, fam)
        assert ok
        assert bound == pytest.approx(sum(d * math.log(len(a)) for d, a in zip(analyze(fam).degrees, fam.supports)))


def test_evaluate_exact():
    p = parse_polynomial(NATURAL_TWO_SEGMENTS, (2, 2, 3))
    assert p.evaluate([[1, 1], [1, 1], [1, 1, 1]]) == 3
    assert p.evaluate([[Fraction(1, 2), 2], [1, 3], [1, 0, 0]]) == Fraction(9, 4)
