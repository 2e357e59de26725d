import random
import math
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sparseres.lattice import LatticeBasis, apply
from sparseres.polytopes import convex_hull, mixed_volume
from sparseres.supports import (
    SupportFamily,
    analyze,
    directional_family,
    essential_subfamilies,
    nontrivial_directions,
    rank_criterion,
    support_function,
    tail_minkowski_sum,
)

from helpers import (
    CORNER_TRIANGLES,
    POINT_AND_QUADRATIC,
    SINGLETON_ESSENTIAL,
    TWO_SEGMENTS,
    random_support,
)


def _rank_oracle(supports, idx, n):
    vecs = [[x - y for x, y in zip(p, supports[i][0])] for i in idx for p in supports[i][1:]]
    return sympy.Matrix(vecs).rank() if vecs else 0


def _essential_oracle(family):
    k = family.n + 1
    out = []
    for size in range(1, k + 1):
        for j in combinations(range(k), size):
            if _rank_oracle(family.supports, j, family.n) != size - 1:
                continue
            if all(
                len(sub) <= _rank_oracle(family.supports, sub, family.n)
                for s in range(1, size)
                for sub in combinations(j, s)
            ):
                out.append(j)
    return out


def families(n, max_points=3):
    pt = st.tuples(*[st.integers(-2, 2)] * n)
    sup = st.lists(pt, min_size=1, max_size=max_points, unique=True)
    return st.lists(sup, min_size=n + 1, max_size=n + 1).map(SupportFamily.of)


def test_point_and_quadratic():
    rep = analyze(POINT_AND_QUADRATIC)
    assert rep.unique_essential == (0,)
    assert rep.degrees == (2, 0)
    assert rep.exponent_dA == 2
    assert not rep.resultant_trivial


def test_two_segments():
    rep = analyze(TWO_SEGMENTS)
    assert rep.unique_essential == (0, 1, 2)
    assert rep.degrees == (2, 2, 1)
    assert rep.exponent_dA == 1


def test_corner_triangles():
    rep = analyze(CORNER_TRIANGLES)
    assert rep.unique_essential == (0, 1, 2)
    assert rep.degrees == (3, 3, 1)
    assert rep.exponent_dA == 1
    assert mixed_volume([convex_hull(a) for a in CORNER_TRIANGLES.tail]) == 3


def test_singleton_essential():
    rep = analyze(SINGLETON_ESSENTIAL)
    assert rep.unique_essential == (0,)
    assert rep.degrees == (2, 0, 0)
    assert rep.exponent_dA == 2


def test_trivial_families():
    two_points = SupportFamily.of([[(0,)], [(1,)]])
    rep = analyze(two_points)
    assert rep.resultant_trivial and rep.unique_essential is None
    assert rep.degrees == (0, 0) and len(rep.essential_index_sets) == 2
    # A_0 and A_1 both singletons in rank 2; no essential subfamily is unique
    fam = SupportFamily.of([[(0, 0)], [(1, 1)], [(0, 0), (1, 0), (0, 1)]])
    assert analyze(fam).resultant_trivial
    # rank-deficient: every support on the x-axis
    flat = SupportFamily.of([[(0, 0), (1, 0)], [(0, 0), (2, 0)], [(0, 0), (1, 0)]])
    assert analyze(flat).resultant_trivial
    assert not rank_criterion(flat)


def test_rank_zero():
    rep = analyze(SupportFamily.of([[()]]))
    assert rep.unique_essential == (0,) and rep.degrees == (1,) and rep.exponent_dA == 1


def test_family_validation():
    with pytest.raises(ValueError, match="expected"):
        SupportFamily(2, (((0, 0),), ((1, 0),)))
    with pytest.raises(ValueError, match="duplicate"):
        SupportFamily.of([[(0,), (0,)], [(1,)]])
    with pytest.raises(ValueError, match="empty"):
        SupportFamily.of([[], [(1,)]])


@settings(max_examples=60)
@given(families(2))
def test_essential_matches_oracle(fam):
    assert essential_subfamilies(fam) == _essential_oracle(fam)


@settings(max_examples=60)
@given(families(2))
def test_criteria_agree(fam):
    # analyze raises if they disagree
    rep = analyze(fam)
    assert rep.resultant_trivial == (len(essential_subfamilies(fam)) != 1)
    assert rep.resultant_trivial == (not rank_criterion(fam))


@settings(max_examples=40)
@given(families(2))
def test_degrees_supported_on_essential(fam):
    rep = analyze(fam)
    if rep.resultant_trivial:
        return
    for i, d in enumerate(rep.degrees):
        assert (d > 0) == (i in rep.unique_essential)
    assert rep.exponent_dA >= 1


@settings(max_examples=30)
@given(families(2), st.data())
def test_permutation_invariance(fam, data):
    perm = data.draw(st.permutations(range(3)))
    other = SupportFamily.of([fam.supports[i] for i in perm])
    a, b = analyze(fam), analyze(other)
    assert a.resultant_trivial == b.resultant_trivial
    assert b.degrees == tuple(a.degrees[i] for i in perm)
    assert a.exponent_dA == b.exponent_dA


@settings(max_examples=30)
@given(families(2), st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=3))
def test_translation_invariance(fam, shifts):
    moved = SupportFamily.of([[tuple(x + s for x, s in zip(p, t)) for p in a] for a, t in zip(fam.supports, shifts)])
    a, b = analyze(fam), analyze(moved)
    assert (a.degrees, a.exponent_dA, a.unique_essential) == (b.degrees, b.exponent_dA, b.unique_essential)


@settings(max_examples=30)
@given(families(2))
def test_unimodular_invariance(fam):
    u = [[2, 1], [1, 1]]
    moved = SupportFamily.of([[apply(u, p) for p in a] for a in fam.supports])
    a, b = analyze(fam), analyze(moved)
    assert (a.degrees, a.exponent_dA) == (b.degrees, b.exponent_dA)


def test_scaling_multiplies_exponent():
    fam = SupportFamily.of([[(0, 0), (1, 0), (0, 1)]] * 3)
    base = analyze(fam)
    assert base.degrees == (1, 1, 1) and base.exponent_dA == 1
    doubled = SupportFamily.of([[(0, 0), (2, 0), (0, 2)]] * 3)
    rep = analyze(doubled)
    # L_A has index 4 in its saturation; degrees scale by the same factor
    assert rep.exponent_dA == 4
    assert rep.degrees == (4, 4, 4)


def test_degree_formula_oracle():
    rng = random.Random(3)
    for _ in range(20):
        sups = [random_support(rng, 2, max_points=4) for _ in range(3)]
        fam = SupportFamily.of(sups)
        rep = analyze(fam)
        if rep.resultant_trivial:
            continue
        hulls = [convex_hull(a) for a in sups]
        for i in range(3):
            assert rep.degrees[i] == mixed_volume([h for j, h in enumerate(hulls) if j != i])


def test_height_bound():
    rep = analyze(TWO_SEGMENTS)
    assert rep.height_bound == pytest.approx(2 * math.log(2) + 2 * math.log(2) + math.log(3))


def test_directions_corner_triangles():
    dirs = nontrivial_directions(CORNER_TRIANGLES.tail)
    assert dirs == [(-2, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)]


def test_directions_lower_dimensional():
    assert nontrivial_directions([[(0,), (1,)]]) == [(-1,), (1,)]
    # the tail sum of two parallel segments is a segment: only its two normals
    assert nontrivial_directions([[(0, 0), (1, 0)], [(0, 0), (2, 0)]]) == [(0, -1), (0, 1)]
    # a single point: none
    assert nontrivial_directions([[(0, 0)], [(1, 1)]]) == []


def test_directional_family_bottom_edge():
    tail = CORNER_TRIANGLES.tail
    df = directional_family(tail, (0, 1))
    assert df.faces == (((0, -1),), ((0, 0), (1, 0)))
    assert df.reduced_supports.n == 1
    assert analyze(df.reduced_supports).degrees == (1, 0)


def test_directional_family_top_edge():
    # v = (0, -1) selects the top edges: {(-1,0),(0,0)} and the apex {(0,2)}
    df = directional_family(CORNER_TRIANGLES.tail, (0, -1))
    assert {tuple(p) for p in df.faces[0]} == {(-1, 0), (0, 0)}
    assert df.faces[1] == ((0, 2),)
    assert df.translations == ((-1, 0), (0, 2))
    r1, r2 = df.reduced_supports.supports
    assert sorted(abs(p[0]) for p in r1) == [0, 1]
    assert r2 == ((0,),)


def test_directional_family_rejects_bad_input():
    with pytest.raises(ValueError, match="primitive"):
        directional_family(CORNER_TRIANGLES.tail, (0, 2))
    with pytest.raises(ValueError, match="face"):
        directional_family(CORNER_TRIANGLES.tail, (0, -1), translations=[(1, 1), (0, 2)])


@settings(max_examples=30)
@given(families(2, max_points=4), st.sampled_from([(1, 0), (0, 1), (1, 1), (-1, 2), (2, -1)]))
def test_directional_family_translation_choice(fam, v):
    tail = fam.tail
    df = directional_family(tail, v)
    alt = tuple(max(face) for face in df.faces)
    other = directional_family(tail, v, translations=alt)
    # reduced supports differ by a translation only
    for a, b in zip(df.reduced_supports.supports, other.reduced_supports.supports):
        shift = min(a)[0] - min(b)[0]
        assert sorted(p[0] for p in a) == sorted(p[0] + shift for p in b)
    assert analyze(df.reduced_supports).degrees == analyze(other.reduced_supports).degrees


def test_directional_family_basis_choice():
    v = (0, -1)
    a = directional_family(CORNER_TRIANGLES.tail, v)
    b = directional_family(CORNER_TRIANGLES.tail, v, basis=LatticeBasis(2, ((-1, 0),)))
    for ra, rb in zip(a.reduced_supports.supports, b.reduced_supports.supports):
        assert sorted(abs(p[0]) for p in ra) == sorted(abs(p[0]) for p in rb)


def test_support_function_additive():
    rng = random.Random(5)
    for _ in range(30):
        tail = [random_support(rng, 2) for _ in range(2)]
        total = tail_minkowski_sum(tail)
        v = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert support_function(total.vertices, v) == sum(support_function(a, v) for a in tail)


def test_directions_are_facet_normals():
    rng = random.Random(6)
    for _ in range(20):
        tail = [random_support(rng, 2, max_points=4) for _ in range(2)]
        total = tail_minkowski_sum(tail)
        dirs = nontrivial_directions(tail)
        if total.dim == 2:
            for v in dirs:
                face = [p for p in total.vertices if sum(x * y for x, y in zip(v, p)) == support_function(total.vertices, v)]
                assert len(face) == 2
        # orderings are canonical
        assert dirs == sorted(dirs)
        assert set(dirs) == set(nontrivial_directions(list(reversed(tail))))
