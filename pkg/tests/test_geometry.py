from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topocut.errors import DegenerateSpan
from topocut.geometry import (
    ColoredPointSet,
    Hyperplane,
    Side,
    as_rational,
    det,
    hyperplane_through,
    integerize,
    is_affinely_independent,
    is_general_position,
    moment_curve_point,
    orientation,
    perturb,
    rank,
)


def leibniz_det(rows):
    # Permutation expansion, independent of the elimination code under test.
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


small = st.integers(-20, 20)
fracs = st.fractions(min_value=-10, max_value=10, max_denominator=7)


def test_orientation_examples():
    assert orientation([(0, 0), (1, 0), (0, 1)]) == 1
    assert orientation([(0, 0), (1, 1), (2, 2)]) == 0
    assert orientation([(0, 0), (0, 1), (1, 0)]) == -1


def test_affine_independence_examples():
    assert is_affinely_independent([(0, 0), (1, 0), (0, 1)])
    assert not is_affinely_independent([(0, 0), (1, 0), (2, 0)])
    assert is_affinely_independent([(5, 7)])


def test_rationals_refuse_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/6") == Fraction(1, 2)


def test_general_position_examples():
    assert not ColoredPointSet(2, [[(0, 0), (1, 0), (2, 0)], [(5, 5)]]).in_general_position
    assert is_general_position(ColoredPointSet(2, [[(0, 0), (1, 0)], [(0, 1), (2, 3)]]))
    curve = [moment_curve_point(t, 3) for t in range(1, 5)]
    assert is_general_position(ColoredPointSet(3, [curve[:2], curve[2:3], curve[3:]]))


def test_point_set_rejects_duplicates():
    with pytest.raises(ValueError):
        ColoredPointSet(2, [[(0, 0)], [(0, 0)]])


def test_moment_curve_examples():
    assert moment_curve_point(2, 3) == (2, 4, 8)
    assert moment_curve_point(0, 4) == (0, 0, 0, 0)
    assert moment_curve_point(-1, 3) == (-1, 1, -1)


def test_hyperplane_through_examples():
    h = hyperplane_through([(0, 0), (1, 1)])
    assert h.normal == (1, -1) and h.offset == 0
    h = hyperplane_through([(0, 3), (2, 3)])
    assert h.normal == (0, 1) and h.offset == 3
    sample = [moment_curve_point(t, 3) for t in range(1, 8)]
    h = hyperplane_through(sample[:3])
    assert [h.side(p) for p in sample].count(Side.ON) == 3


def test_hyperplane_through_degenerate():
    with pytest.raises(DegenerateSpan):
        hyperplane_through([(0, 0), (0, 0)])


def test_hyperplane_canonical_equality():
    assert Hyperplane((2, -4), 6) == Hyperplane((-1, 2), -3)
    assert Hyperplane((Fraction(1, 2), Fraction(1, 3)), 1) == Hyperplane((3, 2), 6)


def test_side_semantics():
    h = Hyperplane((1, 0), 0)
    assert h.side((-1, 5)) is Side.POSITIVE_OPEN
    assert h.side((1, 5)) is Side.NEGATIVE_OPEN
    assert h.side((0, 5)) is Side.ON


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(rows):
    assert det(rows) == leibniz_det(rows)


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=5))
def test_rank_bounds(vectors):
    r = rank(vectors)
    assert 0 <= r <= 3
    if any(any(v) for v in vectors):
        assert r >= 1


@given(st.lists(st.tuples(fracs, fracs), min_size=1, max_size=6))
def test_integerize_preserves_ratios(points):
    ints, scale = integerize(points)
    assert all(isinstance(c, int) for p in ints for c in p)
    assert [tuple(Fraction(c, scale) for c in p) for p in ints] == [tuple(p) for p in points]


@given(st.lists(st.tuples(small, small, small), min_size=3, max_size=3, unique=True))
def test_hyperplane_through_contains_its_points(pts):
    if not is_affinely_independent(pts):
        return
    h = hyperplane_through(pts)
    assert all(h.side(p) is Side.ON for p in pts)
    assert h.normal[next(i for i, c in enumerate(h.normal) if c)] > 0
    # Permuting the input yields the identical canonical hyperplane.
    assert hyperplane_through(list(reversed(pts))) == h


@given(st.lists(st.tuples(small, small, small), min_size=4, max_size=4, unique=True))
def test_orientation_antisymmetric(pts):
    swapped = [pts[1], pts[0]] + pts[2:]
    assert orientation(swapped) == -orientation(pts)


def test_perturb_identity_when_general():
    ps = ColoredPointSet(2, [[(0, 0), (5, 1)], [(1, 4), (3, 7)]])
    out = perturb(ps, 3)
    assert out.eta == 0 and out.points == ps


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_perturb_repairs_collinear(seed):
    ps = ColoredPointSet(2, [[(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 1)]])
    out = perturb(ps, seed)
    assert out.points.in_general_position
    assert out.eta > 0
    for before, after in zip(ps.union, out.points.union):
        assert all(abs(a - b) <= out.eta for a, b in zip(before, after))
    assert perturb(ps, seed) == out
