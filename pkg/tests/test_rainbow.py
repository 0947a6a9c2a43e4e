from itertools import combinations, permutations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from topocut.errors import UnequalClassSizes
from topocut.geometry import ColoredPointSet
from topocut.rainbow import RainbowPartition, hulls_disjoint, rainbow_partition, verify_rainbow

from conftest import general_point_sets


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def on_segment(p, a, b):
    return (cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_meet(a, b, c, d):
    d1, d2 = cross(c, d, a), cross(c, d, b)
    d3, d4 = cross(a, b, c), cross(a, b, d)
    if ((d1 > 0) != (d2 > 0) and d1 and d2) and ((d3 > 0) != (d4 > 0) and d3 and d4):
        return True
    return on_segment(a, c, d) or on_segment(b, c, d) or on_segment(c, a, b) or on_segment(d, a, b)


def in_hull(p, hull):
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return on_segment(p, *hull)
    s = [cross(hull[0], hull[1], p), cross(hull[1], hull[2], p), cross(hull[2], hull[0], p)]
    return all(x >= 0 for x in s) or all(x <= 0 for x in s)


def hulls_meet_oracle(a, b):
    """Planar hulls of <= 3 points (triangles non-degenerate) meet iff a vertex
    of one lies in the other or two edges meet."""
    if any(in_hull(p, b) for p in a) or any(in_hull(p, a) for p in b):
        return True
    ea = list(combinations(a, 2))
    eb = list(combinations(b, 2))
    return any(segments_meet(*e, *f) for e in ea for f in eb)


coord = st.integers(-6, 6)
pt = st.tuples(coord, coord)


def nondegenerate(h):
    return len(h) < 3 or cross(*h) != 0


@settings(max_examples=400)
@given(st.lists(pt, min_size=1, max_size=3, unique=True), st.lists(pt, min_size=1, max_size=3, unique=True))
def test_hulls_disjoint_matches_planar_oracle(a, b):
    assume(nondegenerate(a) and nondegenerate(b))
    assert hulls_disjoint(a, b) == (not hulls_meet_oracle(a, b))


def test_hulls_disjoint_examples():
    assert hulls_disjoint([(0, 0), (1, 0)], [(0, 1), (1, 1)])
    assert not hulls_disjoint([(0, 0), (1, 0)], [(1, 0), (2, 5)])
    assert not hulls_disjoint([(0, 0), (2, 0), (0, 2)], [("1", "1/2")])


@settings(max_examples=100)
@given(st.lists(st.tuples(coord, coord, coord), min_size=1, max_size=4, unique=True),
       st.lists(st.tuples(coord, coord, coord), min_size=1, max_size=4, unique=True),
       st.integers(1, 6))
def test_hulls_disjoint_sampled_overlap_3d(a, b, den):
    # Any shared sampled convex combination proves the hulls meet.
    def samples(h):
        out = set()
        for w in st_weights(len(h), den):
            out.add(tuple(sum(wi * p[k] for wi, p in zip(w, h)) for k in range(3)))
        return out
    if samples(a) & samples(b):
        assert not hulls_disjoint(a, b)


def st_weights(n, den):
    # Integer weights summing to den; common denominator left implicit.
    if n == 1:
        yield (den,)
        return
    for first in range(den + 1):
        for rest in st_weights(n - 1, den - first):
            yield (first,) + rest


def test_single_pair():
    ps = ColoredPointSet(2, [[(0, 0)], [(3, 1)]])
    rp = rainbow_partition(ps)
    assert rp.tuples == (((0, 0), (3, 1)),) and rp.cut_tree is None


def test_two_pairs_against_crossing_oracle():
    reds, blues = [(0, 0), (10, 0)], [(1, 1), (9, 1)]
    good = [p for p in permutations(blues) if not segments_meet(reds[0], p[0], reds[1], p[1])]
    assert good == [((1, 1), (9, 1))]
    ps = ColoredPointSet(2, [reds, blues])
    rp = rainbow_partition(ps)
    assert {frozenset(t) for t in rp.tuples} == {frozenset({(0, 0), (1, 1)}), frozenset({(10, 0), (9, 1)})}
    crossing = RainbowPartition((((0, 0), (9, 1)), ((10, 0), (1, 1))), None)
    assert not verify_rainbow(ps, crossing)
    reused = RainbowPartition((((0, 0), (1, 1)), ((0, 0), (9, 1))), None)
    assert not verify_rainbow(ps, reused)


def test_odd_first_cut_carries_a_tuple():
    ps = ColoredPointSet(2, [[(0, 0), (7, 2), (3, 9)], [(1, 5), (8, 8), (5, -3)]])
    rp = rainbow_partition(ps)
    root = rp.cut_tree
    assert root.on_cut is not None and root.on_cut in rp.tuples
    assert all(root.cut.value(p) == 0 for p in root.on_cut)


def test_unequal_sizes_rejected():
    with pytest.raises(UnequalClassSizes):
        rainbow_partition(ColoredPointSet(2, [[(0, 0)], [(3, 1), (5, 7)]]))


@settings(max_examples=40, deadline=None)
@given(general_point_sets(dims=(2, 3), max_size=6, equal=True))
def test_partition_properties(ps):
    rp = rainbow_partition(ps)
    assert len(rp.tuples) == ps.sizes[0]
    assert sorted(p for t in rp.tuples for p in t) == sorted(ps.union)
    assert verify_rainbow(ps, rp)
    if ps.dimension == 2:
        assert all(not hulls_meet_oracle(s, t) for s, t in combinations(rp.tuples, 2))
