from fractions import Fraction

import pytest
from hypothesis import given, settings

from topocut.errors import ClassCountMismatch, NotGeneralPosition
from topocut.geometry import ColoredPointSet, Hyperplane
from topocut.hamsandwich import (
    BisectionCertificate,
    enumerate_all_cuts,
    find_cut,
    is_exact_bisection,
    side_counts,
    verify_cut,
)

from conftest import general_point_sets


def lines_through_pairs(reds, blues):
    """Brute-force oracle: every line through one red and one blue point that
    leaves floor(n/2) of each color strictly on each side."""
    def side(a, b, p):
        v = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        return (v > 0) - (v < 0)

    found = []
    for r in reds:
        for b in blues:
            ok = True
            for cls in (reds, blues):
                signs = [side(r, b, p) for p in cls]
                half = len(cls) // 2
                if signs.count(1) > half or signs.count(-1) > half:
                    ok = False
            if ok:
                found.append((r, b))
    return found


EXAMPLE = ColoredPointSet(2, [[(0, 0), (4, 0), (2, 5)], [(0, 3), (4, 3), (2, -2)]])


def test_line_example():
    cert = find_cut(ColoredPointSet(1, [[(1,), (2,), (3,), (4,)]]))
    assert cert.per_class_counts == ((2, 0, 2),)
    assert 2 < cert.cut.offset / cert.cut.normal[0] < 3
    cert = find_cut(ColoredPointSet(1, [[(1,), (2,), (3,)]]))
    assert cert.per_class_counts == ((1, 1, 1),)
    assert cert.cut.value((2,)) == 0


def test_plane_example_against_oracle():
    cert = find_cut(EXAMPLE)
    assert cert.per_class_counts == ((1, 1, 1), (1, 1, 1))
    assert verify_cut(EXAMPLE, cert)
    oracle = lines_through_pairs(*[[tuple(map(Fraction, p)) for p in c] for c in EXAMPLE.classes])
    on = [p for c in EXAMPLE.classes for p in c if cert.cut.value(p) == 0]
    assert tuple(on) in oracle


def test_enumerate_line():
    cuts = enumerate_all_cuts(ColoredPointSet(1, [[(1,), (2,), (3,)]]))
    assert [c.cut for c in cuts] == [Hyperplane((1,), 2)]


def test_enumerate_contains_find_cut():
    cuts = enumerate_all_cuts(EXAMPLE)
    assert cuts and find_cut(EXAMPLE).pivot in {c.cut for c in cuts}
    assert len(cuts) == len(lines_through_pairs(*EXAMPLE.classes))


def test_enumerate_single_points():
    ps = ColoredPointSet(2, [[(0, 0)], [(3, 1)]])
    cuts = enumerate_all_cuts(ps)
    assert Hyperplane((1, -3), 0) in {c.cut for c in cuts}
    assert all(c.per_class_counts == ((0, 1, 0), (0, 1, 0)) for c in cuts)


def test_verify_rejects_bad_certificates():
    cert = find_cut(EXAMPLE)
    far = Hyperplane(cert.cut.normal, cert.cut.offset + 10**6)
    assert not verify_cut(EXAMPLE, BisectionCertificate(far, side_counts(EXAMPLE, far)))
    tampered = ((0, 1, 2),) + cert.per_class_counts[1:]
    assert not verify_cut(EXAMPLE, BisectionCertificate(cert.cut, tampered))


def test_preconditions():
    with pytest.raises(NotGeneralPosition):
        find_cut(ColoredPointSet(2, [[(0, 0), (1, 1)], [(2, 2)]]))
    with pytest.raises(ClassCountMismatch):
        find_cut(ColoredPointSet(2, [[(0, 0)]]))


@settings(max_examples=60, deadline=None)
@given(general_point_sets(max_size=7))
def test_find_cut_exact_and_verified(ps):
    cert = find_cut(ps)
    assert is_exact_bisection(cert.per_class_counts, ps.sizes)
    assert verify_cut(ps, cert)
    assert find_cut(ps) == cert


@settings(max_examples=40, deadline=None)
@given(general_point_sets(dims=(1, 2), max_size=5))
def test_pivot_is_an_oracle_cut(ps):
    cert = find_cut(ps)
    assert cert.pivot in {c.cut for c in enumerate_all_cuts(ps)}
