"""Discrete ham sandwich cuts for d point classes in R^d.

The search works on the all-odd reduction: one point is set aside from every
even class, after which a bisecting hyperplane must pass through exactly one
point of each class (general position). Those d-tuples form a finite
candidate set. The winning hyperplane (the *pivot*) is then tilted by a small
exact amount so that each even class loses its on-cut point to the lighter
side, which gives exactly floor(|A_i|/2) points per open side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import (
    ClassCountMismatch,
    DegenerateSpan,
    DimensionMismatch,
    NotGeneralPosition,
    ParameterRange,
    SearchExhausted,
)
from .geometry import (
    ColoredPointSet,
    Hyperplane,
    Side,
    _cofactor_normal,
    hyperplane_through,
    integerize,
    is_affinely_independent,
)

MAX_SOLVER_DIMENSION = 4
MAX_ORACLE_POINTS = 40
_MAX_TILT_HALVINGS = 256


@dataclass(frozen=True)
class BisectionCertificate:
    """A cut plus its per-class (positive_open, on, negative_open) counts.

    ``pivot`` is the hyperplane spanned by one input point per (reduced)
    class that ``cut`` was tilted from; it equals ``cut`` when no tilt was
    needed and is ``None`` for certificates produced by the oracle.
    """

    cut: Hyperplane
    per_class_counts: tuple
    pivot: Hyperplane | None = None


def side_counts(ps: ColoredPointSet, h: Hyperplane) -> tuple:
    if h.dimension != ps.dimension:
        raise DimensionMismatch("hyperplane and point set dimensions differ")
    out = []
    for cls in ps.classes:
        tally = {Side.POSITIVE_OPEN: 0, Side.ON: 0, Side.NEGATIVE_OPEN: 0}
        for p in cls:
            tally[h.side(p)] += 1
        out.append((tally[Side.POSITIVE_OPEN], tally[Side.ON], tally[Side.NEGATIVE_OPEN]))
    return tuple(out)


def satisfies_contract(counts, sizes, general_position: bool = True) -> bool:
    """Floor bisection: neither open side holds more than floor(|A_i|/2) points.

    In general position at most one point per class may lie on the cut.
    """
    if len(counts) != len(sizes):
        return False
    for (pos, on, neg), n in zip(counts, sizes):
        if pos + on + neg != n:
            return False
        if pos > n // 2 or neg > n // 2:
            return False
        if general_position and on > 1:
            return False
    return True


def is_exact_bisection(counts, sizes) -> bool:
    """Exactly floor(|A_i|/2) per open side and at most one point on the cut."""
    return len(counts) == len(sizes) and all(
        pos == neg == n // 2 and on == n - 2 * (n // 2)
        for (pos, on, neg), n in zip(counts, sizes)
    )


def _check_instance(ps: ColoredPointSet, check_general_position: bool):
    d = ps.dimension
    if len(ps.classes) != d:
        raise ClassCountMismatch(f"{len(ps.classes)} classes in R^{d}; need exactly {d}")
    if d > MAX_SOLVER_DIMENSION:
        raise ParameterRange(f"solver dimension capped at {MAX_SOLVER_DIMENSION}")
    if any(n == 0 for n in ps.sizes):
        raise ParameterRange("every class needs at least one point")
    if check_general_position and not ps.in_general_position:
        raise NotGeneralPosition("input is not in general position; perturb it first")


def _int_hyperplane(pts, d):
    q0 = pts[0]
    rows = [[a - b for a, b in zip(q, q0)] for q in pts[1:]]
    normal = _cofactor_normal(rows, d)
    g = 0
    for c in normal:
        g = math.gcd(g, c)
    if g == 0:
        return None
    if next(c for c in normal if c != 0) < 0:
        g = -g
    normal = tuple(c // g for c in normal)
    return normal, sum(a * b for a, b in zip(normal, q0))


def _bisects(normal, offset, classes, limits) -> bool:
    for cls, lim in zip(classes, limits):
        pos = neg = 0
        for q in cls:
            s = sum(a * b for a, b in zip(normal, q))
            if s < offset:
                pos += 1
                if pos > lim:
                    return False
            elif s > offset:
                neg += 1
                if neg > lim:
                    return False
    return True


def _pivot_candidates(ps: ColoredPointSet):
    """Yield (deletion choice, sorted valid pivots) in lexicographic deletion order."""
    d = ps.dimension
    ints, scale = integerize(ps.union)
    classes, i = [], 0
    for n in ps.sizes:
        classes.append(ints[i:i + n])
        i += n
    limits = [n // 2 for n in ps.sizes]
    even = [k for k, n in enumerate(ps.sizes) if n % 2 == 0]
    for choice in product(*(range(ps.sizes[k]) for k in even)):
        dropped = dict(zip(even, choice))
        reduced = [
            [q for j, q in enumerate(cls) if dropped.get(k) != j] for k, cls in enumerate(classes)
        ]
        reduced_limits = [len(r) // 2 for r in reduced]
        found = []
        for tup in product(*reduced):
            hp = _int_hyperplane(tup, d)
            if hp is None:
                continue
            normal, offset = hp
            if _bisects(normal, offset, reduced, reduced_limits) and _bisects(
                normal, offset, classes, limits
            ):
                found.append((normal, offset))
        found.sort()
        yield dropped, [Hyperplane(n, Fraction(o, scale)) for n, o in found]


def _tilt(ps: ColoredPointSet, pivot: Hyperplane) -> BisectionCertificate:
    counts = side_counts(ps, pivot)
    if is_exact_bisection(counts, ps.sizes):
        return BisectionCertificate(pivot, counts, pivot)
    anchors, shifts = [], []
    for cls, (pos, on, neg), n in zip(ps.classes, counts, ps.sizes):
        on_pts = [p for p in cls if pivot.side(p) is Side.ON]
        anchors.extend(on_pts)
        if n % 2 == 0:
            # Push the contact point towards the lighter open side.
            shifts.extend([1 if pos < neg else -1] * len(on_pts))
        else:
            shifts.extend([0] * len(on_pts))
    if len(anchors) != ps.dimension:
        raise SearchExhausted(f"pivot meets {len(anchors)} points, expected {ps.dimension}")
    eps = Fraction(1)
    for _ in range(_MAX_TILT_HALVINGS):
        moved = [
            tuple(c + s * eps * nc for c, nc in zip(a, pivot.normal))
            for a, s in zip(anchors, shifts)
        ]
        try:
            cut = hyperplane_through(moved)
        except DegenerateSpan:
            eps /= 2
            continue
        cut_counts = side_counts(ps, cut)
        if is_exact_bisection(cut_counts, ps.sizes):
            return BisectionCertificate(cut, cut_counts, pivot)
        eps /= 2
    raise SearchExhausted("could not tilt the pivot into an exact bisection")


def find_cut(ps: ColoredPointSet, *, check_general_position: bool = True) -> BisectionCertificate:
    """A hyperplane leaving exactly floor(|A_i|/2) points of every class on each side.

    Odd classes keep one point on the cut, even classes none. The pivot is
    the lexicographically smallest valid candidate for the first deletion
    choice that admits one.
    """
    _check_instance(ps, check_general_position)
    for _, pivots in _pivot_candidates(ps):
        if pivots:
            return _tilt(ps, pivots[0])
    raise SearchExhausted("no bisecting hyperplane among the candidates")


def verify_cut(ps: ColoredPointSet, cert: BisectionCertificate) -> bool:
    if cert.cut.dimension != ps.dimension:
        raise DimensionMismatch("certificate and instance dimensions differ")
    counts = side_counts(ps, cert.cut)
    if tuple(tuple(c) for c in cert.per_class_counts) != counts:
        return False
    return satisfies_contract(counts, ps.sizes, ps.in_general_position)


def enumerate_all_cuts(ps: ColoredPointSet) -> list[BisectionCertificate]:
    """Every hyperplane spanned by d union points that floor-bisects all classes.

    Brute force over all d-subsets of the union, independent of the
    reduction used by :func:`find_cut`.
    """
    _check_instance(ps, True)
    pts = ps.union
    if len(pts) > MAX_ORACLE_POINTS:
        raise ParameterRange(f"oracle limited to {MAX_ORACLE_POINTS} points")
    seen = set()
    out = []
    for subset in combinations(pts, ps.dimension):
        if not is_affinely_independent(subset):
            continue
        h = hyperplane_through(subset)
        if h in seen:
            continue
        seen.add(h)
        counts = side_counts(ps, h)
        if satisfies_contract(counts, ps.sizes, True):
            out.append(BisectionCertificate(h, counts))
    out.sort(key=lambda c: c.cut.sort_key())
    return out
