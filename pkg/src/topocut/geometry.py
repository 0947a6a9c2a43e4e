"""Exact rational geometry: points, hyperplanes and the predicates built on them.

Every predicate here works on :class:`fractions.Fraction` coordinates and
never touches floating point. Hot loops (general position checks, candidate
hyperplane scans) first rescale a point set to integer coordinates by the
lcm of its denominators; positive rescaling preserves every sign we compute.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import DegenerateSpan, DimensionMismatch, PerturbationFailed

Rational = Fraction
Point = tuple  # tuple of Fraction

PERTURB_RETRIES = 64
_PERTURB_GRID = 2**20


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would smuggle binary rounding into exact code.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def point(*coords) -> Point:
    return tuple(as_rational(c) for c in coords)


def as_point(coords) -> Point:
    return tuple(as_rational(c) for c in coords)


def _lcm_of_denominators(points) -> int:
    scale = 1
    for p in points:
        for c in p:
            scale = math.lcm(scale, c.denominator)
    return scale


def integerize(points) -> tuple[list[tuple[int, ...]], int]:
    """Return ``(int_points, scale)`` with ``int_points[i] == scale * points[i]``."""
    pts = [as_point(p) for p in points]
    scale = _lcm_of_denominators(pts)
    return [tuple(int(c * scale) for c in p) for p in pts], scale


def det(rows) -> int | Fraction:
    """Exact determinant of a square matrix of ints or Fractions."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("determinant needs a square matrix")
    if all(isinstance(c, int) for r in rows for c in r):
        return _det_int(rows)
    ints, scale = integerize(rows)
    return Fraction(_det_int(ints), scale**n)


def _det_int(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    # Bareiss fraction-free elimination; every division below is exact.
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _check_dimension(points, d=None) -> int:
    if not points:
        raise DimensionMismatch("empty point list")
    if d is None:
        d = len(points[0])
    for p in points:
        if len(p) != d:
            raise DimensionMismatch(f"expected {d} coordinates, got {len(p)}")
    return d


def _orient_int(pts) -> int:
    p0 = pts[0]
    return _sign(_det_int([[a - b for a, b in zip(p, p0)] for p in pts[1:]]))


def orientation(points: Sequence) -> int:
    """Sign of det[p_1 - p_0, ..., p_d - p_0] for d+1 points in R^d."""
    pts = [as_point(p) for p in points]
    d = _check_dimension(pts)
    if len(pts) != d + 1:
        raise DimensionMismatch(f"orientation in R^{d} needs {d + 1} points, got {len(pts)}")
    ints, _ = integerize(pts)
    return _orient_int(ints)


def rank(vectors) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    rows = [list(as_point(v)) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def is_affinely_independent(points: Sequence) -> bool:
    """True iff the difference vectors p_i - p_0 are linearly independent."""
    pts = [as_point(p) for p in points]
    _check_dimension(pts)
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    return rank(diffs) == len(diffs)


def moment_curve_point(t, d: int) -> Point:
    """The point (t, t^2, ..., t^d)."""
    if d < 1:
        raise DimensionMismatch("moment curve needs d >= 1")
    t = as_rational(t)
    return tuple(t**i for i in range(1, d + 1))


class Side(enum.Enum):
    POSITIVE_OPEN = "positive_open"
    ON = "on"
    NEGATIVE_OPEN = "negative_open"


def _canonical_normal(normal, offset):
    # Scale to a primitive integer vector whose first nonzero entry is positive.
    normal = [as_rational(c) for c in normal]
    offset = as_rational(offset)
    scale = _lcm_of_denominators([normal])
    ints = [int(c * scale) for c in normal]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        raise DegenerateSpan("zero normal vector")
    lead = next(c for c in ints if c != 0)
    if lead < 0:
        g = -g
    factor = Fraction(scale, g)
    return tuple(Fraction(c // g) for c in ints), offset * factor


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : <normal, x> = offset}; its closed positive half-space is <= offset.

    Construction canonicalizes: the normal becomes a primitive integer vector
    with positive leading entry, so equal hyperplanes compare equal. The
    orientation may therefore flip relative to the vector passed in.
    """

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        normal, offset = _canonical_normal(self.normal, self.offset)
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", offset)

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def value(self, p) -> Fraction:
        if len(p) != len(self.normal):
            raise DimensionMismatch("point and hyperplane dimensions differ")
        return sum((a * as_rational(b) for a, b in zip(self.normal, p)), Fraction(0)) - self.offset

    def side(self, p) -> Side:
        v = self.value(p)
        if v < 0:
            return Side.POSITIVE_OPEN
        if v > 0:
            return Side.NEGATIVE_OPEN
        return Side.ON

    def sort_key(self):
        return (self.normal, self.offset)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def _cofactor_normal(rows, d):
    # Generalized cross product of d-1 vectors in R^d.
    return [(-1) ** j * _det_int([r[:j] + r[j + 1:] for r in rows]) for j in range(d)]


def hyperplane_through(points: Sequence) -> Hyperplane:
    """The unique hyperplane through d affinely independent points of R^d."""
    pts = [as_point(p) for p in points]
    d = _check_dimension(pts)
    if len(pts) != d:
        raise DimensionMismatch(f"need exactly {d} points in R^{d}, got {len(pts)}")
    ints, _ = integerize(pts)
    q0 = ints[0]
    rows = [[a - b for a, b in zip(q, q0)] for q in ints[1:]]
    normal = _cofactor_normal(rows, d)
    if not any(normal):
        raise DegenerateSpan("points are affinely dependent")
    offset = sum((a * c for a, c in zip(normal, pts[0])), Fraction(0))
    return Hyperplane(tuple(normal), offset)


@dataclass(frozen=True)
class ColoredPointSet:
    """Color classes of points in R^dimension; class i has color i+1."""

    dimension: int
    classes: tuple

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be positive")
        classes = tuple(tuple(as_point(p) for p in cls) for cls in self.classes)
        seen = set()
        for cls in classes:
            for p in cls:
                if len(p) != self.dimension:
                    raise DimensionMismatch(
                        f"point {p} does not have dimension {self.dimension}"
                    )
                if p in seen:
                    raise ValueError(f"duplicate point {p}")
                seen.add(p)
        object.__setattr__(self, "classes", classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def union(self) -> list:
        return [p for cls in self.classes for p in cls]

    @cached_property
    def in_general_position(self) -> bool:
        return _general_position(self.union, self.dimension)


def _general_position(pts, d) -> bool:
    if len(set(pts)) != len(pts):
        return False
    ints, _ = integerize(pts)
    if d == 1:
        return True
    for combo in combinations(ints, d + 1):
        if _orient_int(combo) == 0:
            return False
    return True


def is_general_position(ps: ColoredPointSet) -> bool:
    """Classes pairwise disjoint and no d+1 points of the union on a hyperplane."""
    return ps.in_general_position


class Perturbation(NamedTuple):
    points: ColoredPointSet
    eta: Fraction  # max-norm bound on every displacement; 0 when nothing moved


def _power_of_two_floor(x: Fraction) -> Fraction:
    e = x.numerator.bit_length() - x.denominator.bit_length()
    p = Fraction(2) ** e
    while p > x:
        p /= 2
    while p * 2 <= x:
        p *= 2
    return p


def perturb(ps: ColoredPointSet, seed: int) -> Perturbation:
    """Move points by at most eta (max-norm) until the set is in general position.

    eta starts at the largest power of two not exceeding 1/1024 of the minimum
    pairwise max-norm distance and is halved after each failed attempt.
    """
    if ps.in_general_position:
        return Perturbation(ps, Fraction(0))
    pts = ps.union
    dmin = min(max(abs(a - b) for a, b in zip(p, q)) for p, q in combinations(pts, 2))
    eta = _power_of_two_floor(dmin / 1024)
    rng = random.Random(seed)
    for _ in range(PERTURB_RETRIES):
        moved = tuple(
            tuple(
                tuple(c + eta * Fraction(rng.randint(-_PERTURB_GRID, _PERTURB_GRID), _PERTURB_GRID)
                      for c in p)
                for p in cls
            )
            for cls in ps.classes
        )
        try:
            candidate = ColoredPointSet(ps.dimension, moved)
        except ValueError:
            candidate = None
        if candidate is not None and candidate.in_general_position:
            return Perturbation(candidate, eta)
        eta /= 2
    raise PerturbationFailed(f"no general-position perturbation after {PERTURB_RETRIES} attempts")
