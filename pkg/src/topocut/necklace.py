"""Two-thief necklace splitting.

Stones are indexed 1..n; a cut at position k separates stone k from stone
k+1. Intervals between consecutive cuts go alternately to thief 1 and
thief 2, starting with thief 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import MalformedSplit, OddTypeCount, ParameterRange, SearchExhausted
from .geometry import ColoredPointSet, Side, moment_curve_point
from .hamsandwich import find_cut

MAX_MOMENT_DIMENSION = 4
MAX_MOMENT_STONES = 40
MAX_BRUTE_STONES = 30


@dataclass(frozen=True)
class Necklace:
    stones: tuple
    d: int

    def __post_init__(self):
        stones = tuple(int(s) for s in self.stones)
        if self.d < 1:
            raise ParameterRange("a necklace needs at least one stone type")
        if any(s < 1 or s > self.d for s in stones):
            raise ParameterRange(f"stone types must lie in 1..{self.d}")
        missing = set(range(1, self.d + 1)) - set(stones)
        if missing:
            raise ParameterRange(f"types {sorted(missing)} never occur")
        object.__setattr__(self, "stones", stones)

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> Necklace:
        stones = tuple(int(s) for s in text.replace(" ", "").split(",") if s)
        return cls(stones, d if d is not None else max(stones, default=0))

    @property
    def n(self) -> int:
        return len(self.stones)

    @property
    def counts(self) -> tuple:
        return tuple(self.stones.count(i) for i in range(1, self.d + 1))


@dataclass(frozen=True)
class NecklaceSplit:
    cuts: tuple
    assignment: tuple  # thief (1 or 2) for each of the len(cuts)+1 intervals


def alternating(k: int) -> tuple:
    return tuple(1 + (j % 2) for j in range(k))


def _split_of(cuts) -> NecklaceSplit:
    cuts = tuple(cuts)
    return NecklaceSplit(cuts, alternating(len(cuts) + 1))


def _require_even(nk: Necklace):
    odd = [i + 1 for i, t in enumerate(nk.counts) if t % 2]
    if odd:
        raise OddTypeCount(f"types {odd} occur an odd number of times")


def thief_shares(nk: Necklace, sp: NecklaceSplit) -> dict:
    """Stones of each type received by each thief."""
    bounds = (0,) + tuple(sp.cuts) + (nk.n,)
    shares = {1: [0] * nk.d, 2: [0] * nk.d}
    for j, thief in enumerate(sp.assignment):
        for s in nk.stones[bounds[j]:bounds[j + 1]]:
            shares[thief][s - 1] += 1
    return shares


def verify_split(nk: Necklace, sp: NecklaceSplit) -> bool:
    cuts = tuple(sp.cuts)
    if any(not isinstance(c, int) or c < 1 or c > nk.n - 1 for c in cuts):
        raise MalformedSplit(f"cut positions must lie in 1..{nk.n - 1}")
    if any(a >= b for a, b in zip(cuts, cuts[1:])):
        raise MalformedSplit("cut positions must be strictly increasing")
    if len(cuts) > nk.d:
        return False
    if tuple(sp.assignment) not in (alternating(len(cuts) + 1), tuple(3 - t for t in alternating(len(cuts) + 1))):
        return False
    shares = thief_shares(nk, sp)
    return all(2 * a == t and 2 * b == t for a, b, t in zip(shares[1], shares[2], nk.counts))


def _prefix_counts(nk: Necklace):
    pref = [[0] * nk.d]
    for s in nk.stones:
        row = list(pref[-1])
        row[s - 1] += 1
        pref.append(row)
    return pref


def _fair(pref, cuts, n, half) -> bool:
    bounds = (0,) + cuts + (n,)
    first = [0] * len(half)
    for j in range(0, len(bounds) - 1, 2):
        lo, hi = pref[bounds[j]], pref[bounds[j + 1]]
        for i in range(len(half)):
            first[i] += hi[i] - lo[i]
    return first == half


def split_brute_force(nk: Necklace, max_cuts: int) -> NecklaceSplit | None:
    """Fair split with at most ``max_cuts`` cuts, fewest cuts first then lexicographic."""
    if nk.n > MAX_BRUTE_STONES:
        raise ParameterRange(f"brute force limited to {MAX_BRUTE_STONES} stones")
    if max_cuts < 0 or max_cuts > nk.d:
        raise ParameterRange(f"max_cuts must lie in 0..{nk.d}")
    if any(t % 2 for t in nk.counts):
        return None
    half = [t // 2 for t in nk.counts]
    pref = _prefix_counts(nk)
    for c in range(max_cuts + 1):
        for cuts in combinations(range(1, nk.n), c):
            if _fair(pref, cuts, nk.n, half):
                return _split_of(cuts)
    return None


def min_cuts(nk: Necklace) -> int:
    _require_even(nk)
    for c in range(nk.d + 1):
        if split_brute_force(nk, c) is not None:
            return c
    raise SearchExhausted(f"no fair split with {nk.d} cuts")


def embed(nk: Necklace) -> ColoredPointSet:
    """Stone k sits at moment_curve_point(k, d); class i holds the type-i stones."""
    classes = [[] for _ in range(nk.d)]
    for k, s in enumerate(nk.stones, start=1):
        classes[s - 1].append(moment_curve_point(k, nk.d))
    return ColoredPointSet(nk.d, classes)


def split_via_moment_curve(nk: Necklace) -> NecklaceSplit:
    """Split by a ham sandwich cut of the stones placed on the moment curve.

    With every count even the cut avoids all stones, and a hyperplane meets
    the curve in at most d points, so walking the stones in order the side
    changes at most d times; each change is a necklace cut.
    """
    _require_even(nk)
    if nk.d > MAX_MOMENT_DIMENSION or nk.n > MAX_MOMENT_STONES:
        raise ParameterRange(
            f"moment-curve solver limited to d <= {MAX_MOMENT_DIMENSION}, n <= {MAX_MOMENT_STONES}"
        )
    # Distinct moment-curve points are always in general position.
    cert = find_cut(embed(nk), check_general_position=False)
    sides = [cert.cut.side(moment_curve_point(k, nk.d)) for k in range(1, nk.n + 1)]
    if Side.ON in sides:
        raise SearchExhausted("cut passes through a stone despite even counts")
    cuts = tuple(k for k in range(1, nk.n) if sides[k - 1] != sides[k])
    sp = _split_of(cuts)
    if not verify_split(nk, sp):
        raise SearchExhausted(f"moment-curve cut {cuts} is not a fair split")
    return sp


def stone_measure(nk: Necklace, kind: int, a: Fraction, b: Fraction) -> Fraction:
    """Normalized step measure of type ``kind`` on [a, b] within [0, 1].

    Stone k occupies [(k-1)/n, k/n); the measure is (n / t_kind) times the
    length of [a, b] covered by stones of that type, so the whole interval
    has measure 1.
    """
    n = nk.n
    a, b = Fraction(a), Fraction(b)
    covered = Fraction(0)
    for k, s in enumerate(nk.stones, start=1):
        if s != kind:
            continue
        lo, hi = max(a, Fraction(k - 1, n)), min(b, Fraction(k, n))
        if hi > lo:
            covered += hi - lo
    return covered * n / nk.counts[kind - 1]


def signed_balance(nk: Necklace, cut_points, signs=None) -> tuple:
    """sum_j signs[j] * mu_i(I_j) for each type i, intervals cut at ``cut_points``.

    Defaults to alternating signs +1, -1, +1, ...; a split is fair exactly
    when every entry is zero.
    """
    pts = [Fraction(0)] + sorted(Fraction(c) for c in cut_points) + [Fraction(1)]
    if signs is None:
        signs = [(-1) ** j for j in range(len(pts) - 1)]
    return tuple(
        sum(
            (s * stone_measure(nk, i, pts[j], pts[j + 1]) for j, s in enumerate(signs)),
            Fraction(0),
        )
        for i in range(1, nk.d + 1)
    )


def hobby_rice_signs(nk: Necklace, cut_points) -> list:
    """All sign vectors that zero the signed balance for the given cut points."""
    k = len(cut_points) + 1
    return [
        list(signs)
        for signs in product((1, -1), repeat=k)
        if not any(signed_balance(nk, cut_points, signs))
    ]
