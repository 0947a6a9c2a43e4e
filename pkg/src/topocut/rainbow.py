"""Rainbow partitions of d equal-sized color classes by recursive ham sandwich cuts."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    ClassCountMismatch,
    DimensionMismatch,
    NotGeneralPosition,
    ParameterRange,
    RecursionFailed,
    UnequalClassSizes,
)
from .geometry import ColoredPointSet, Hyperplane, Side, _cofactor_normal, as_point, integerize
from .hamsandwich import find_cut

MAX_POINTS_PER_CLASS = 16


@dataclass(frozen=True)
class CutNode:
    cut: Hyperplane
    on_cut: tuple | None  # rainbow tuple lying on the cut, odd steps only
    positive: CutNode | None
    negative: CutNode | None


@dataclass(frozen=True)
class RainbowPartition:
    tuples: tuple  # tuples[j][i] is the point of color i+1 in the j-th tuple
    cut_tree: CutNode | None


def cut_tree_depth(node: CutNode | None) -> int:
    if node is None:
        return 0
    return 1 + max(cut_tree_depth(node.positive), cut_tree_depth(node.negative))


def _primitive(v):
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        return None
    if next(c for c in v if c != 0) < 0:
        g = -g
    return tuple(c // g for c in v)


def hulls_disjoint(t1, t2) -> bool:
    """Exact test for conv(t1) and conv(t2) being disjoint.

    Two disjoint polytopes are strictly separated by a hyperplane whose normal
    is orthogonal to d-1 independent vectors drawn from the pairwise
    differences of their vertices (facet normals of conv(t1) - conv(t2));
    coordinate axes cover the lower-dimensional cases. Every such normal is
    tried, so a False answer means the hulls really meet.
    """
    a = [as_point(p) for p in t1]
    b = [as_point(p) for p in t2]
    if not a or not b:
        raise DimensionMismatch("hulls need at least one point each")
    d = len(a[0])
    if any(len(p) != d for p in a + b):
        raise DimensionMismatch("points of both hulls must share a dimension")
    ints, _ = integerize(a + b)
    qa, qb = ints[:len(a)], ints[len(a):]
    if d == 1:
        return max(qa) < min(qb) or max(qb) < min(qa)
    pool = {_primitive([x - y for x, y in zip(p, q)]) for p, q in combinations(ints, 2)}
    pool.discard(None)
    pool.update(tuple(int(i == j) for j in range(d)) for i in range(d))
    for rows in combinations(sorted(pool), d - 1):
        normal = _cofactor_normal([list(r) for r in rows], d)
        if not any(normal):
            continue
        va = [sum(n * c for n, c in zip(normal, p)) for p in qa]
        vb = [sum(n * c for n, c in zip(normal, p)) for p in qb]
        if max(va) < min(vb) or max(vb) < min(va):
            return True
    return False


def _split(classes, d):
    n = len(classes[0])
    if n == 0:
        return [], None
    if n == 1:
        return [tuple(cls[0] for cls in classes)], None
    # Subsets of a general-position set stay in general position.
    cert = find_cut(ColoredPointSet(d, classes), check_general_position=False)
    h = cert.cut
    pos = [[p for p in cls if h.side(p) is Side.POSITIVE_OPEN] for cls in classes]
    neg = [[p for p in cls if h.side(p) is Side.NEGATIVE_OPEN] for cls in classes]
    on = [[p for p in cls if h.side(p) is Side.ON] for cls in classes]
    if len({len(c) for c in pos}) != 1 or len({len(c) for c in neg}) != 1:
        raise RecursionFailed("cut left unequal class counts on one side")
    on_tuple = None
    if n % 2:
        if any(len(c) != 1 for c in on):
            raise RecursionFailed("odd step did not put exactly one point per color on the cut")
        on_tuple = tuple(c[0] for c in on)
    left, left_tree = _split(pos, d)
    right, right_tree = _split(neg, d)
    tuples = left + ([on_tuple] if on_tuple is not None else []) + right
    return tuples, CutNode(h, on_tuple, left_tree, right_tree)


def rainbow_partition(ps: ColoredPointSet) -> RainbowPartition:
    """Partition d classes of n points into rainbow d-tuples with disjoint hulls."""
    d = ps.dimension
    if d not in (2, 3):
        raise ParameterRange("rainbow partitions are solved for d in {2, 3}")
    if len(ps.classes) != d:
        raise ClassCountMismatch(f"{len(ps.classes)} classes in R^{d}; need exactly {d}")
    if len(set(ps.sizes)) != 1:
        raise UnequalClassSizes(f"class sizes {ps.sizes} differ")
    if ps.sizes[0] > MAX_POINTS_PER_CLASS:
        raise ParameterRange(f"at most {MAX_POINTS_PER_CLASS} points per class")
    if not ps.in_general_position:
        raise NotGeneralPosition("input is not in general position")
    tuples, tree = _split([list(c) for c in ps.classes], d)
    rp = RainbowPartition(tuple(tuples), tree)
    if not verify_rainbow(ps, rp):
        raise RecursionFailed("produced partition failed verification")
    return rp


def verify_rainbow(ps: ColoredPointSet, rp: RainbowPartition) -> bool:
    d = len(ps.classes)
    for t in rp.tuples:
        if any(len(p) != ps.dimension for p in t):
            raise DimensionMismatch("tuple point has the wrong dimension")
    color_of = {p: i for i, cls in enumerate(ps.classes) for p in cls}
    used = Counter()
    for t in rp.tuples:
        if len(t) != d:
            return False
        for i, p in enumerate(t):
            if color_of.get(tuple(p)) != i:
                return False
            used[tuple(p)] += 1
    if used != Counter(ps.union):
        return False
    return all(hulls_disjoint(s, t) for s, t in combinations(rp.tuples, 2))
