"""Antipodally symmetric triangulations of B^1 and B^2 and Tucker labelings."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from .errors import InvalidLabeling, ParameterRange
from .geometry import as_point, is_affinely_independent

MAX_LABELINGS = 10**6


@dataclass(frozen=True)
class SymmetricTriangulation:
    """A simplicial complex in B^n given by all of its simplices (faces included).

    ``simplices`` are sorted vertex-index tuples; ``boundary_antipode`` maps
    each boundary vertex index to the index of its negation.
    """

    n: int
    vertices: tuple
    simplices: tuple
    boundary_antipode: dict

    @property
    def facets(self) -> list:
        return [s for s in self.simplices if len(s) == self.n + 1]

    @property
    def edges(self) -> list:
        return sorted(s for s in self.simplices if len(s) == 2)

    @property
    def boundary_vertices(self) -> list:
        return sorted(self.boundary_antipode)


@dataclass(frozen=True)
class TuckerLabeling:
    labels: tuple  # labels[v] in {+-1, ..., +-n}


def _closure(facets):
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    return tuple(sorted(faces, key=lambda s: (len(s), s)))


def _circle_point(t: Fraction):
    # Rational point on the unit circle at parameter t = tan(angle / 2).
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def build_disk_triangulation(n: int, resolution: int) -> SymmetricTriangulation:
    """Fan triangulations of B^n with exactly antipodal boundary vertices.

    n=1: the path -1 = x_0 < ... < x_{2r} = 1 with step 1/r.
    n=2: 2r boundary points on the unit circle (rational coordinates) and a
    center; r=2 is a plain fan, r >= 3 adds an inner ring of r vertices
    at half radius between the center fan and the boundary.
    """
    r = resolution
    if n == 1:
        if r < 1:
            raise ParameterRange("resolution must be at least 1")
        verts = tuple((Fraction(-1) + Fraction(i, r),) for i in range(2 * r + 1))
        facets = [(i, i + 1) for i in range(2 * r)]
        anti = {0: 2 * r, 2 * r: 0}
        return SymmetricTriangulation(1, verts, _closure(facets), anti)
    if n != 2:
        raise ParameterRange("only n in {1, 2} is supported")
    if r < 2:
        raise ParameterRange("a disk boundary needs at least 4 vertices (resolution >= 2)")
    upper = [_circle_point(Fraction(j, r - j)) for j in range(r)]
    outer = upper + [(-x, -y) for x, y in upper]
    anti = {j: (j + r) % (2 * r) for j in range(2 * r)}
    if r == 2:
        center = 2 * r
        verts = tuple(outer) + ((Fraction(0), Fraction(0)),)
        facets = [(center, j, (j + 1) % (2 * r)) for j in range(2 * r)]
        return SymmetricTriangulation(2, verts, _closure(facets), anti)
    inner = [(outer[2 * i][0] / 2, outer[2 * i][1] / 2) for i in range(r)]
    verts = tuple(outer) + tuple(inner) + ((Fraction(0), Fraction(0)),)
    o = lambda j: j % (2 * r)
    v = lambda i: 2 * r + (i % r)
    center = 3 * r
    facets = []
    for i in range(r):
        facets += [
            (v(i), o(2 * i), o(2 * i + 1)),
            (v(i), o(2 * i + 1), v(i + 1)),
            (v(i + 1), o(2 * i + 1), o(2 * i + 2)),
            (center, v(i), v(i + 1)),
        ]
    return SymmetricTriangulation(2, verts, _closure(facets), anti)


# Exact planar incidence tests; 1-dimensional inputs are embedded as (x, 0).


def _planar(p):
    return p if len(p) == 2 else (p[0], Fraction(0))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _in_simplex(p, simplex) -> bool:
    if len(simplex) == 1:
        return p == simplex[0]
    if len(simplex) == 2:
        a, b = simplex
        return _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(
            a[1], b[1]
        ) <= p[1] <= max(a[1], b[1])
    a, b, c = simplex
    s = [_cross(a, b, p), _cross(b, c, p), _cross(c, a, p)]
    return all(x >= 0 for x in s) or all(x <= 0 for x in s)


def _segment_meet(a, b, c, d):
    """Intersection of closed segments ab and cd: None, ("point", x) or ("segment",)."""
    d1, d2 = _cross(a, b, c), _cross(a, b, d)
    if d1 == 0 and d2 == 0:
        ab = (b[0] - a[0], b[1] - a[1])
        norm = ab[0] ** 2 + ab[1] ** 2
        t = lambda x: ((x[0] - a[0]) * ab[0] + (x[1] - a[1]) * ab[1]) / norm
        lo = max(Fraction(0), min(t(c), t(d)))
        hi = min(Fraction(1), max(t(c), t(d)))
        if lo > hi:
            return None
        if lo == hi:
            return ("point", (a[0] + lo * ab[0], a[1] + lo * ab[1]))
        return ("segment",)
    denom = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    if denom == 0:
        return None
    s = ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / denom
    u = ((c[0] - a[0]) * (b[1] - a[1]) - (c[1] - a[1]) * (b[0] - a[0])) / denom
    if 0 <= s <= 1 and 0 <= u <= 1:
        return ("point", (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])))
    return None


def _meet_is_common_face(coords, s1, s2) -> bool:
    shared = set(s1) & set(s2)
    for own, other in ((s1, s2), (s2, s1)):
        simplex = [coords[i] for i in other]
        if any(_in_simplex(coords[v], simplex) for v in own if v not in shared):
            return False
    allowed = {coords[v] for v in shared}
    for e in combinations(s1, 2):
        for f in combinations(s2, 2):
            if set(e) == set(f):
                continue
            meet = _segment_meet(coords[e[0]], coords[e[1]], coords[f[0]], coords[f[1]])
            if meet is None:
                continue
            if meet[0] == "segment" or meet[1] not in allowed:
                return False
    return True


def validate_complex(t: SymmetricTriangulation) -> bool:
    """Closed under faces, pairwise intersections are common faces, antipode exact."""
    if t.n not in (1, 2):
        return False
    nv = len(t.vertices)
    if any(len(p) != t.n for p in t.vertices):
        return False
    simplices = set()
    for s in t.simplices:
        if len(s) != len(set(s)) or not s or len(s) > t.n + 1:
            return False
        if any(not 0 <= v < nv for v in s):
            return False
        if not is_affinely_independent([t.vertices[v] for v in s]):
            return False
        simplices.add(tuple(sorted(s)))
    for s in simplices:
        if any(f not in simplices for k in range(1, len(s)) for f in combinations(s, k)):
            return False
    coords = [tuple(_planar(as_point(p))) for p in t.vertices]
    for s1, s2 in combinations(sorted(simplices), 2):
        if not _meet_is_common_face(coords, s1, s2):
            return False
    # Ridges in two facets are interior, in one facet boundary, in more an error.
    ridge_count = {}
    for f in (s for s in simplices if len(s) == t.n + 1):
        for ridge in combinations(f, t.n):
            ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
    if any(c > 2 for c in ridge_count.values()):
        return False
    boundary = {v for ridge, c in ridge_count.items() if c == 1 for v in ridge}
    anti = t.boundary_antipode
    if set(anti) != boundary:
        return False
    for v, w in anti.items():
        if v == w or anti.get(w) != v:
            return False
        if tuple(-c for c in as_point(t.vertices[v])) != as_point(t.vertices[w]):
            return False
    return True


def check_labeling(t: SymmetricTriangulation, lab: TuckerLabeling):
    if len(lab.labels) != len(t.vertices):
        raise InvalidLabeling(f"{len(lab.labels)} labels for {len(t.vertices)} vertices")
    allowed = {s * j for j in range(1, t.n + 1) for s in (1, -1)}
    bad = [v for v, x in enumerate(lab.labels) if x not in allowed]
    if bad:
        raise InvalidLabeling(f"vertex {bad[0]} has label {lab.labels[bad[0]]}, not in +-1..+-{t.n}")
    for v, w in t.boundary_antipode.items():
        if lab.labels[w] != -lab.labels[v]:
            raise InvalidLabeling(f"boundary vertices {v} and {w} are not labeled antipodally")


def find_complementary_edge(t: SymmetricTriangulation, lab: TuckerLabeling) -> tuple | None:
    """Lexicographically first edge whose endpoint labels are opposite numbers."""
    check_labeling(t, lab)
    labels = lab.labels
    for u, v in t.edges:
        if labels[u] == -labels[v]:
            return (u, v)
    return None


def _free_vertices(t: SymmetricTriangulation):
    anti = t.boundary_antipode
    return [v for v in range(len(t.vertices)) if v not in anti or v < anti[v]]


def labeling_count(t: SymmetricTriangulation) -> int:
    return (2 * t.n) ** len(_free_vertices(t))


def _label_values(n):
    return [s * j for j in range(1, n + 1) for s in (1, -1)]


def _labelings(t, free, values, prefix=()):
    anti = t.boundary_antipode
    nv = len(t.vertices)
    for choice in product(values, repeat=len(free) - len(prefix)):
        labels = [0] * nv
        for v, x in zip(free, prefix + choice):
            labels[v] = x
            if v in anti:
                labels[anti[v]] = -x
        yield TuckerLabeling(tuple(labels))


def enumerate_labelings(t: SymmetricTriangulation):
    """Every labeling that is antipodal on the boundary, each exactly once."""
    if labeling_count(t) > MAX_LABELINGS:
        raise ParameterRange(f"more than {MAX_LABELINGS} labelings")
    yield from _labelings(t, _free_vertices(t), _label_values(t.n))


class SweepReport(NamedTuple):
    labelings: int
    failures: list  # labelings without a complementary edge


def _sweep_chunk(args):
    t, first_label = args
    free = _free_vertices(t)
    edges = t.edges
    count, failures = 0, []
    for lab in _labelings(t, free, _label_values(t.n), (first_label,)):
        count += 1
        labels = lab.labels
        if not any(labels[u] == -labels[v] for u, v in edges):
            failures.append(lab)
    return count, failures


def tucker_sweep(t: SymmetricTriangulation, threads: int = 1) -> SweepReport:
    """Check every boundary-antipodal labeling for a complementary edge.

    Work is split by the label of the first free vertex; chunks are merged
    in label order, so the report is the same for any thread count.
    """
    if labeling_count(t) > MAX_LABELINGS:
        raise ParameterRange(f"more than {MAX_LABELINGS} labelings")
    chunks = [(t, x) for x in _label_values(t.n)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    else:
        results = [_sweep_chunk(c) for c in chunks]
    return SweepReport(sum(c for c, _ in results), [f for _, fs in results for f in fs])
