"""Hypergraph colorability, colorability defect, and Dol'nikov's inequality.

Also hosts the finite transversal search for intersecting families of
convex hulls in R^d (d <= 2), and the exhaustive hypergraph generators used
to check the inequality at small ground-set sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .errors import DimensionMismatch, NotIntersectingFamily, ParameterRange
from .geometry import Hyperplane, as_point, integerize
from .kneser import Graph, VertexColoring, disjointness_graph, optimal_coloring
from .rainbow import _primitive, hulls_disjoint

MAX_COLORABLE_GROUND = 16
MAX_DEFECT_GROUND = 14
MAX_KNESER_EDGES = 200
MAX_TRANSVERSAL_DIM = 2
MAX_MEMBER_POINTS = 4
MAX_TRANSVERSAL_POINTS = 20


@dataclass(frozen=True)
class Hypergraph:
    """Ground set {1..ground}; hyperedges are sorted, deduplicated, nonempty tuples."""

    ground: int
    edges: tuple = ()

    def __post_init__(self):
        if self.ground < 0:
            raise ParameterRange("ground set size must be nonnegative")
        canon = set()
        for e in self.edges:
            e = tuple(sorted(set(int(x) for x in e)))
            if not e:
                raise ParameterRange("hyperedges must be nonempty")
            if e[0] < 1 or e[-1] > self.ground:
                raise ParameterRange(f"hyperedge {e} leaves the ground set 1..{self.ground}")
            canon.add(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))


@dataclass(frozen=True)
class DefectCertificate:
    m: int
    defect: int
    witness_Y: tuple
    witness_coloring: dict = field(default_factory=dict)  # element of X \ Y -> 1..m


@dataclass(frozen=True)
class DolnikovReport:
    chi: int
    cd2: int
    holds: bool
    coloring: VertexColoring
    defect: DefectCertificate


def _search_coloring(elements, edges, m):
    """Backtracking m-coloring of ``elements`` with no monochromatic edge."""
    if m < 1:
        raise ParameterRange("need at least one color")
    if any(len(e) == 1 for e in edges):
        return None
    pos = {x: i for i, x in enumerate(elements)}
    # Each edge is checked once its last element (in search order) is colored.
    closing = [[] for _ in elements]
    for e in edges:
        closing[max(pos[x] for x in e)].append([pos[x] for x in e])
    color = [0] * len(elements)

    def rec(i, used):
        if i == len(elements):
            return True
        for c in range(1, min(used + 1, m) + 1):
            color[i] = c
            if all(any(color[j] != c for j in e) for e in closing[i]):
                if rec(i + 1, max(used, c)):
                    return True
        color[i] = 0
        return False

    if rec(0, 0):
        return dict(zip(elements, color))
    return None


def is_m_colorable(h: Hypergraph, m: int) -> dict | None:
    """A coloring X -> 1..m leaving no hyperedge monochromatic, or None."""
    if h.ground > MAX_COLORABLE_GROUND:
        raise ParameterRange(f"ground set limited to {MAX_COLORABLE_GROUND} elements")
    return _search_coloring(list(range(1, h.ground + 1)), h.edges, m)


def colorability_defect(h: Hypergraph, m: int) -> DefectCertificate:
    """Smallest Y whose removal (with every hyperedge meeting it) leaves an m-colorable rest."""
    if h.ground > MAX_DEFECT_GROUND:
        raise ParameterRange(f"ground set limited to {MAX_DEFECT_GROUND} elements")
    ground = range(1, h.ground + 1)
    for size in range(h.ground + 1):
        for Y in combinations(ground, size):
            ys = set(Y)
            rest = [x for x in ground if x not in ys]
            kept = [e for e in h.edges if ys.isdisjoint(e)]
            found = _search_coloring(rest, kept, m)
            if found is not None:
                return DefectCertificate(m, size, Y, found)
    raise AssertionError("removing the whole ground set always succeeds")


def verify_defect(h: Hypergraph, cert: DefectCertificate) -> bool:
    """Checks the witness (not minimality): |Y| = defect and X \\ Y is properly colored."""
    ys = set(cert.witness_Y)
    if len(ys) != cert.defect or not ys <= set(range(1, h.ground + 1)):
        return False
    rest = set(range(1, h.ground + 1)) - ys
    col = cert.witness_coloring
    if set(col) != rest or any(not 1 <= c <= cert.m for c in col.values()):
        return False
    return all(len({col[x] for x in e}) > 1 for e in h.edges if ys.isdisjoint(e))


def kneser_graph_of(h: Hypergraph) -> Graph:
    if len(h.edges) > MAX_KNESER_EDGES:
        raise ParameterRange(f"at most {MAX_KNESER_EDGES} hyperedges")
    return disjointness_graph(h.edges)


def check_dolnikov(h: Hypergraph) -> DolnikovReport:
    """Both sides of chi(KG(F)) >= cd_2(F), computed exactly."""
    coloring = optimal_coloring(kneser_graph_of(h))
    defect = colorability_defect(h, 2)
    return DolnikovReport(
        coloring.palette_size, defect.defect, coloring.palette_size >= defect.defect, coloring, defect
    )


# Small-case generators.


def _subsets(ground):
    return [
        tuple(x for x in range(1, ground + 1) if mask >> (x - 1) & 1)
        for mask in range(1, 1 << ground)
    ]


def canonical_form(h: Hypergraph) -> tuple:
    """Lexicographically least edge list over all relabelings of the ground set."""
    best = None
    for perm in permutations(range(1, h.ground + 1)):
        relabeled = tuple(sorted(tuple(sorted(perm[x - 1] for x in e)) for e in h.edges))
        if best is None or relabeled < best:
            best = relabeled
    return best if best is not None else ()


def all_hypergraphs(ground: int):
    """Every family of nonempty subsets of {1..ground} (2^(2^ground - 1) of them)."""
    subs = _subsets(ground)
    for mask in range(1 << len(subs)):
        yield Hypergraph(ground, tuple(s for i, s in enumerate(subs) if mask >> i & 1))


def antichains(ground: int):
    """Every family of nonempty subsets of {1..ground} with no member inside another."""
    subs = [frozenset(s) for s in _subsets(ground)]

    def rec(i, chosen):
        if i == len(subs):
            yield Hypergraph(ground, tuple(tuple(sorted(s)) for s in chosen))
            return
        yield from rec(i + 1, chosen)
        s = subs[i]
        if all(not (s <= t or t <= s) for t in chosen):
            chosen.append(s)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def up_to_isomorphism(hypergraphs):
    """One representative per isomorphism class, in first-seen order."""
    seen = set()
    for h in hypergraphs:
        key = (h.ground, canonical_form(h))
        if key not in seen:
            seen.add(key)
            yield h


def minimal_members(h: Hypergraph) -> Hypergraph:
    """Drop every hyperedge that contains another one.

    cd_2 is unchanged (a coloring that splits F also splits every superset
    of F) while KG can only lose vertices, so the inequality for the
    minimal family implies it for the original.
    """
    sets = [frozenset(e) for e in h.edges]
    keep = [e for e, s in zip(h.edges, sets) if not any(t < s for t in sets)]
    return Hypergraph(h.ground, tuple(keep))


# Transversal hyperplanes for intersecting families of convex hulls.


def _candidate_normals(ints, d):
    if d == 1:
        return [(1,)]
    normals = {(1, 0), (0, 1)}
    for p, q in combinations(ints, 2):
        n = _primitive([q[1] - p[1], p[0] - q[0]])
        if n is not None:
            normals.add(n)
    return sorted(normals)


def transversal_hyperplane_exists(families) -> Hyperplane | None:
    """A hyperplane meeting the convex hull of every member of every family.

    ``families`` holds d families in R^d, each a list of point sets whose hulls
    pairwise intersect. For a fixed normal the admissible offsets form an
    interval (intersection of the members' projections), and that interval
    can only open or close at normals orthogonal to a difference of two input
    points, so those directions (plus the axes) are a complete candidate set.
    """
    d = len(families)
    if d < 1 or d > MAX_TRANSVERSAL_DIM:
        raise ParameterRange(f"transversal search supports d in 1..{MAX_TRANSVERSAL_DIM}")
    fams = [[[as_point(p) for p in member] for member in fam] for fam in families]
    members = [m for fam in fams for m in fam]
    if any(not m for m in members):
        raise ParameterRange("members must be nonempty point sets")
    if any(len(m) > MAX_MEMBER_POINTS for m in members):
        raise ParameterRange(f"members limited to {MAX_MEMBER_POINTS} points")
    pts = [p for m in members for p in m]
    if len(pts) > MAX_TRANSVERSAL_POINTS:
        raise ParameterRange(f"at most {MAX_TRANSVERSAL_POINTS} points in total")
    if any(len(p) != d for p in pts):
        raise DimensionMismatch(f"{d} families need points in R^{d}")
    for idx, fam in enumerate(fams):
        for a, b in combinations(fam, 2):
            if hulls_disjoint(a, b):
                raise NotIntersectingFamily(f"family {idx} has two disjoint members", idx)
    if not members:
        return Hyperplane((1,) + (0,) * (d - 1), Fraction(0))
    ints, scale = integerize(pts)
    sizes = [len(m) for m in members]
    groups, i = [], 0
    for n in sizes:
        groups.append(ints[i:i + n])
        i += n
    for normal in _candidate_normals(sorted(set(ints)), d):
        lo = max(min(sum(a * b for a, b in zip(normal, q)) for q in g) for g in groups)
        hi = min(max(sum(a * b for a, b in zip(normal, q)) for q in g) for g in groups)
        if lo <= hi:
            return Hyperplane(normal, Fraction(lo + hi, 2 * scale))
    return None


def meets_hull(h: Hyperplane, member) -> bool:
    vals = [h.value(as_point(p)) for p in member]
    return min(vals) <= 0 <= max(vals)
