"""Kneser graphs, the min(min F, n-2k+2) coloring, and exact chromatic numbers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

from .errors import IncompleteColoring, ParameterRange

MAX_KNESER_VERTICES = 10_000
MAX_EXACT_VERTICES = 100


@dataclass(frozen=True)
class Graph:
    vertices: tuple  # canonical vertex labels
    edges: tuple  # index pairs (i, j), i < j, sorted

    @cached_property
    def adjacency(self) -> list:
        adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    @property
    def graph_id(self) -> str:
        return f"graph[{len(self.vertices)}]"


@dataclass(frozen=True)
class KneserGraph(Graph):
    n: int = 0
    k: int = 0

    @property
    def graph_id(self) -> str:
        return f"KG({self.n},{self.k})"


@dataclass(frozen=True)
class VertexColoring:
    graph_id: str
    colors: dict  # vertex label -> color in 1..palette_size
    palette_size: int


def disjointness_graph(sets) -> Graph:
    """Vertices are the given sets (in order); edges join disjoint pairs."""
    verts = tuple(tuple(s) for s in sets)
    frozen = [frozenset(s) for s in verts]
    edges = tuple(
        (i, j) for i, j in combinations(range(len(verts)), 2) if not (frozen[i] & frozen[j])
    )
    return Graph(verts, edges)


def build_kneser(n: int, k: int) -> KneserGraph:
    if k < 1 or n < 2 * k - 1:
        raise ParameterRange(f"KG({n},{k}) needs k >= 1 and n >= 2k-1")
    if comb(n, k) > MAX_KNESER_VERTICES:
        raise ParameterRange(f"C({n},{k}) exceeds {MAX_KNESER_VERTICES} vertices")
    verts = tuple(combinations(range(1, n + 1), k))
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        rest = [x for x in range(1, n + 1) if x not in v]
        for w in combinations(rest, k):
            j = index[w]
            if i < j:
                edges.append((i, j))
    edges.sort()
    return KneserGraph(verts, tuple(edges), n, k)


def explicit_coloring(g: KneserGraph) -> VertexColoring:
    """Vertex F gets color min(min F, n-2k+2)."""
    top = g.n - 2 * g.k + 2
    return VertexColoring(g.graph_id, {v: min(min(v), top) for v in g.vertices}, top)


def is_proper(g: Graph, c: VertexColoring) -> bool:
    missing = [v for v in g.vertices if v not in c.colors]
    if missing:
        raise IncompleteColoring(f"{len(missing)} vertices uncolored, e.g. {missing[0]}")
    if any(not 1 <= c.colors[v] <= c.palette_size for v in g.vertices):
        return False
    return all(c.colors[g.vertices[i]] != c.colors[g.vertices[j]] for i, j in g.edges)


def _greedy_clique(adj) -> int:
    best = 0
    for start in range(len(adj)):
        clique = [start]
        for v in sorted(adj[start], key=lambda u: (-len(adj[u]), u)):
            if all(v in adj[u] for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def _coloring_search(adj, m):
    """DSATUR backtracking; returns a color list (1-based) or None.

    New colors are only opened in increasing order, which removes the
    permutation symmetry among unused colors.
    """
    n = len(adj)
    color = [0] * n
    seen = [[0] * (m + 1) for _ in range(n)]  # seen[v][c]: colored neighbors of v with c
    sat = [0] * n
    degree = [len(a) for a in adj]

    def assign(v, c, delta):
        for u in adj[v]:
            before = seen[u][c]
            seen[u][c] += delta
            if before == 0 and delta > 0:
                sat[u] += 1
            elif seen[u][c] == 0 and delta < 0:
                sat[u] -= 1

    def rec(done, used):
        if done == n:
            return True
        v = -1
        for u in range(n):
            if color[u] == 0 and (v < 0 or (sat[u], degree[u]) > (sat[v], degree[v])):
                v = u
        for c in range(1, min(used + 1, m) + 1):
            if seen[v][c]:
                continue
            color[v] = c
            assign(v, c, 1)
            if rec(done + 1, max(used, c)):
                return True
            assign(v, c, -1)
            color[v] = 0
        return False

    return list(color) if rec(0, 0) else None


def optimal_coloring(g: Graph) -> VertexColoring:
    """A proper coloring with exactly chi(g) colors, by exact search."""
    if len(g.vertices) > MAX_EXACT_VERTICES:
        raise ParameterRange(f"exact search limited to {MAX_EXACT_VERTICES} vertices")
    if not g.vertices:
        return VertexColoring(g.graph_id, {}, 0)
    adj = g.adjacency
    m = max(1, _greedy_clique(adj))
    while True:
        found = _coloring_search(adj, m)
        if found is not None:
            return VertexColoring(g.graph_id, dict(zip(g.vertices, found)), m)
        m += 1


def chromatic_number(g: Graph) -> int:
    return optimal_coloring(g).palette_size
