"""Seeded instance generators. The same seed always yields the same instance."""

from __future__ import annotations

import random

from .dolnikov import Hypergraph
from .errors import GenerationFailed, ParameterRange
from .geometry import ColoredPointSet
from .necklace import Necklace
from .serialize import (
    InstanceEnvelope,
    hypergraph_to_json,
    labeling_to_json,
    necklace_to_json,
    points_to_json,
    triangulation_to_json,
)
from .tucker import TuckerLabeling, build_disk_triangulation

GENERATION_RETRIES = 100


def random_points(d: int, sizes, rng: random.Random, coord_range: int = 1000) -> ColoredPointSet:
    """Integer points in [-coord_range, coord_range]^d, resampled until in general position."""
    if d < 1 or any(n < 1 for n in sizes):
        raise ParameterRange("need d >= 1 and at least one point per class")
    total = sum(sizes)
    for _ in range(GENERATION_RETRIES):
        pts = set()
        while len(pts) < total:
            pts.add(tuple(rng.randint(-coord_range, coord_range) for _ in range(d)))
        # Sort before shuffling: set iteration order is not stable across runs.
        ordered = sorted(pts)
        rng.shuffle(ordered)
        classes, i = [], 0
        for n in sizes:
            classes.append(ordered[i:i + n])
            i += n
        ps = ColoredPointSet(d, classes)
        if ps.in_general_position:
            return ps
    raise GenerationFailed(f"no general-position sample after {GENERATION_RETRIES} tries")


def random_necklace(counts, rng: random.Random) -> Necklace:
    if not counts or any(c < 1 for c in counts):
        raise ParameterRange("every stone type needs a positive count")
    stones = [i + 1 for i, c in enumerate(counts) for _ in range(c)]
    rng.shuffle(stones)
    return Necklace(tuple(stones), len(counts))


def random_hypergraph(ground: int, edges: int, rng: random.Random) -> Hypergraph:
    if ground < 1 or edges < 0:
        raise ParameterRange("need ground >= 1 and edges >= 0")
    family = []
    for _ in range(edges):
        size = rng.randint(1, ground)
        family.append(tuple(sorted(rng.sample(range(1, ground + 1), size))))
    return Hypergraph(ground, tuple(family))


def random_labeling(n: int, resolution: int, rng: random.Random) -> TuckerLabeling:
    t = build_disk_triangulation(n, resolution)
    values = [s * j for j in range(1, n + 1) for s in (1, -1)]
    labels = [0] * len(t.vertices)
    for v in range(len(t.vertices)):
        w = t.boundary_antipode.get(v)
        if w is not None and w < v:
            labels[v] = -labels[w]
        else:
            labels[v] = rng.choice(values)
    return TuckerLabeling(tuple(labels))


def gen(kind: str, seed: int = 0, **params) -> InstanceEnvelope:
    """Build an instance envelope of the given kind from ``seed`` and kind parameters.

    points: d, n (per class) or sizes; necklace: counts; hypergraph: ground,
    edges; triangulation: n, resolution; labeling: n, resolution.
    """
    rng = random.Random(seed)
    if kind == "points":
        d = params["d"]
        sizes = params.get("sizes") or [params.get("n", 4)] * d
        ps = random_points(d, sizes, rng, params.get("coord_range", 1000))
        payload = points_to_json(ps)
    elif kind == "necklace":
        payload = necklace_to_json(random_necklace(params["counts"], rng))
    elif kind == "hypergraph":
        payload = hypergraph_to_json(random_hypergraph(params["ground"], params.get("edges", 4), rng))
    elif kind == "triangulation":
        payload = triangulation_to_json(build_disk_triangulation(params["n"], params["resolution"]))
    elif kind == "labeling":
        payload = labeling_to_json(random_labeling(params["n"], params["resolution"], rng))
    else:
        raise ParameterRange(f"unknown instance kind {kind!r}")
    return InstanceEnvelope(kind, payload, seed)
