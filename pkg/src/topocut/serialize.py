"""JSON encoding for instances and certificates.

Rationals travel as "p/q" strings so nothing passes through a float. Every
document is written with sorted keys, which keeps outputs byte-identical
across runs.
"""

from __future__ import annotations

import hashlib
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .dolnikov import DefectCertificate, DolnikovReport, Hypergraph
from .errors import SchemaError
from .geometry import ColoredPointSet, Hyperplane, as_rational
from .hamsandwich import BisectionCertificate
from .kneser import VertexColoring
from .necklace import Necklace, NecklaceSplit
from .rainbow import CutNode, RainbowPartition
from .tucker import SymmetricTriangulation, TuckerLabeling

SCHEMA_VERSION = 1
INSTANCE_KINDS = ("points", "necklace", "hypergraph", "triangulation", "labeling")
_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?")


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"expected a rational string like '3/4', got {s!r}")
    if isinstance(s, str) and not _RATIONAL.fullmatch(s):
        raise SchemaError(f"bad rational {s!r}; use 'p/q'")
    try:
        return as_rational(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def point_to_json(p) -> list:
    return [rat(c) for c in p]


def point_from_json(doc) -> tuple:
    if not isinstance(doc, list):
        raise SchemaError("a point is a list of rational strings")
    return tuple(parse_rat(c) for c in doc)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def instance_hash(payload) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def _require(doc, *keys):
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"missing keys {missing}")


@dataclass(frozen=True)
class InstanceEnvelope:
    kind: str
    payload: dict
    seed: int | None = None
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "payload": self.payload,
            "schema_version": self.schema_version,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, doc, expected_kind: str | None = None) -> InstanceEnvelope:
        """Accepts a full envelope, or a bare payload when ``expected_kind`` is given."""
        if isinstance(doc, dict) and "kind" in doc and "payload" in doc:
            if doc.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
                raise SchemaError(f"unsupported schema_version {doc.get('schema_version')}")
            kind = doc["kind"]
            if kind not in INSTANCE_KINDS:
                raise SchemaError(f"unknown instance kind {kind!r}")
            if expected_kind and kind != expected_kind:
                raise SchemaError(f"expected a {expected_kind} instance, got {kind}")
            env = cls(kind, doc["payload"], doc.get("seed"))
        elif expected_kind:
            env = cls(expected_kind, doc)
        else:
            raise SchemaError("not an instance envelope")
        _PAYLOAD_READERS[env.kind](env.payload)  # validate eagerly
        return env

    @property
    def hash(self) -> str:
        return instance_hash(self.payload)


# Instances.


def points_to_json(ps: ColoredPointSet) -> dict:
    return {
        "dimension": ps.dimension,
        "classes": [[point_to_json(p) for p in cls] for cls in ps.classes],
    }


def points_from_json(doc) -> ColoredPointSet:
    _require(doc, "dimension", "classes")
    if not isinstance(doc["dimension"], int) or not isinstance(doc["classes"], list):
        raise SchemaError("dimension must be an integer and classes a list")
    try:
        return ColoredPointSet(
            doc["dimension"], [[point_from_json(p) for p in cls] for cls in doc["classes"]]
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def necklace_to_json(nk: Necklace) -> dict:
    return {"d": nk.d, "stones": list(nk.stones)}


def necklace_from_json(doc) -> Necklace:
    _require(doc, "stones")
    stones = doc["stones"]
    if not isinstance(stones, list) or any(type(s) is not int for s in stones):
        raise SchemaError("stones must be a list of integers")
    try:
        return Necklace(tuple(stones), doc.get("d", max(stones, default=0)))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {"ground": h.ground, "edges": [list(e) for e in h.edges]}


def hypergraph_from_json(doc) -> Hypergraph:
    _require(doc, "ground", "edges")
    if not isinstance(doc["edges"], list) or any(not isinstance(e, list) for e in doc["edges"]):
        raise SchemaError("edges must be a list of integer lists")
    try:
        return Hypergraph(doc["ground"], tuple(tuple(e) for e in doc["edges"]))
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc


def triangulation_to_json(t: SymmetricTriangulation) -> dict:
    return {
        "n": t.n,
        "vertices": [point_to_json(p) for p in t.vertices],
        "simplices": [list(s) for s in t.simplices],
        "boundary_antipode": [[v, w] for v, w in sorted(t.boundary_antipode.items())],
    }


def triangulation_from_json(doc) -> SymmetricTriangulation:
    _require(doc, "n", "vertices", "simplices", "boundary_antipode")
    return SymmetricTriangulation(
        doc["n"],
        tuple(point_from_json(p) for p in doc["vertices"]),
        tuple(tuple(s) for s in doc["simplices"]),
        {v: w for v, w in doc["boundary_antipode"]},
    )


def labeling_to_json(lab: TuckerLabeling) -> dict:
    return {"labels": list(lab.labels)}


def labeling_from_json(doc) -> TuckerLabeling:
    _require(doc, "labels")
    if not isinstance(doc["labels"], list) or any(type(x) is not int for x in doc["labels"]):
        raise SchemaError("labels must be a list of integers")
    return TuckerLabeling(tuple(doc["labels"]))


_PAYLOAD_READERS = {
    "points": points_from_json,
    "necklace": necklace_from_json,
    "hypergraph": hypergraph_from_json,
    "triangulation": triangulation_from_json,
    "labeling": labeling_from_json,
}


# Certificates.


def hyperplane_to_json(h: Hyperplane) -> dict:
    return {"normal": [rat(c) for c in h.normal], "offset": rat(h.offset)}


def hyperplane_from_json(doc) -> Hyperplane:
    _require(doc, "normal", "offset")
    try:
        return Hyperplane(tuple(parse_rat(c) for c in doc["normal"]), parse_rat(doc["offset"]))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def bisection_to_json(cert: BisectionCertificate) -> dict:
    return {
        "cut": hyperplane_to_json(cert.cut),
        "pivot": hyperplane_to_json(cert.pivot) if cert.pivot is not None else None,
        "per_class_counts": [list(c) for c in cert.per_class_counts],
    }


def bisection_from_json(doc) -> BisectionCertificate:
    _require(doc, "cut", "per_class_counts")
    pivot = doc.get("pivot")
    return BisectionCertificate(
        hyperplane_from_json(doc["cut"]),
        tuple(tuple(c) for c in doc["per_class_counts"]),
        hyperplane_from_json(pivot) if pivot is not None else None,
    )


def _tree_to_json(node: CutNode | None):
    if node is None:
        return None
    return {
        "cut": hyperplane_to_json(node.cut),
        "on_cut": [point_to_json(p) for p in node.on_cut] if node.on_cut is not None else None,
        "positive": _tree_to_json(node.positive),
        "negative": _tree_to_json(node.negative),
    }


def _tree_from_json(doc):
    if doc is None:
        return None
    on = doc.get("on_cut")
    return CutNode(
        hyperplane_from_json(doc["cut"]),
        tuple(point_from_json(p) for p in on) if on is not None else None,
        _tree_from_json(doc.get("positive")),
        _tree_from_json(doc.get("negative")),
    )


def rainbow_to_json(rp: RainbowPartition) -> dict:
    return {
        "tuples": [[point_to_json(p) for p in t] for t in rp.tuples],
        "cut_tree": _tree_to_json(rp.cut_tree),
    }


def rainbow_from_json(doc) -> RainbowPartition:
    _require(doc, "tuples")
    return RainbowPartition(
        tuple(tuple(point_from_json(p) for p in t) for t in doc["tuples"]),
        _tree_from_json(doc.get("cut_tree")),
    )


def split_to_json(sp: NecklaceSplit) -> dict:
    return {"cuts": list(sp.cuts), "assignment": list(sp.assignment)}


def split_from_json(doc) -> NecklaceSplit:
    _require(doc, "cuts", "assignment")
    return NecklaceSplit(tuple(doc["cuts"]), tuple(doc["assignment"]))


def coloring_to_json(c: VertexColoring) -> dict:
    return {
        "graph_id": c.graph_id,
        "palette_size": c.palette_size,
        "colors": [{"vertex": list(v), "color": col} for v, col in c.colors.items()],
    }


def coloring_from_json(doc) -> VertexColoring:
    _require(doc, "palette_size", "colors")
    return VertexColoring(
        doc.get("graph_id", ""),
        {tuple(e["vertex"]): e["color"] for e in doc["colors"]},
        doc["palette_size"],
    )


def defect_to_json(cert: DefectCertificate) -> dict:
    return {
        "m": cert.m,
        "defect": cert.defect,
        "witness_Y": list(cert.witness_Y),
        "witness_coloring": [[x, c] for x, c in sorted(cert.witness_coloring.items())],
    }


def defect_from_json(doc) -> DefectCertificate:
    _require(doc, "m", "defect", "witness_Y", "witness_coloring")
    return DefectCertificate(
        doc["m"], doc["defect"], tuple(doc["witness_Y"]), {x: c for x, c in doc["witness_coloring"]}
    )


def dolnikov_to_json(rep: DolnikovReport) -> dict:
    return {
        "chi": rep.chi,
        "cd2": rep.cd2,
        "holds": rep.holds,
        "coloring": coloring_to_json(rep.coloring),
        "defect": defect_to_json(rep.defect),
    }


def dolnikov_from_json(doc) -> DolnikovReport:
    _require(doc, "chi", "cd2", "holds", "coloring", "defect")
    return DolnikovReport(
        doc["chi"], doc["cd2"], doc["holds"],
        coloring_from_json(doc["coloring"]), defect_from_json(doc["defect"]),
    )


# Files.


def read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_json(doc, path: str):
    text = dumps(doc)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
