"""``topocut`` command-line entry point.

Exit codes: 0 certificate produced (or accepted), 1 I/O or schema error,
2 precondition rejected, 3 hard bug signal (a theorem-guaranteed search
failed), 4 certificate rejected by ``verify`` or ``kneser --verify``.

The result document goes to ``--output``; a one-line JSON run report
(including wall time) goes to stderr so that output files stay
byte-identical between runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import serialize as ser
from .dolnikov import check_dolnikov, colorability_defect, verify_defect
from .errors import HardBugSignal, PreconditionError, SchemaError, SearchExhausted
from .generate import gen
from .geometry import perturb
from .hamsandwich import find_cut, verify_cut
from .kneser import build_kneser, explicit_coloring, is_proper, optimal_coloring
from .necklace import Necklace, _require_even, min_cuts, split_brute_force, split_via_moment_curve, verify_split
from .rainbow import rainbow_partition, verify_rainbow
from .tucker import build_disk_triangulation, check_labeling, find_complementary_edge, tucker_sweep, validate_complex

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_HARD_BUG, EXIT_REJECTED = 0, 1, 2, 3, 4
COMMANDS = ("hamsandwich", "rainbow", "necklace", "kneser", "dolnikov", "tucker", "verify")


@dataclass
class RunReport:
    command: str
    instance_hash: str | None
    outcome: str  # certificate | counterexample | rejected | error
    wall_time: float
    parameters: dict
    exit_code: int
    result: dict | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        doc = {
            "command": self.command,
            "instance_hash": self.instance_hash,
            "outcome": self.outcome,
            "wall_time": round(self.wall_time, 6),
            "parameters": self.parameters,
            "exit_code": self.exit_code,
        }
        if self.result and "error" in self.result:
            doc["error"] = self.result["error"]
        return doc


def _doc(kind, **fields):
    return {"kind": kind, "schema_version": ser.SCHEMA_VERSION, **fields}


def _hamsandwich(env, perturb_input=False, seed=0):
    ps = ser.points_from_json(env.payload)
    pert = None
    if perturb_input:
        moved = perturb(ps, seed)
        pert = {"seed": seed, "eta": ser.rat(moved.eta), "original_instance_hash": env.hash}
        ps = moved.points
    cert = find_cut(ps)
    if not verify_cut(ps, cert):
        raise SearchExhausted("find_cut produced a certificate that does not verify")
    payload = ser.points_to_json(ps)
    return "certificate", _doc(
        "bisection_certificate",
        instance_hash=ser.instance_hash(payload),
        instance=payload,
        perturbation=pert,
        **ser.bisection_to_json(cert),
    ), EXIT_OK


def _rainbow(env):
    ps = ser.points_from_json(env.payload)
    rp = rainbow_partition(ps)
    return "certificate", _doc(
        "rainbow_partition", instance_hash=env.hash, instance=env.payload, **ser.rainbow_to_json(rp)
    ), EXIT_OK


def _necklace(env, oracle=False, count_only=False):
    nk = ser.necklace_from_json(env.payload)
    base = dict(instance_hash=env.hash, instance=ser.necklace_to_json(nk))
    if count_only:
        return "certificate", _doc("min_cuts", min_cuts=min_cuts(nk), **base), EXIT_OK
    if oracle:
        _require_even(nk)
        sp = split_brute_force(nk, nk.d)
        if sp is None:
            raise SearchExhausted(f"no fair split with {nk.d} cuts")
    else:
        sp = split_via_moment_curve(nk)
    if not verify_split(nk, sp):
        raise SearchExhausted("split failed its own verification")
    method = "oracle" if oracle else "moment_curve"
    return "certificate", _doc("necklace_split", method=method, **base, **ser.split_to_json(sp)), EXIT_OK


def _kneser(env, n, k, mode="color", coloring=None):
    g = build_kneser(n, k)
    graph = {"n": n, "k": k}
    if mode == "verify":
        c = ser.coloring_from_json(coloring)
        ok = is_proper(g, c)
        return _verdict(ok, _doc("verification", accepted=ok, graph=graph))
    if mode == "chromatic":
        best = optimal_coloring(g)
        formula = n - 2 * k + 2
        doc = _doc("chromatic_number", graph=graph, chi=best.palette_size,
                   coloring=ser.coloring_to_json(best))
        if best.palette_size != formula:
            return "counterexample", doc, EXIT_HARD_BUG
        return "certificate", doc, EXIT_OK
    c = explicit_coloring(g)
    if not is_proper(g, c):
        raise SearchExhausted("explicit coloring is not proper")
    return "certificate", _doc("vertex_coloring", graph=graph, **ser.coloring_to_json(c)), EXIT_OK


def _dolnikov(env, mode="check", m=2):
    h = ser.hypergraph_from_json(env.payload)
    base = dict(instance_hash=env.hash, instance=ser.hypergraph_to_json(h))
    if mode == "defect":
        cert = colorability_defect(h, m)
        return "certificate", _doc("defect_certificate", **base, **ser.defect_to_json(cert)), EXIT_OK
    rep = check_dolnikov(h)
    doc = _doc("dolnikov_report", **base, **ser.dolnikov_to_json(rep))
    if not rep.holds:
        return "counterexample", doc, EXIT_HARD_BUG
    return "certificate", doc, EXIT_OK


def _tucker(env, n, resolution, mode="exhaustive", threads=1):
    t = build_disk_triangulation(n, resolution)
    if not validate_complex(t):
        raise SearchExhausted("built triangulation failed validation")
    tri = {"n": n, "resolution": resolution}
    if mode == "labels":
        lab = ser.labeling_from_json(env.payload)
        edge = find_complementary_edge(t, lab)
        if edge is None:
            raise SearchExhausted("no complementary edge")
        return "certificate", _doc(
            "complementary_edge", triangulation=tri, labels=list(lab.labels), edge=list(edge),
            edge_labels=[lab.labels[v] for v in edge],
            edge_coordinates=[ser.point_to_json(t.vertices[v]) for v in edge],
        ), EXIT_OK
    rep = tucker_sweep(t, threads)
    doc = _doc(
        "tucker_sweep", triangulation=tri, labelings=rep.labelings, failures=len(rep.failures),
        all_complementary=not rep.failures,
        first_failure=list(rep.failures[0].labels) if rep.failures else None,
    )
    if rep.failures:
        return "counterexample", doc, EXIT_HARD_BUG
    return "certificate", doc, EXIT_OK


def _verify_certificate(doc) -> bool:
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "bisection_certificate":
        ps = ser.points_from_json(doc["instance"])
        if doc.get("instance_hash") != ser.instance_hash(doc["instance"]):
            return False
        return verify_cut(ps, ser.bisection_from_json(doc))
    if kind == "rainbow_partition":
        return verify_rainbow(ser.points_from_json(doc["instance"]), ser.rainbow_from_json(doc))
    if kind == "necklace_split":
        return verify_split(ser.necklace_from_json(doc["instance"]), ser.split_from_json(doc))
    if kind == "min_cuts":
        return min_cuts(ser.necklace_from_json(doc["instance"])) == doc["min_cuts"]
    if kind == "tucker_sweep":
        tri = doc["triangulation"]
        rep = tucker_sweep(build_disk_triangulation(tri["n"], tri["resolution"]))
        return (rep.labelings, len(rep.failures)) == (doc["labelings"], doc["failures"])
    if kind in ("vertex_coloring", "chromatic_number"):
        g = build_kneser(doc["graph"]["n"], doc["graph"]["k"])
        c = ser.coloring_from_json(doc if kind == "vertex_coloring" else doc["coloring"])
        if kind == "chromatic_number" and c.palette_size != doc["chi"]:
            return False
        return is_proper(g, c)
    if kind == "defect_certificate":
        return verify_defect(ser.hypergraph_from_json(doc["instance"]), ser.defect_from_json(doc))
    if kind == "dolnikov_report":
        h = ser.hypergraph_from_json(doc["instance"])
        rep = ser.dolnikov_from_json(doc)
        from .dolnikov import kneser_graph_of

        return (
            rep.coloring.palette_size == rep.chi
            and is_proper(kneser_graph_of(h), rep.coloring)
            and rep.defect.defect == rep.cd2
            and verify_defect(h, rep.defect)
            and rep.holds == (rep.chi >= rep.cd2)
        )
    if kind == "complementary_edge":
        tri = doc["triangulation"]
        t = build_disk_triangulation(tri["n"], tri["resolution"])
        lab = ser.TuckerLabeling(tuple(doc["labels"]))
        check_labeling(t, lab)
        u, v = doc["edge"]
        return (min(u, v), max(u, v)) in set(t.edges) and lab.labels[u] == -lab.labels[v]
    raise SchemaError(f"cannot verify documents of kind {kind!r}")


def _verify(env, certificate=None):
    try:
        ok = _verify_certificate(certificate)
    except SchemaError:
        raise
    except (PreconditionError, ValueError, KeyError, TypeError, IndexError):
        # Malformed certificate content is a rejection, not a crash.
        ok = False
    return _verdict(ok, _doc("verification", accepted=ok, certificate_kind=certificate["kind"]))


def _verdict(ok, doc):
    # An accepted certificate counts as a certificate outcome.
    return ("certificate", doc, EXIT_OK) if ok else ("rejected", doc, EXIT_REJECTED)


_HANDLERS = {
    "hamsandwich": _hamsandwich,
    "rainbow": _rainbow,
    "necklace": _necklace,
    "kneser": _kneser,
    "dolnikov": _dolnikov,
    "tucker": _tucker,
    "verify": _verify,
}


def run(command: str, envelope: ser.InstanceEnvelope | None = None, **params) -> RunReport:
    """Dispatch one command; errors become reports with the matching exit code."""
    start = time.perf_counter()
    if envelope is not None:
        ihash = envelope.hash
    elif command == "verify" and isinstance(params.get("certificate"), dict):
        ihash = ser.instance_hash(params["certificate"].get("instance"))
    else:
        ihash = ser.instance_hash({k: v for k, v in params.items() if k in ("n", "k", "resolution")})
    try:
        outcome, result, code = _HANDLERS[command](envelope, **params)
    except PreconditionError as exc:
        outcome, result, code = "error", {"error": exc.code, "message": str(exc)}, EXIT_PRECONDITION
    except HardBugSignal as exc:
        outcome, result, code = "error", {"error": exc.code, "message": str(exc)}, EXIT_HARD_BUG
    except (SchemaError, KeyError, TypeError, ValueError) as exc:
        outcome, result, code = "error", {"error": "SCHEMA_ERROR", "message": str(exc)}, EXIT_IO
    shown = {k: v for k, v in params.items() if k not in ("certificate", "coloring")}
    return RunReport(command, ihash, outcome, time.perf_counter() - start, shown, code, result)


def _plot_data(path, ps, cuts):
    ser.write_json(
        {"classes": ser.points_to_json(ps)["classes"], "cuts": [ser.hyperplane_to_json(h) for h in cuts]},
        path,
    )


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topocut", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default="-", help="result file, '-' for stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--quiet", action="store_true", help="suppress the stderr run report")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    g.add_argument("kind", choices=ser.INSTANCE_KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--n", type=int, default=4, help="points per class, or ball dimension")
    g.add_argument("--sizes", help="comma-separated class sizes (points)")
    g.add_argument("--counts", help="comma-separated stone counts (necklace)")
    g.add_argument("--ground", type=int, default=5)
    g.add_argument("--edges", type=int, default=4)
    g.add_argument("--resolution", type=int, default=2)
    g.add_argument("--coord-range", type=int, default=1000)

    h = sub.add_parser("hamsandwich", parents=[common], help="find a ham sandwich cut")
    h.add_argument("--input", required=True)
    h.add_argument("--perturb", action="store_true")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--dump-plot-data", metavar="PATH")

    r = sub.add_parser("rainbow", parents=[common], help="rainbow partition")
    r.add_argument("--input", required=True)
    r.add_argument("--dump-plot-data", metavar="PATH")

    nk = sub.add_parser("necklace", parents=[common], help="split a necklace")
    src = nk.add_mutually_exclusive_group(required=True)
    src.add_argument("--stones", help='comma-separated stone types, e.g. "1,1,2,2"')
    src.add_argument("--input")
    nk.add_argument("--oracle", action="store_true", help="use exhaustive search")
    nk.add_argument("--min-cuts", action="store_true", help="report the minimum cut count")

    k = sub.add_parser("kneser", parents=[common], help="Kneser graph colorings")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int, required=True)
    mode = k.add_mutually_exclusive_group()
    mode.add_argument("--chromatic", action="store_true")
    mode.add_argument("--color", action="store_true")
    mode.add_argument("--verify", metavar="COLORING_JSON")

    dn = sub.add_parser("dolnikov", parents=[common], help="hypergraph defect and Dol'nikov check")
    dn.add_argument("--input", required=True)
    dm = dn.add_mutually_exclusive_group()
    dm.add_argument("--check", action="store_true")
    dm.add_argument("--defect", type=int, metavar="M")

    t = sub.add_parser("tucker", parents=[common], help="Tucker labelings")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--resolution", type=int, required=True)
    tm = t.add_mutually_exclusive_group()
    tm.add_argument("--exhaustive", action="store_true")
    tm.add_argument("--labels", metavar="LABELS_JSON")

    v = sub.add_parser("verify", parents=[common], help="re-check a certificate")
    v.add_argument("--input", required=True)
    return p


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            params = dict(d=args.d, n=args.n, ground=args.ground, edges=args.edges,
                          resolution=args.resolution, coord_range=args.coord_range)
            if args.sizes:
                params["sizes"] = _ints(args.sizes)
            if args.counts:
                params["counts"] = _ints(args.counts)
            try:
                env = gen(args.kind, args.seed, **params)
            except PreconditionError as exc:
                print(json.dumps({"command": "gen", "error": exc.code, "message": str(exc)}), file=sys.stderr)
                return EXIT_PRECONDITION
            ser.write_json(env.to_json(), args.output)
            return EXIT_OK

        envelope, params = None, {}
        if args.command == "hamsandwich":
            envelope = ser.InstanceEnvelope.from_json(ser.read_json(args.input), "points")
            params = dict(perturb_input=args.perturb, seed=args.seed)
        elif args.command == "rainbow":
            envelope = ser.InstanceEnvelope.from_json(ser.read_json(args.input), "points")
        elif args.command == "necklace":
            if args.stones is not None:
                nk = Necklace.parse(args.stones)
                envelope = ser.InstanceEnvelope("necklace", ser.necklace_to_json(nk))
            else:
                envelope = ser.InstanceEnvelope.from_json(ser.read_json(args.input), "necklace")
            params = dict(oracle=args.oracle, count_only=args.min_cuts)
        elif args.command == "kneser":
            params = dict(n=args.n, k=args.k)
            if args.verify:
                params.update(mode="verify", coloring=ser.read_json(args.verify))
            else:
                params["mode"] = "chromatic" if args.chromatic else "color"
        elif args.command == "dolnikov":
            envelope = ser.InstanceEnvelope.from_json(ser.read_json(args.input), "hypergraph")
            params = dict(mode="defect", m=args.defect) if args.defect is not None else dict(mode="check")
        elif args.command == "tucker":
            params = dict(n=args.n, resolution=args.resolution)
            if args.labels:
                envelope = ser.InstanceEnvelope.from_json(ser.read_json(args.labels), "labeling")
                params["mode"] = "labels"
            else:
                params.update(mode="exhaustive", threads=args.threads)
        elif args.command == "verify":
            params = dict(certificate=ser.read_json(args.input))
    except (OSError, json.JSONDecodeError, SchemaError) as exc:
        print(json.dumps({"command": args.command, "error": "IO_ERROR", "message": str(exc)}), file=sys.stderr)
        return EXIT_IO
    except PreconditionError as exc:
        print(json.dumps({"command": args.command, "error": exc.code, "message": str(exc)}), file=sys.stderr)
        return EXIT_PRECONDITION

    report = run(args.command, envelope, **params)
    try:
        if report.result is not None:
            ser.write_json(report.result, args.output)
        if getattr(args, "dump_plot_data", None) and report.exit_code == EXIT_OK:
            doc = report.result
            ps = ser.points_from_json(doc["instance"])
            if args.command == "hamsandwich":
                cuts = [ser.hyperplane_from_json(doc["cut"])]
            else:
                cuts = _tree_cuts(ser.rainbow_from_json(doc).cut_tree)
            _plot_data(args.dump_plot_data, ps, cuts)
        if args.command == "necklace" and args.min_cuts and args.output != "-" and report.exit_code == 0:
            print(report.result["min_cuts"])
    except OSError as exc:
        print(json.dumps({"command": args.command, "error": "IO_ERROR", "message": str(exc)}), file=sys.stderr)
        return EXIT_IO
    if not args.quiet:
        print(json.dumps(report.to_json(), sort_keys=True), file=sys.stderr)
    return report.exit_code


def _tree_cuts(node):
    if node is None:
        return []
    return [node.cut] + _tree_cuts(node.positive) + _tree_cuts(node.negative)


if __name__ == "__main__":
    sys.exit(main())
