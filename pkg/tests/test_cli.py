import json
import subprocess
import sys

import pytest

from topocut import serialize as ser
from topocut.cli import main, run
from topocut.generate import gen
from topocut.geometry import ColoredPointSet
from topocut.hamsandwich import verify_cut


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def report_line(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    return json.loads(err[-1])


def test_hamsandwich_round_trip(tmp_path, capsys):
    inst = tmp_path / "p.json"
    assert main(["gen", "points", "--d", "2", "--n", "4", "--seed", "7", "--output", str(inst)]) == 0
    out = tmp_path / "c.json"
    assert main(["hamsandwich", "--input", str(inst), "--output", str(out)]) == 0
    rep = report_line(capsys)
    assert rep["outcome"] == "certificate" and rep["exit_code"] == 0
    doc = json.loads(out.read_text())
    ps = ser.points_from_json(doc["instance"])
    assert verify_cut(ps, ser.bisection_from_json(doc))
    assert doc["instance_hash"] == rep["instance_hash"]
    assert main(["verify", "--input", str(out), "--quiet"]) == 0


def test_tampered_certificate_rejected(tmp_path, capsys):
    env = gen("points", 1, d=2, n=3)
    doc = run("hamsandwich", env).result
    doc["per_class_counts"][0] = [3, 0, 0]
    assert main(["verify", "--input", write(tmp_path / "bad.json", doc)]) == 4
    assert report_line(capsys)["outcome"] == "rejected"
    split = run("necklace", gen("necklace", 1, counts=[2, 2])).result
    split["cuts"] = [99]
    assert main(["verify", "--input", write(tmp_path / "s.json", split), "--quiet"]) == 4


def test_general_position_failure_and_perturb(tmp_path, capsys):
    inst = write(tmp_path / "p.json", {"dimension": 2, "classes": [
        [["0/1", "0/1"], ["1/1", "0/1"], ["2/1", "0/1"]], [["0/1", "1/1"], ["5/1", "3/1"]]]})
    assert main(["hamsandwich", "--input", inst, "--quiet"]) == 2
    assert json.loads(capsys.readouterr().out)["error"] == "NOT_GENERAL_POSITION"
    out = tmp_path / "c.json"
    assert main(["hamsandwich", "--input", inst, "--perturb", "--seed", "5", "--output", str(out), "--quiet"]) == 0
    doc = json.loads(out.read_text())
    assert doc["perturbation"]["seed"] == 5
    assert ser.points_from_json(doc["instance"]).in_general_position


def test_odd_necklace_exit_2(capsys):
    assert main(["necklace", "--stones", "1,1,2", "--quiet"]) == 2
    assert json.loads(capsys.readouterr().out)["error"] == "ODD_TYPE_COUNT"
    report = run("necklace", ser.InstanceEnvelope("necklace", {"d": 2, "stones": [1, 1, 2]}))
    assert report.exit_code == 2 and report.outcome == "error"


def test_necklace_min_cuts(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["necklace", "--stones", "1,1,2,2,3,3", "--min-cuts", "--output", str(out), "--quiet"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert json.loads(out.read_text())["min_cuts"] == 3


def test_kneser_modes(tmp_path, capsys):
    col = tmp_path / "col.json"
    assert main(["kneser", "--n", "5", "--k", "2", "--color", "--output", str(col), "--quiet"]) == 0
    assert main(["kneser", "--n", "5", "--k", "2", "--verify", str(col), "--quiet"]) == 0
    bad = json.loads(col.read_text())
    for entry in bad["colors"]:
        entry["color"] = 1
    assert main(["kneser", "--n", "5", "--k", "2", "--verify", write(tmp_path / "b.json", bad), "--quiet"]) == 4
    capsys.readouterr()
    assert main(["kneser", "--n", "5", "--k", "2", "--chromatic", "--quiet"]) == 0
    assert json.loads(capsys.readouterr().out)["chi"] == 3
    assert main(["kneser", "--n", "3", "--k", "2", "--chromatic", "--quiet"]) == 0
    assert main(["kneser", "--n", "2", "--k", "2", "--quiet"]) == 2


def test_dolnikov_modes(tmp_path, capsys):
    h = write(tmp_path / "h.json", {"ground": 5, "edges": [[1, 2], [3, 4], [1, 5], [2, 3, 4]]})
    assert main(["dolnikov", "--input", h, "--check", "--quiet"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["holds"] and doc["chi"] >= doc["cd2"]
    assert main(["dolnikov", "--input", h, "--defect", "2", "--quiet"]) == 0
    assert json.loads(capsys.readouterr().out)["defect"] == doc["cd2"]


def test_tucker_modes(tmp_path, capsys):
    assert main(["tucker", "--n", "2", "--resolution", "2", "--exhaustive", "--quiet"]) == 0
    sweep = json.loads(capsys.readouterr().out)
    assert sweep["failures"] == 0 and sweep["labelings"] == 4 ** 3
    labels = write(tmp_path / "l.json", {"labels": [-1, 1]})
    assert main(["tucker", "--n", "1", "--resolution", "1", "--labels", labels, "--quiet"]) == 2
    capsys.readouterr()
    labels = write(tmp_path / "l.json", {"labels": [-1, 1, 1]})
    assert main(["tucker", "--n", "1", "--resolution", "1", "--labels", labels, "--quiet"]) == 0
    assert json.loads(capsys.readouterr().out)["edge"] == [0, 1]


def test_io_and_schema_errors(tmp_path):
    assert main(["rainbow", "--input", str(tmp_path / "missing.json"), "--quiet"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["dolnikov", "--input", str(bad), "--quiet"]) == 1
    assert main(["verify", "--input", write(tmp_path / "k.json", {"kind": "mystery"}), "--quiet"]) == 1
    points = write(tmp_path / "p.json", {"dimension": 2, "classes": [[[0.5, 1]]]})
    assert main(["hamsandwich", "--input", points, "--quiet"]) == 1


def test_run_hamsandwich_wiring():
    env = ser.InstanceEnvelope("points", ser.points_to_json(
        ColoredPointSet(2, [[(0, 0), (4, 0), (2, 5)], [(0, 3), (4, 3), (2, -2)]])))
    report = run("hamsandwich", env)
    assert report.exit_code == 0 and report.instance_hash == env.hash
    assert verify_cut(ser.points_from_json(report.result["instance"]), ser.bisection_from_json(report.result))


def test_plot_data(tmp_path):
    inst = tmp_path / "p.json"
    main(["gen", "points", "--d", "2", "--n", "3", "--seed", "4", "--output", str(inst)])
    plot = tmp_path / "plot.json"
    assert main(["rainbow", "--input", str(inst), "--dump-plot-data", str(plot), "--quiet", "--output",
                 str(tmp_path / "r.json")]) == 0
    data = json.loads(plot.read_text())
    assert len(data["classes"]) == 2 and data["cuts"]


def test_module_entry_point(tmp_path):
    out = tmp_path / "n.json"
    proc = subprocess.run([sys.executable, "-m", "topocut", "necklace", "--stones", "1,2,1,2",
                           "--output", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["cuts"] == [2]
    assert json.loads(proc.stderr)["command"] == "necklace"


def test_gen_precondition(capsys):
    assert main(["gen", "necklace", "--counts", "0,2"]) == 2
