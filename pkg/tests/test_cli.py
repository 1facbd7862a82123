import csv
import io
import json
import subprocess
import sys

import pytest

from splinelab.cli import RunConfig, main, run


def call(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_hf_delta_csv(capsys):
    status, out = call(capsys, "hf", "--builtin", "delta", "--dmin", "0", "--dmax", "8", "--format", "csv")
    assert status == 0
    rows = {int(r["d"]): int(r["hf"]) for r in csv.DictReader(io.StringIO(out))}
    assert sorted(rows) == list(range(9)) and rows[6] == 34


def test_postulation_delta_json(capsys):
    status, out = call(capsys, "postulation", "--builtin", "delta", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and doc["postulation"] == 5 and doc["bounds"]["ok"]


def test_bounds_q(capsys):
    status, out = call(capsys, "bounds", "--builtin", "q", "--r", "2", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and doc["e"] == 15 and doc["bound"] == "HF=HP for d >= 13"


def test_hp_and_gens(capsys):
    status, out = call(capsys, "hp", "--builtin", "q", "--r", "1", "--d0", "8", "--format", "json")
    assert status == 0 and json.loads(out)["coefficients"] == ["10", "-6", "2"]
    status, out = call(capsys, "gens", "--builtin", "octahedron", "--r", "1", "--dmax", "7", "--format", "csv")
    assert status == 0
    assert out.splitlines() == ["degree,count", "0,1", "2,3", "4,3", "6,1"]


def test_ls(capsys):
    status, out = call(capsys, "ls", "--builtin", "q", "--r", "0", "--dmax", "4", "--format", "csv")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert all(r["ls1"] == r["ls1_euler"] for r in rows)
    assert list(rows[0]) == ["d", "hf", "ls0", "ls1", "ls1_euler"]


def test_validate_and_builtin_roundtrip(capsys, tmp_path):
    path = tmp_path / "q.json"
    status, _ = call(capsys, "builtin", "q", "--r", "1", "--emit", str(path))
    assert status == 0 and json.loads(path.read_text())["alpha"]["interior"] == 1
    status, out = call(capsys, "validate", "--input", str(path), "--format", "json")
    assert status == 0 and json.loads(out)["hereditary"]
    status, out = call(capsys, "hf", "--input", str(path), "--dmin", "8", "--dmax", "8", "--format", "csv")
    assert out.splitlines()[1] == "8,90"


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["hf", "--input", str(bad)]) == 2
    assert main(["hf", "--builtin", "q", "--dmax", "100"]) == 2
    assert main(["hf"]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"type": "planar", "vertices": [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]],
                                  "facets": [[0, 1, 2], [0, 3, 4]]}))
    assert main(["validate", "--input", str(broken)]) == 3
    assert main(["hf", "--input", str(broken)]) == 3
    assert main(["colon", "one", "--p", "2", "--q", "1", "--colon-r", "0"]) == 4
    capsys.readouterr()


def test_colon_one_and_sweep(capsys):
    status, out = call(capsys, "colon", "one", "--p", "3", "--q", "3", "--colon-r", "2", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and doc["initial_ideal"] == [[2, 0], [1, 1], [0, 3]]
    status, out = call(capsys, "colon", "sweep", "--pmax", "2", "--qmax", "2", "--rmax", "1", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "p,q,r,a,b,case,hf_match,initial_match"
    assert status == 4  # (2,1,0) is among the tuples where in(I) is not L(a,b)


def test_schur(capsys):
    status, out = call(capsys, "schur", "--mu", "2,1", "--r", "2", "--format", "json")
    assert status == 0 and json.loads(out)[0]["det"] == 2
    status, _ = call(capsys, "schur", "--max-size", "4", "--rmax", "4")
    assert status == 0


def test_run_config_directly(capsys):
    assert run(RunConfig(command="hf", builtin="two", dmax=2)) == 2
    assert run(RunConfig(command="hf", builtin="random_fan", seed=4, dmax=3, exact=True, format="json")) == 0
    out = capsys.readouterr().out
    assert len(json.loads(out)) == 4


def test_deterministic_output(capsys):
    _, a = call(capsys, "bounds", "--builtin", "random_fan", "--seed", "9", "--format", "json")
    _, b = call(capsys, "bounds", "--builtin", "random_fan", "--seed", "9", "--format", "json")
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "splinelab", "hf", "--builtin", "ngon", "--n", "4", "--dmax", "2",
                          "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "d,hf"
