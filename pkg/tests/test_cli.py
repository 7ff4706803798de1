import csv
import json
import subprocess
import sys

import pytest

from qtop.cli import main
from qtop.continuum import BallOmega, FamilyFn, UnitInterval
from qtop.verify import residual_at


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_braid_example(capsys):
    code, out, _ = run(["braid", "--quandle", "dihedral:3", "--strands", "2", "--word", "1,1,1"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 9 and len(data["tuples"]) == 9


def test_braid_tuples_suppressed(capsys):
    code, out, _ = run(["braid", "--quandle", "trivial:3", "--strands", "3", "--word", "1", "--max-tuples", "5"], capsys)
    data = json.loads(out)
    # s_1 swaps the first two strands, so exactly the tuples with a = b survive
    assert data["count"] == 9 and "tuples" not in data


def test_verify_unit_interval(capsys):
    code, out, _ = run(["verify", "--spec", "unit-interval", "--grid", "101"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["passed"]
    assert all(r["max_residual"] < 1e-9 for r in data["reports"] if r["axiom"] != "homeomorphism")


def test_verify_finding_exits_one_and_witness_reproduces(capsys):
    code, out, _ = run(["verify", "--spec", "ball:2", "--grid", "9"], capsys)
    assert code == 1
    data = json.loads(out)
    dist = next(r for r in data["reports"] if r["axiom"] == "self_distributivity")
    assert not dist["passed"]
    assert residual_at(BallOmega(2), "self_distributivity", dist["witness"]) == dist["max_residual"]


def test_verify_reports_revalidate(capsys):
    code, out, _ = run(["verify", "--spec", "family-fn", "--family-n", "2", "--grid", "21"], capsys)
    data = json.loads(out)
    for r in data["reports"]:
        if r["axiom"] in ("idempotency", "self_distributivity"):
            assert residual_at(FamilyFn(2), r["axiom"], r["witness"]) == r["max_residual"]


def test_finite(capsys, tmp_path):
    table = tmp_path / "r3.json"
    code, out, _ = run(["finite", "--quandle", "dihedral:3", "--iso", "core:Z6", "--table-out", str(table)], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["connected"] and data["inner_group"]["order"] == 6
    assert data["isomorphism"]["map"] is None  # different sizes
    code, out, _ = run(["finite", "--quandle", str(table), "--iso", "alexander:3,2"], capsys)
    assert code == 0 and json.loads(out)["isomorphism"]["map"] is not None


def test_finite_violation_exits_one(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "table": [[1, 0], [0, 1]], "label": "bad"}))
    code, out, _ = run(["finite", "--quandle", str(bad)], capsys)
    assert code == 1 and json.loads(out)["check"]["axioms"][0]["witness"] == [0]


@pytest.mark.parametrize(
    "argv",
    [
        ["finite", "--quandle", "alexander:4,2"],
        ["finite", "--quandle", "dihedral"],
        ["finite", "--quandle", "mystery:3"],
        ["finite", "--quandle", "conj:G99"],
        ["finite", "--quandle", "missing.json"],
        ["verify", "--spec", "family-fn"],
        ["verify", "--spec", "ball:2", "--grid", "101"],
        ["verify", "--spec", "unit-interval", "--bogus"],
        ["braid", "--quandle", "dihedral:3", "--strands", "2", "--word", "1,2"],
        ["braid", "--quandle", "dihedral:11", "--strands", "8", "--word", "1"],
        ["poly", "--poly", "[{\"i\": 1}]"],
        ["poly", "--poly", "not json"],
        ["curves", "--epsilons", "0.7"],
        ["curves", "--epsilons", "a,b"],
        ["locus", "--spec", "ball:2", "--csv"],
        [],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err


def test_malformed_json_file(capsys, tmp_path):
    f = tmp_path / "q.json"
    f.write_text("{not json")
    code, _, err = run(["finite", "--quandle", str(f)], capsys)
    assert code == 2 and "error" in err


def test_poly(capsys):
    code, out, _ = run(["poly", "--poly", '[{"i":1,"j":0,"num":1,"den":1}]'], capsys)
    assert code == 0 and json.loads(out)["verdict"]["status"] == "forced_trivial"
    code, out, _ = run(["poly", "--rack", "--poly", '[{"i":3,"j":0,"num":1,"den":1}]'], capsys)
    assert json.loads(out)["verdict"]["status"] == "valid"


def test_locus(capsys):
    code, out, _ = run(["locus", "--spec", "family-fn:2", "--against", "family-fn:5"], capsys)
    data = json.loads(out)
    assert data["locus"]["component_count"] == 3
    assert data["certificate"]["verdict"] == "nonisomorphic"


def test_locus_csv(capsys):
    code, out, _ = run(["locus", "--spec", "unit-interval", "--grid", "11", "--csv"], capsys)
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["x", "max_move", "trivial"] and len(rows) == 12
    assert [r[2] for r in rows[1:]] == ["1", "0", "0", "0", "0", "1", "1", "1", "1", "1", "1"]


def test_curves_golden(capsys):
    code, out, _ = run(["curves", "--epsilons", "0.5", "--samples", "3"], capsys)
    assert code == 0
    assert out == "x,epsilon,value\n0.0,0.5,0.0\n0.25,0.5,0.1767766952966369\n0.5,0.5,0.5\n"


def test_curves_values(capsys):
    code, out, _ = run(["curves", "--epsilons", "0.1,0.3,0.5", "--samples", "200"], capsys)
    rows = list(csv.DictReader(out.splitlines()))
    assert len(rows) == 600
    u = UnitInterval()
    for r in rows:
        assert float(r["value"]) == float(u.op(float(r["x"]), 0.5 + float(r["epsilon"])))


def test_outputs_byte_identical_across_processes(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        subprocess.run(
            [sys.executable, "-m", "qtop", "verify", "--spec", "ball:2", "--grid", "7", "--out", str(path)],
            check=False,
            env={"QTOP_THREADS": str(1 + 3 * k), "PATH": ""},
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]
