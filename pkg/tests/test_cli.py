import csv
import io
import json
import subprocess
import sys

import pytest

from setfourier.cli import ExperimentSpec, main, parse_set
from setfourier.errors import ValidationError

F10 = ",".join(["2"] * 10)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_z12_seed7(capsys):
    code, out, _ = run_cli(capsys, "--group", "12", "--cmd", "verify", "--seed", "7")
    doc = json.loads(out)
    assert code == 0
    assert doc["results"] and all(r["verdict"] == "holds" for r in doc["results"])


def test_theorem_main_on_subgroup(capsys):
    code, out, _ = run_cli(capsys, "--group", F10, "--set", "subgroup:dim=8", "--cmd", "theorem", "--laws", "main,cor")
    doc = json.loads(out)
    assert code == 0
    main_rep = doc["results"][0]
    assert main_rep["law"] == "theorem_main" and main_rep["verdict"] == "holds"
    assert main_rep["lhs"] == 2**24
    assert [r["law"] for r in doc["results"]] == ["theorem_main", "theorem_main_difference", "theorem_cor"]


def test_compute_quadratic_residues(capsys):
    code, out, _ = run_cli(capsys, "--group", "101", "--set", "quadratic_residues:p=101", "--cmd", "compute")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["size"] == 50


def test_construct_and_search(capsys):
    code, out, _ = run_cli(capsys, "--group", "2,2,2,2,2,2", "--set", "h_plus_lambda:dim=3,lam=3", "--cmd", "construct")
    doc = json.loads(out)
    assert code == 0 and len(doc["results"][0]["elements"]) == 24
    code, out, _ = run_cli(capsys, "--group", "2,2,2,2,2,2", "--cmd", "search", "--target-size", "8",
                           "--iterations", "50", "--seed", "3")
    trace = json.loads(out)["results"][0]["trace"]
    assert code == 0 and len(trace) == 51 and trace == sorted(trace)


def test_all_theorem_laws(capsys):
    code, out, _ = run_cli(capsys, "--group", "2,2,2,2,2,2,2,2", "--set", "subgroup:e1,e2,e3,e4,e5",
                           "--cmd", "theorem", "--laws", "main,cor,l,k,energy,remark2,remark1", "--p", "101")
    laws = [r["law"] for r in json.loads(out)["results"]]
    assert laws == ["theorem_main", "theorem_main_difference", "theorem_cor", "theorem_l", "theorem_k+",
                    "theorem_k-", "theorem_energy", "remark_energy", "remark_counterexample"]
    assert code == 0


def test_csv_and_json_agree(capsys):
    args = ["--group", "5", "--set", "explicit:0,1", "--cmd", "theorem", "--laws", "cor,remark2"]
    _, js, _ = run_cli(capsys, *args)
    _, cs, _ = run_cli(capsys, *args, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(cs)))
    results = json.loads(js)["results"]
    assert len(rows) == len(results)
    for row, res in zip(rows, results):
        for key in ("law", "lhs", "rhs", "ratio", "verdict"):
            value = res[key]
            assert row[key] == (value if isinstance(value, str) else json.dumps(value))


def test_floats_have_twelve_significant_digits(capsys):
    _, out, _ = run_cli(capsys, "--group", "5", "--set", "explicit:0,1", "--cmd", "compute")
    M = json.loads(out)["results"][0]["M"]
    assert M == 1.61803398875


def test_usage_errors_exit_2(capsys, tmp_path):
    assert main(["--group", "5", "--set", "nope:1", "--cmd", "compute"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": [5], "command": "explode"}))
    assert main(["--spec", str(bad)]) == 2
    bad.write_text("{not json")
    assert main(["--spec", str(bad)]) == 2
    with pytest.raises(SystemExit) as info:
        main(["--cmd", "nothing"])
    assert info.value.code == 2
    assert main(["--group", "5", "--cmd", "compute"]) == 2
    capsys.readouterr()


def test_resource_errors_exit_3(capsys):
    assert main(["--group", "4096", "--max-n", "1000", "--set", "explicit:1", "--cmd", "compute"]) == 3
    assert main(["--group", "64", "--set", "random:q=0.5", "--cmd", "theorem", "--laws", "l", "--l", "5",
                 "--max-combinations", "3"]) == 3
    assert "resource" in capsys.readouterr().err


def test_failed_law_exits_1(capsys, monkeypatch):
    from setfourier import laws

    real = laws.eval_theorem_cor

    def broken(A):
        rep = real(A)
        rep.verdict = laws.FAILS
        return rep

    monkeypatch.setattr(laws, "eval_theorem_cor", broken)
    code, _, _ = run_cli(capsys, "--group", "8", "--set", "explicit:0,1", "--cmd", "theorem", "--laws", "cor")
    assert code == 1


def test_spec_file_batch_order(capsys, tmp_path):
    docs = [
        {"group": [7], "command": "compute", "set_a": {"kind": "quadratic_residues"}},
        {"group": [5], "command": "compute", "set_a": {"kind": "explicit", "params": {"elements": [0, 1]}}},
    ]
    path = tmp_path / "batch.json"
    path.write_text(json.dumps(docs))
    code, out, _ = run_cli(capsys, "--spec", str(path), "--jobs", "2")
    results = json.loads(out)["results"]
    assert code == 0 and [r["experiment"] for r in results] == [0, 1]
    assert [r["N"] for r in results] == [7, 5]
    code, out2, _ = run_cli(capsys, "--spec", str(path))
    assert out2 == out


def test_experiment_spec_roundtrip():
    spec = ExperimentSpec.from_dict({"group": [2, 2], "command": "verify", "params": {"seed": 1}})
    assert ExperimentSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(ValidationError):
        ExperimentSpec.from_dict({"group": [2], "command": "verify", "extra": 1})


def test_parse_set():
    s = parse_set("subgroup:e1,e2", seed=4)
    assert s.kind == "subgroup" and s.params == {"generators": ["e1", "e2"]} and s.seed == 4
    s = parse_set("random:q=0.25,seed=9")
    assert s.params == {"q": 0.25} and s.seed == 9
    assert parse_set("explicit:0,3,1.1").params == {"elements": [0, 3, "1.1"]}


def test_dotted_elements_in_flags(capsys):
    code, out, _ = run_cli(capsys, "--group", "2,2,2", "--set", "explicit:1.0.1,0.1.1", "--cmd", "construct")
    assert code == 0 and json.loads(out)["results"][0]["elements"] == [3, 5]


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "setfourier", "--group", "2,2,2,2,2,2", "--set", "random:q=0.5",
           "--cmd", "theorem", "--laws", "main,cor,energy", "--seed", "11"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
