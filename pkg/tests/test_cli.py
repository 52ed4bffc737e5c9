import json
import subprocess
import sys

import pytest

from hahnfield.cli import main, run

DETERMINISM_CASES = [
    ["example-wtoc", "--p", "2", "--depth", "8"],
    ["mu", "t^-1 + 1 + t^3"],
    ["quot-split", "--d", "1", "--c", "1 - t", "--k", "1", "--gamma", "3+"],
    ["tower-check", "--group", "Z^2lex", "--samples", "20", "--seed", "4"],
]


def _report(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_eval_and_schema():
    code, rep = _report(["eval", "t^-1 + 1 + t^3"])
    assert code == 0 and rep["status"] == "pass"
    assert rep["hahnfield_report"] == 1 and rep["command"] == "eval"
    out = rep["outputs"]["series"]
    assert out["literal"] == "t^-1 + 1 + t^3" and out["valuation"] == "-1"
    assert "runtime_s" not in rep


def test_lazy_series_report():
    code, rep = _report(["eval", "geom(1)", "--depth", "3"])
    assert code == 0
    out = rep["outputs"]["series"]
    assert out["truncated_at"] == 3
    assert [t["exp"] for t in out["terms"]] == ["0", "1", "2"]


def test_mu_truncate_split():
    assert _report(["mu", "t^-1 + 1 + t^3"])[1]["outputs"] == {"mu": "3+"}
    code, rep = _report(["truncate", "t^-1 + 1 + t^3", "--at", "0+"])
    assert rep["outputs"]["series"]["literal"] == "t^-1 + 1"
    code, rep = _report(["split", "t^-1 + 1 + t^3", "--at", "0+"])
    assert code == 0


@pytest.mark.parametrize("argv,expected", [
    (["cut", "left_sum", "2-", "3-"], "3+"),
    (["cut", "n_fold", "10-", "3-", "2", "minus"], "6-"),
    (["cut", "z_mul", "(0,1)+", "--group", "Z^2lex"], "sub((0,0),1)+"),
    (["cut", "cmp", "1+", "2-"], "EQ"),
])
def test_cut_ops(argv, expected):
    code, rep = _report(argv)
    assert code == 0 and rep["outputs"] == {"result": expected}


def test_failed_checks_exit_1(tmp_path):
    table = tmp_path / "bad.json"
    table.write_text(json.dumps({"entries": [{"a": "-1", "b": "1", "value": "2"}]}))
    code, rep = _report(["cocycle-check", "--factor-set", f"table:{table}", "--samples", "50"])
    assert code == 1 and rep["status"] == "fail"
    assert rep["outputs"]["axioms"]["4"]["witness"] == ["-1", "1"]
    code, rep = _report(["tower-check", "--samples", "30", "--corrupt", "1"])
    assert code == 1


def test_passing_checks():
    assert run(["cocycle-check", "--group", "(1/2)Z", "--factor-set", "derived:n=2,c=2", "--samples", "200"])[0] == 0
    assert run(["tower-check", "--group", "Z[1/2]^8", "--samples", "30"])[0] == 0
    assert run(["hensel", "--poly", "-1-t; 0; 1", "--root", "1"])[0] == 0
    assert run(["as-q"])[0] == 0


def test_errors_exit_2(capsys):
    code, rep = _report(["eval", "t^(1/3)"])
    assert code == 2 and rep["status"] == "error" and "ParseError" in rep["outputs"]["error"]
    assert "error:" in capsys.readouterr().err
    assert main(["no-such-command"]) == 2
    assert main(["eval", "1", "--group", "R"]) == 2


def test_out_file_and_timing(tmp_path):
    path = tmp_path / "r.json"
    code, text = run(["mu", "t", "--out", str(path), "--timing"])
    assert code == 0
    rep = json.loads(path.read_text())
    assert rep["outputs"] == {"mu": "1+"} and float(rep["runtime_s"]) >= 0


@pytest.mark.parametrize("argv", DETERMINISM_CASES, ids=lambda a: a[0])
def test_byte_identical_reruns(argv):
    assert run(argv)[1] == run(argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hahnfield", "cut", "left_sum", "2-", "3-"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["outputs"] == {"result": "3+"}
