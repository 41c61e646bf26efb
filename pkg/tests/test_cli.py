"""Black-box tests: run the installed module as a subprocess."""
import json
import subprocess
import sys
from pathlib import Path

import pytest

from quadjordan.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "quadjordan", *args],
                          capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.mark.parametrize("spec, value", [("A5", 60), ("wreath2(S4)", 72), ("prod(A4,Cyc(3))", 3),
                                         ("Dih(10)", 2), ("Klein", 1)])
def test_jordan(spec, value):
    code, out, _ = run("--format", "json", "jordan", spec)
    assert code == 0
    assert json.loads(out)["jordan_constant"] == value


def test_jordan_text_output():
    code, out, _ = run("jordan", "A5")
    assert code == 0 and out.startswith("J(A5) = 60")


@pytest.mark.parametrize("spec", ["Foo", "prod(A4", "Cyc(x)", "wreath2(A4, A4)"])
def test_jordan_parse_errors_exit_2(spec):
    assert run("jordan", spec)[0] == 2


@pytest.mark.parametrize("args", [("jordan", "S9"), ("jordan", "wreath2(A5)", "--max-order", "500"),
                                  ("jordan", "S5", "--max-lattice-steps", "2")])
def test_budget_exit_3(args):
    assert run(*args)[0] == 3


def test_classify():
    code, out, _ = run("--format", "json", "classify", "Q")
    assert code == 0
    res = json.loads(out)["results"]
    assert (res["M"]["value"], res["aut_p1xp1"]["value"], res["pgl2"]["value"]) == (8, 8, 2)
    code, out, _ = run("classify", "R")
    assert code == 0 and "M(K) = 60" in out


def test_classify_certify():
    code, out, _ = run("--format", "json", "classify", "Q(sqrt-7)", "--certify")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["M"]["value"] == 120 and res["M"]["certified"] and res["M"]["measured"] == 120
    assert res["pgl2"]["missing"] == ["m1_two_squares_K"]


def test_classify_exit_codes(tmp_path):
    undecided = tmp_path / "u.json"
    undecided.write_text(json.dumps({"name": "u", "has_sqrt5": "no"}))
    code, _, err = run("classify", str(undecided))
    assert code == 4 and "m1_two_squares_K_sqrt5" in err
    bad = tmp_path / "b.json"
    bad.write_text(json.dumps({"name": "b", "has_sqrt5": "yes", "m1_two_squares_K": "yes",
                               "m1_two_squares_K_sqrt5": "no"}))
    assert run("classify", str(bad))[0] == 2
    assert run("classify", "not-a-field")[0] == 2


def test_splits():
    code, out, _ = run("splits", "5", "--deg", "5")
    assert code == 0 and out.strip().endswith(": splits")
    code, out, _ = run("splits", "3,1,1", "--deg", "5")
    assert code == 0 and "does not split" in out
    assert run("splits", "2", "--deg", "4")[0] == 4
    assert run("splits", "3,x")[0] == 2
    assert run("splits", "7", "--deg", "5")[0] == 2


def test_trace_invariant():
    code, out, _ = run("trace-invariant", "[[0,1],[-1,0]]", "--tower", "5")
    assert code == 0 and out.strip() == "0"
    c = "[[sqrt(5)-3, -sqrt(5)+1+2*sqrt(-1)], [sqrt(5)-1+2*sqrt(-1), sqrt(5)-3]]"
    code, out, _ = run("trace-invariant", c, "--tower=-1,5")
    assert code == 0 and out.strip() == "3/2 - 1/2*sqrt(5)"
    assert run("trace-invariant", "[[1,2],[2,4]]")[0] == 2
    assert run("trace-invariant", "[[1,0],[0,1]]", "--tower", "4")[0] == 2


def test_perm():
    code, out, _ = run("--format", "json", "perm", "(1 2 3)(4 5)", "--deg", "6")
    data = json.loads(out)
    assert code == 0 and data["parity"] == "odd" and data["order"] == 6
    assert data["cycle_type"] == [3, 2, 1]
    assert run("perm", "(1 1)")[0] == 2


def test_verify_paper_fast_is_deterministic():
    first = run("--format", "json", "verify-paper", "fast")
    second = run("--format", "json", "verify-paper", "fast")
    assert first[0] == 0 and first[1] == second[1]
    report = json.loads(first[1])
    assert report["failed"] == 0
    assert all(e["tag"] in ("PAPER", "DERIVED", "TRIVIAL") for e in report["entries"])
    assert not any(e["claim"] == "wreath/J(wreath2(A5))" for e in report["entries"])


def test_verify_paper_tampered_fixture(tmp_path):
    import quadjordan
    src = Path(quadjordan.__file__).parent / "data" / "witnesses.json"
    data = json.loads(src.read_text())
    entry = data["a5_witnesses"]["Q(sqrt-7)"]
    data["a5_witnesses"]["Q(sqrt-7)"] = {"tower": entry["tower"], "r_level": 1, "sqrt5": "sqrt(5)",
                                         "x": "1", "y": "6/(-1 + sqrt(-7)*sqrt(5))"}
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(data))
    code, out, _ = run("--format", "json", "verify-paper", "fast", "--fixture", str(path))
    assert code == 1
    failed = [e["claim"] for e in json.loads(out)["entries"] if e["status"] == "fail"]
    assert failed == ["witness/Q(sqrt-7)"]


def test_main_in_process(capsys):
    assert main(["splits", "5,3,1"]) == 0
    assert "splits" in capsys.readouterr().out
