import json
import subprocess
import sys

import pytest

from asmdpp.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, RunConfig, UsageError, main
from asmdpp.suite import BudgetExceeded


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------- counts

def test_counts_text(capsys):
    code, out, _ = run(capsys, "counts", "--n", "3")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert "|ASM_3| = 7" in lines
    assert "|ASM_3,i| = (2,3,2)" in lines
    assert "|DPP_3| = 7" in lines
    assert "|B_3| = 21" in lines
    assert "|B_3,i| = (6,9,6)" in lines
    assert all("FAIL" not in line for line in lines)


def test_counts_json(capsys):
    code, out, _ = run(capsys, "counts", "--n", "4", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["asm"] == 42 and doc["asm_i"] == [7, 14, 14, 7]
    assert doc["dpp_i"] == doc["asm_i"]
    assert doc["ok"] is True


# ---------------------------------------------------------------- tables

@pytest.mark.parametrize("problem,n,i,lines", [("main", 3, 2, 36), ("asmdpp", 4, 2, 98), ("asmdpp", 1, 1, 1),
                                               ("main", 2, 2, 1 * 2 * 1)])
def test_table_line_counts(capsys, problem, n, i, lines):
    code, out, _ = run(capsys, "table", problem, "--n", str(n), "--i", str(i))
    assert code == EXIT_OK
    assert len(out.splitlines()) == lines


def test_table_json_lines(capsys):
    code, out, _ = run(capsys, "table", "asmdpp", "--n", "3", "--i", "2", "--format", "json")
    assert code == EXIT_OK
    docs = [json.loads(line) for line in out.splitlines()]
    assert len(docs) == 6
    assert all(set(d) == {"left", "right"} for d in docs)


def test_table_is_deterministic(capsys):
    _, a, _ = run(capsys, "table", "main", "--n", "3", "--i", "3", "--x", "1")
    _, b, _ = run(capsys, "table", "main", "--n", "3", "--i", "3", "--x", "1")
    assert a == b


def test_out_file(capsys, tmp_path):
    target = tmp_path / "table.txt"
    code, out, _ = run(capsys, "table", "asmdpp", "--n", "3", "--i", "2", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert len(target.read_text(encoding="utf-8").splitlines()) == 6


# ---------------------------------------------------------------- verify

@pytest.mark.parametrize("target", ["alpha", "chu_vandermonde", "b_recurrence", "det_product", "cramer"])
def test_verify_grid_targets(capsys, target):
    code, out, _ = run(capsys, "verify", target)
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "all passed"


@pytest.mark.parametrize("argv", [("verify", "main", "--n", "3", "--i", "2"),
                                  ("verify", "asmdpp", "--n", "3", "--i", "3"),
                                  ("verify", "asm_recurrence", "--n", "3", "--i", "2"),
                                  ("verify", "from_det", "--n", "3"),
                                  ("verify", "lgv", "--n", "4")])
def test_verify_constructions(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK, out


def test_verify_corrupted_fails_with_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "corrupted")
    assert code == EXIT_FAIL
    assert "counterexample" in out and "not an involution" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "corrupted", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_FAIL and doc["ok"] is False
    assert doc["results"][0]["counterexample"]["kind"] == "not an involution"


# ---------------------------------------------------------------- errors and exit codes

@pytest.mark.parametrize("argv", [
    ("counts", "--n", "0"),
    ("table", "main", "--n", "3", "--i", "4"),
    ("table", "nope"),
    ("verify", "nope"),
    ("verify", "lgv", "--n", "1"),
    ("counts", "--format", "xml"),
    ("frobnicate",),
    ("table", "main", "--impl", "parti"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


@pytest.mark.parametrize("budget", ["0", "-5"])
def test_non_positive_budget_is_usage_error(capsys, budget):
    code, _, err = run(capsys, "verify", "alpha", "--budget-sec", budget)
    assert code == EXIT_USAGE
    assert "budget error" in err


def test_budget_exhausted_mid_run(capsys):
    code, _, err = run(capsys, "verify", "rotate_mt", "--budget-sec", "0.001")
    assert code == EXIT_FAIL
    assert "budget error" in err


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("counts", n=3, i=5)
    with pytest.raises(BudgetExceeded):
        RunConfig("counts", budget=0)
    assert RunConfig("counts").n == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "asmdpp.cli", "counts", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "|ASM_2| = 2" in proc.stdout
