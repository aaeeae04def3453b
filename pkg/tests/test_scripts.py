import runpy
import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run_script(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=False)


def test_count_table():
    proc = run_script("count_table.py", "--max-n", "3", "--formula-n", "5")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 5
    assert "429" in lines[-1]
    assert all(line.endswith("ok") for line in lines[:3])


def test_run_verify_grid_subset():
    proc = run_script("run_verify_grid.py", "alpha", "b_recurrence")
    assert proc.returncode == 0
    assert [line.split()[:2] for line in proc.stdout.splitlines()] == [["PASS", "alpha"], ["PASS", "b_recurrence"]]


def test_run_verify_grid_rejects_unknown_family():
    mod = runpy.run_path(str(SCRIPTS / "run_verify_grid.py"))
    with pytest.raises(ValueError):
        mod["GridConfig"](only=["nope"])


def test_emit_tables(tmp_path):
    proc = run_script("emit_tables.py", str(tmp_path), "--case", "asmdpp,3,2,0", "--format", "json")
    assert proc.returncode == 0
    out = tmp_path / "asmdpp_n3_i2_x0.jsonl"
    assert len(out.read_text(encoding="utf-8").splitlines()) == 6
