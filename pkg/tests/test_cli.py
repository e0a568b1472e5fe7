from __future__ import annotations

import json
import subprocess
import sys

import pytest

from elliptic_yau.cli import main


def run(capsys, *args):
    rc = main(list(args))
    out, err = capsys.readouterr()
    return rc, out, err


def test_algebra_symbolic(capsys):
    rc, out, _ = run(capsys, "algebra", "--family", "E6", "--k", "1")
    assert rc == 0
    rep = json.loads(out)
    assert rep["algebra"]["dim"] == 11 and rep["yau"]["dim"] == 22
    assert rep["yau"]["jacobi"]


def test_algebra_jump_point(capsys):
    rc, out, _ = run(capsys, "algebra", "--family", "E7", "--k", "0", "--t", "6")
    assert rc == 0
    rep = json.loads(out)
    assert rep["yau"]["dim"] == 12
    assert any("jump point" in n for n in rep["notes"])


def test_algebra_infinite_k(capsys):
    rc, out, _ = run(capsys, "algebra", "--family", "E8", "--k", "inf", "--t", "1")
    rep = json.loads(out)
    assert rc == 0 and rep["yau"] is None
    # degrees above the bound 6 are dropped
    assert rep["algebra"]["truncation_degree"] == 7
    assert "no Yau algebra" in rep["notes"][0]


@pytest.mark.parametrize("args", [
    ("algebra", "--family", "E7", "--t", "2"),
    ("algebra", "--k", "-1"),
    ("algebra", "--family", "E9"),
    ("verify", "Z9"),
    ("verify", "A1", "--samples", "0"),
    ("stabilizer", "--family", "E6"),
])
def test_usage_errors(capsys, args):
    rc, _, _ = run(capsys, *args)
    assert rc == 2


def test_verify_pass_and_fail(capsys):
    rc, out, _ = run(capsys, "verify", "B3", "--samples", "2")
    assert rc == 0 and json.loads(out)["report"]["ok"]
    rc, out, _ = run(capsys, "verify", "C2", "--samples", "2")
    assert rc == 1 and not json.loads(out)["report"]["ok"]


def test_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "C1", "--seed", "3", "--samples", "3")
    _, b, _ = run(capsys, "verify", "C1", "--seed", "3", "--samples", "3")
    assert a == b
    assert json.loads(a)["config"]["seed"] == 3


def test_text_format_and_out_file(capsys, tmp_path):
    dest = tmp_path / "r.txt"
    rc, out, _ = run(capsys, "verify", "B1", "--format", "text", "--out", str(dest), "--samples", "2")
    assert rc == 0 and out == ""
    text = dest.read_text()
    assert text.splitlines()[-1] == "PASS"
    assert "[PASS]" in text


def test_stabilizer(capsys):
    rc, out, _ = run(capsys, "stabilizer", "--family", "E6", "--t", "1")
    rep = json.loads(out)
    assert rc == 0 and rep["count"] == 18 and rep["in_G"] == 18


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "elliptic_yau", "algebra", "--family", "E8", "--k", "0",
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "dim A =" in proc.stdout
