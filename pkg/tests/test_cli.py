from __future__ import annotations

import io
import json
import subprocess
import sys

import jsonschema
import pytest

from sxl.cli import fmt, run
from sxl.verify import REPORT_SCHEMA


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def shell(*argv: str, stdin: str = "", env=None) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "sxl.cli", *argv], input=stdin, capture_output=True,
                          text=True, env=env)


def test_lambda_extremal():
    code, out, _ = call("lambda", "ext{k=2,m=9}")
    assert code == 0
    assert out.splitlines()[0] == "lambda: 3.372281323"
    assert "residual:" in out and "iterations:" in out


def test_lambda_spectrum_and_json():
    code, out, _ = call("lambda", "C4", "--spectrum")
    assert code == 0 and out.splitlines()[-1].startswith("spectrum: 2 ")
    code, out, _ = call("lambda", "K3", "--format", "json", "--spectrum")
    doc = json.loads(out)
    assert doc["lambda"] == pytest.approx(2.0) and len(doc["spectrum"]) == 3


def test_free_examples():
    assert call("free", "--forbid", "F3", "ext{k=3,m=33}")[1] == "free: true\n"
    code, out, _ = call("free", "--forbid", "C5", "--witness", "W6")
    assert code == 0 and out.startswith("free: false\nwitness: ")


def test_construct_then_lambda_pipeline():
    g6 = call("construct", "fixture:G2")[1].strip()
    direct = call("lambda", "fixture:G2")[1]
    piped = shell("lambda", "-", stdin=g6 + "\n")
    assert piped.returncode == 0 and piped.stdout == direct
    assert call("lambda", g6)[1] == direct


def test_enumerate_commands():
    code, out, _ = call("enumerate", "--m", "4")
    assert code == 0 and len(out.split()) == 5
    assert call("enumerate", "--m", "5", "--count-only")[1] == "12\n"
    assert call("enumerate", "--m", "3", "--all-graphs", "--count-only")[1] == "5\n"
    assert call("enumerate", "--m", "15")[0] == 1


def test_scan_json_and_csv():
    code, out, _ = call("scan", "--forbid", "V5", "--bound", "zls", "--m", "8..9", "--predict", "k=2",
                        "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["records"][1]["equality_achieved"] is True
    code, out, _ = call("scan", "--forbid", "V5", "--bound", "zls", "--m", "8..9", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("m,graph_count")
    code, out, _ = call("scan", "--forbid", "K3", "--bound", "nosal", "--m", "4")
    assert code == 0 and out.startswith("m=4 ")


def test_scan_json_identical_across_threads():
    argv = ("scan", "--forbid", "C4", "--bound", "nosal", "--m", "6..8", "--report-only", "--format", "json")
    one = shell(*argv, "--threads", "1")
    two = shell(*argv, "--threads", "2")
    assert one.returncode == two.returncode == 0
    assert one.stdout == two.stdout


def test_violation_exit_code():
    code, out, err = call("scan", "--forbid", "F2", "--bound", "zls", "--m", "6..6")
    assert code == 2
    assert out.strip() == "C~"  # K_4
    assert "violation" in err


def test_usage_errors_exit_one():
    assert call("lambda", "--bogus", "K3")[0] == 1
    assert call("lambda", "not a graph")[0] == 1
    assert call("scan", "--forbid", "V5", "--bound", "zls", "--m", "x..y")[0] == 1
    assert call("scan", "--forbid", "V5", "--bound", "zls", "--m", "8", "--predict", "q=2")[0] == 1
    assert call("check", "--lemma", "nope")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("lambda", "K3", "--threads", "0")[0] == 1


def test_threads_env_override(monkeypatch):
    monkeypatch.setenv("SXL_THREADS", "zero")
    assert call("enumerate", "--m", "3", "--count-only")[0] == 1
    monkeypatch.setenv("SXL_THREADS", "2")
    assert call("enumerate", "--m", "3", "--count-only", "--threads", "9") == (0, "3\n", "")


def test_audit_command():
    code, out, _ = call("audit", "fixture:G1")
    assert code == 0
    assert "kind=triangle" in out and "eta2=-3" in out
    doc = json.loads(call("audit", "K{2,4}", "--format", "json")[1])
    assert doc["residual"] <= 1e-10


def test_check_commands():
    code, out, _ = call("check", "--lemma", "eg", "--max", "6")
    assert code == 0 and "violations: 0" in out
    code, out, _ = call("check", "--lemma", "bn:2", "--max", "6", "--format", "json")
    assert code == 0 and json.loads(out)["violations"] == []
    code, out, _ = call("check", "--lemma", "rotation", "--trials", "30", "--seed", "4")
    assert code == 0
    code, out, _ = call("check", "--lemma", "rst", "--max", "30")
    assert code == 2 and out.strip().splitlines()[-1] == "D~_"  # R_{1,1}


def test_graph6_stdin_stream():
    res = shell("free", "--forbid", "K3", "-", stdin="Bw\nCF\n")
    assert res.returncode == 0 and res.stdout == "free: false\nfree: true\n"


def test_number_format():
    assert fmt(2 / 3) == "0.6666666667"
    assert fmt(3.0) == "3"
    assert fmt(1e-15) == "1e-15"
