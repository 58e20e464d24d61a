"""Command line behavior: exit statuses, formats, golden reports."""

import json
import pathlib
import subprocess
import sys

import pytest

from stdres import cli

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


def run(*args):
    p = subprocess.run([sys.executable, "-m", "stdres", *args], capture_output=True, text=True,
                       cwd=ROOT)
    return p.returncode, p.stdout


def test_resolve_point_on_plane_passes():
    code, out = run("--format", "json", "--stable", "resolve", str(CORPUS / "p2_point.txt"))
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == cli.SCHEMA and doc["status"] == "PASS"
    assert doc["result"]["tower"]["length"] == 1


def test_certify_lemma2_on_point_quotient():
    code, out = run("--format", "json", "--stable", "certify", "lemma2", str(CORPUS / "pt_p2.txt"))
    assert code == 0
    v = json.loads(out)["result"]["certificate"]
    assert v["verdict"] == "PASS" and v["witnesses"]["hd"] == 2


def test_torsion_input_rejected():
    code, out = run("--format", "json", "--stable", "resolve", str(CORPUS / "pt_p2.txt"))
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "rejected"


def test_locfree_failure_exit_status():
    code, out = run("certify", "locfree", str(CORPUS / "p2_point.txt"))
    assert code == 1
    assert "status: FAIL" in out


def test_parse_error_exit_status(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("ring R = QQ[x,y] order grevlex;\nmodule I twists (0) relations { x + w; };\n")
    code, out = run("--format", "json", "resolve", str(bad))
    assert code == 2
    err = json.loads(out.split("\n}\n")[0] + "\n}")["error"]
    assert err["kind"] == "parse" and err["line"] == 2 and "w" in err["message"]


def test_missing_file_exit_status(tmp_path):
    code, _ = run("resolve", str(tmp_path / "none.txt"))
    assert code == 2


def test_internal_error_exit_status(monkeypatch):
    def boom(job, opts, clock):
        raise RuntimeError("boom")
    monkeypatch.setitem(cli.COMMANDS, "fitting", boom)
    opts = cli.build_parser().parse_args(["fitting", "x", "--index", "0"])
    status, stable, _ = cli.execute(opts, (CORPUS / "p2_point.txt").read_text())
    assert status == 3 and stable["error"]["type"] == "RuntimeError"


def test_hilbert_command():
    code, out = run("--format", "json", "--stable", "hilbert", str(CORPUS / "p2_point.txt"),
                    "--m", "2", "--nmax", "6")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["chi_L"]["verdict"]["verdict"] == "PASS"
    assert res["chi_E"]["verdict"]["witnesses"]["label"] == "informational"


def test_hilbert_degree_bound():
    code, _ = run("--degree-bound", "4", "hilbert", str(CORPUS / "p2_point.txt"),
                  "--m", "2", "--nmax", "6")
    assert code == 2


def test_fitting_command():
    code, out = run("--format", "json", "--stable", "fitting", str(CORPUS / "p2_point.txt"),
                    "--index", "1")
    assert code == 0
    assert json.loads(out)["result"]["generators"] == ["x", "y"]


def test_volatile_footer_is_separate():
    code, out = run("--format", "json", "resolve", str(CORPUS / "p2_point.txt"))
    stable_text, footer = out.split("\n}\n", 1)
    foot = json.loads(footer)
    assert "timings_seconds" in foot["volatile"]
    assert json.loads(stable_text + "\n}")["status"] == "PASS"


@pytest.mark.parametrize("name", ["p2_point", "p3_point"])
def test_golden_reports_stable_across_threads(name):
    golden = (GOLDEN / f"resolve_{name}.json").read_text()
    for threads in ("1", "3"):
        code, out = run("--format", "json", "--stable", "--threads", threads, "resolve",
                        str(CORPUS / f"{name}.txt"))
        assert code == 0
        assert out == golden
