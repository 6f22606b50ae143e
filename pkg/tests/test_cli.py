import io
import json
import subprocess
import sys

import pytest

from pellrep.cli import CliConfig, build_parser, run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    if env is not None:
        ns = build_parser().parse_args(list(argv))
        return CliConfig.from_args(ns, env)
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_search_pell_lucas():
    code, out, _ = call("search", "--seq", "pell-lucas", "--kmin", "0", "--kmax", "149")
    assert code == 0
    assert "478 = 555 - 77" in out
    assert out.strip().splitlines()[-1] == "value_set={2, 6, 14, 34, 82, 478}"


def test_search_pell():
    code, out, _ = call("--threads", "1", "search", "--seq", "pell", "--kmin", "1", "--kmax", "149")
    assert code == 0 and "value_set={2, 5, 12, 29, 70}" in out
    assert "70 = 77 - 7" in out


def test_matveev():
    code, out, _ = call("matveev", "--t", "1", "--D", "1", "--B", "3", "--A", "0.16")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "380773"
    assert lines[1].startswith("c=3.807722") and "±" in lines[1]


def test_matveev_flags_small_B():
    code, out, _ = call("matveev", "--t", "1", "--D", "1", "--B", "2", "--A", "0.16")
    assert code == 0 and "note:" in out


def test_reduce():
    code, out, _ = call("reduce", "--tau", "sqrt2", "--mu", "sqrt3-minus-1", "--M", "1000", "--A", "1", "--B", "2")
    assert code == 0
    assert out.startswith("q_used=13860 index=11 eps=") and out.strip().endswith("w_bound=16")


def test_reduce_accepts_integral_decimal_M():
    code, out, _ = call("reduce", "--tau", "pell-gamma", "--mu", "pell-mu1-a3", "--M", "1.25e29", "--A", "4.7", "--B", "10")
    assert code == 0 and "w_bound=" in out


def test_cf():
    code, out, _ = call("cf", "--const", "pell-gamma", "--terms", "5")
    assert code == 0
    assert out.splitlines()[:3] == ["0 0 0 1", "1 2 1 2", "2 1 1 3"]
    code, out, _ = call("cf", "--const", "2.5", "--terms", "5")
    assert out.splitlines() == ["0 2 2 1", "1 2 5 2"]


def test_prove_writes_certificate(tmp_path):
    path = tmp_path / "pell.json"
    code, out, _ = call("--output", str(path), "--threads", "1", "prove", "pell")
    assert code == 0 and "status=PROVED" in out and "value_set={2, 5, 12, 29, 70}" in out
    doc = json.loads(path.read_text())
    assert doc["theorem"] == "pell"
    code, out, _ = call("--threads", "1", "verify", "--cert", str(path))
    assert code == 0 and out.strip() == "verified"
    doc["steps"][-2]["outputs"]["k_bound"] = 10**6
    path.write_text(json.dumps(doc))
    code, out, _ = call("--threads", "1", "verify", "--cert", str(path))
    assert code == 1 and out.startswith("REJECTED")


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["search", "--seq", "fib", "--kmin", "0", "--kmax", "3"],
        ["search", "--seq", "pell", "--kmin", "9", "--kmax", "3"],
        ["search", "--seq", "pell", "--kmin", "0", "--kmax", "5000"],
        ["matveev", "--t", "1", "--D", "1", "--B", "3", "--A", "zero"],
        ["matveev", "--t", "2", "--D", "1", "--B", "3", "--A", "1"],
        ["reduce", "--tau", "sqrt2", "--mu", "0", "--M", "10", "--A", "1", "--B", "2"],
        ["reduce", "--tau", "nope", "--mu", "sqrt3", "--M", "10", "--A", "1", "--B", "2"],
        ["reduce", "--tau", "sqrt2", "--mu", "sqrt3", "--M", "1.5", "--A", "1", "--B", "2"],
        ["--precision-floor", "512", "--precision-cap", "256", "cf", "--const", "sqrt2", "--terms", "3"],
        ["verify", "--cert", "/nonexistent/file.json"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_precision_exhaustion_exit_1():
    code, _, err = call("--precision-floor", "64", "--precision-cap", "64", "cf", "--const", "pell-gamma", "--terms", "200")
    assert code == 1 and "precision exhausted" in err


def test_malformed_certificate_exit_1(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"theorem": "pell"}')
    code, _, err = call("verify", "--cert", str(p))
    assert code == 1 and "failed" in err


def test_env_overrides():
    cfg = call("cf", "--const", "sqrt2", "--terms", "3", env={"PELLREP_PRECISION_FLOOR": "128", "PELLREP_PRECISION_CAP": "1024"})
    assert (cfg.precision_floor, cfg.precision_cap) == (128, 1024)
    cfg = call("--precision-floor", "512", "cf", "--const", "sqrt2", "--terms", "3", env={"PELLREP_PRECISION_FLOOR": "128"})
    assert cfg.precision_floor == 512


@pytest.mark.parametrize("sub", ["prove", "search", "reduce", "cf", "matveev", "verify"])
def test_help(sub, capsys):
    assert run([sub, "--help"]) == 0
    assert "usage:" in capsys.readouterr().out


def test_deterministic_stdout():
    argv = ["reduce", "--tau", "pell-gamma-inv", "--mu", "pell-mu2-a7-a7-w1", "--M", "1000000", "--A", "4.8", "--B", "10"]
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "pellrep", "matveev", "--t", "1", "--D", "1", "--B", "3", "--A", "0.16"],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "380773"
