import json
import math
import subprocess
import sys

import pytest

from homspace.cli import SUITES, default_grid, main, parse_args, parse_function
from homspace.grid import GridError, TestFunction


def _run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


@pytest.mark.parametrize("text,want", [
    ("gaussian", TestFunction.gaussian()), ("gaussian:2", TestFunction.gaussian(2.0)),
    ("bump:1.5", TestFunction.bump(1.5)), ("riesz:0.5", TestFunction.riesz(0.5)),
    ("mixed:0.25,0.75", TestFunction.mixed_riesz(0.25, 0.75)), ("delta", TestFunction.delta()),
    ("constant:3", TestFunction.constant(3.0)), ("series:4,8", TestFunction.wavelet_series(4, 8)),
])
def test_parse_function(text, want):
    assert parse_function(text) == want


@pytest.mark.parametrize("text", ["sinc", "riesz", "gaussian:1,2,3"])
def test_parse_function_rejects(text):
    with pytest.raises(GridError):
        parse_function(text)


def test_norm_gaussian_sup(tmp_path):
    code, rep = _run(["norm", "--func", "gaussian", "--n", "1", "--space", "B", "--p", "inf", "--q", "inf",
                      "--s", "-0.5", "--method", "heat"], tmp_path)
    assert code == 0
    assert rep["result"]["value"] == pytest.approx(0.5, rel=0.02)
    assert rep["config"]["p"] == "inf" and rep["config"]["seed"] == 7


def test_norm_constant_diverges(tmp_path):
    code, rep = _run(["norm", "--func", "constant", "--s", "-0.5", "--space", "B", "--p", "inf", "--q", "inf",
                      "--method", "heat"], tmp_path)
    assert code == 2 and rep["result"]["verdict"] == "diverging"


def test_norm_riesz_lpaley_diverges(tmp_path):
    code, rep = _run(["norm", "--func", "riesz:0.5", "--p", "4", "--q", "2", "--s", "-0.25", "--space", "B",
                      "--method", "lpaley"], tmp_path)
    assert code == 2
    assert rep["config"]["N"] == 1 << 16


def test_norm_truncation_and_plots(tmp_path):
    code, rep = _run(["norm", "--lmin", "-6", "--lmax", "6", "--plots", str(tmp_path / "plots")], tmp_path)
    assert code == 0 and rep["result"]["truncation"]["l_min"] >= -6
    rows = (tmp_path / "plots" / "terms.csv").read_text().splitlines()
    assert rows[0] == "l,term" and len(rows) > 6


def test_norm_wavelet_method(tmp_path):
    code, rep = _run(["norm", "--func", "bump", "--p", "2", "--q", "2", "--s", "-0.25", "--method", "wavelet"],
                     tmp_path)
    assert code == 0 and rep["result"]["value"] > 0


def test_errors_exit_one(tmp_path, capsys):
    assert main(["norm", "--func", "sinc"]) == 1
    assert main(["norm", "--space", "B", "--p", "2", "--q", "2", "--s", "0.5"]) == 1
    assert main(["verify", "nonsense"]) == 1
    assert "homspace: error" in capsys.readouterr().err


def test_default_grid():
    assert default_grid(TestFunction.riesz(0.5), 1, "lpaley") == (1 << 16, math.pi * 256)
    assert default_grid(TestFunction.riesz(0.5), 1, "heat") == (1024, 32.0)
    assert default_grid(TestFunction.gaussian(), 2, "heat") == (256, 16.0)


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 2.0, "q": 2.0, "s": -0.25, "func": "bump"}))
    args = parse_args(["norm", "--config", str(cfg), "--s", "-0.75"])
    assert (args.p, args.q, args.func, args.s) == (2.0, 2.0, "bump", -0.75)


def test_verify_riesz_deterministic(tmp_path):
    argv = ["verify", "riesz", "--sigma", "0.5", "--n", "1", "--p", "4"]
    code, rep = _run(argv, tmp_path, "a.json")
    assert code == 0
    assert [r["check"] for r in rep["reports"]] == ["riesz"]
    assert all(row["verdict"] == row["expected"] for row in rep["reports"][0]["observed"]["table"])
    first = (tmp_path / "a.json").read_bytes()
    _run(argv, tmp_path, "a.json")
    assert (tmp_path / "a.json").read_bytes() == first


def test_verify_kterm_with_plots(tmp_path):
    code, rep = _run(["verify", "kterm", "--p0", "1", "--p1", "2", "--r", "-0.5",
                      "--plots", str(tmp_path / "p")], tmp_path)
    assert code == 0
    assert rep["reports"][0]["observed"]["slope"] == pytest.approx(-0.5, abs=0.1)
    assert (tmp_path / "p" / "kterm_0.csv").read_text().startswith("k,worst_error")


def test_verify_delta_reports_failure(tmp_path):
    code, rep = _run(["verify", "delta"], tmp_path)
    assert code == 1
    assert rep["reports"][0]["observed"]["parts"]["sup_finite"]


def test_suite_names():
    for name in ("homogeneity", "heat-smoothing", "embeddings", "hardy", "algebra", "gn", "riesz",
                 "kterm", "noncompact"):
        assert name in SUITES


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.json"
    proc = subprocess.run([sys.executable, "-m", "homspace", "norm", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["result"]["verdict"] == "finite"
