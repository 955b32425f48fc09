import json
import subprocess
import sys

import numpy as np
import pytest

from fdisc.bounds import dipole_discrepancy
from fdisc.cli import main


def write(path, values):
    path.write_text("\n".join(str(v) for v in values) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def diracs(tmp_path):
    return write(tmp_path / "d0.txt", [1, 0, 0, 0]), write(tmp_path / "d2.txt", [0, 0, 1, 0])


def test_compare(diracs, capsys):
    assert main(["compare", *diracs]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report == {"fourier": pytest.approx(2.0), "tv": 1.0, "kl": "inf", "w1": 0.5}


def test_compare_identical(diracs, capsys):
    assert main(["compare", diracs[0], diracs[0]]) == 0
    assert json.loads(capsys.readouterr().out) == {"fourier": 0.0, "tv": 0.0, "kl": 0.0, "w1": 0.0}


def test_compare_errors(tmp_path, diracs, capsys):
    six = write(tmp_path / "six.txt", [1, 0, 0, 0, 0, 0])
    assert main(["compare", diracs[0], six]) == 2
    assert "size mismatch" in capsys.readouterr().err
    assert main(["compare", diracs[0], str(tmp_path / "missing.txt")]) == 3
    garbage = tmp_path / "garbage.txt"
    garbage.write_text("0.5\nabc\n0.5\n0\n")
    assert main(["compare", diracs[0], str(garbage)]) == 2
    assert "line 2" in capsys.readouterr().err
    neg = write(tmp_path / "neg.txt", [0.5, 0.7, -0.2, 0])
    assert main(["compare", diracs[0], neg]) == 2
    assert "line 3" in capsys.readouterr().err


def test_delta_curve(tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["delta-curve", "--n", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "d,fourier,tv,w1" and len(lines) == 5
    assert lines[1] == "0,0,0,0"
    assert float(lines[3].split(",")[1]) == pytest.approx(2.0)
    assert main(["delta-curve", "--n", "4", "--scaled", "--out", str(out)]) == 0
    table = np.loadtxt(out, delimiter=",", skiprows=1)
    np.testing.assert_allclose(table[:, 1:].max(axis=0), 1.0)
    assert main(["delta-curve", "--n", "5"]) == 2


def test_bounds(capsys):
    assert main(["bounds", "--n", "4", "--theta", "1"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["c_lower"] == 0.5 and rep["c_upper"] == pytest.approx(2.0) and rep["d_star"] == 2
    assert main(["bounds", "--n", "4", "--theta", "0.5"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["c_lower"] == 0.25 and rep["c_upper"] == pytest.approx(1.0)
    assert main(["bounds", "--n", "4", "--theta", "1.5"]) == 2


def test_conjecture(tmp_path):
    out = tmp_path / "conj.csv"
    assert main(["conjecture", "--n-max", "64", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 32
    assert all(line.endswith(",true") for line in lines[1:])
    assert main(["conjecture", "--n-max", "3"]) == 2


def test_decompose(tmp_path, capsys):
    path = write(tmp_path / "delta.txt", [0.5, 0.3, -0.2, -0.6])
    assert main(["decompose", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["terms"]) == 3
    assert sum(t["lambda"] for t in payload["terms"]) == pytest.approx(1.0, abs=1e-12)
    bad = write(tmp_path / "bad.txt", [1, 0, 0, 0])
    assert main(["decompose", bad]) == 2


def test_fit(tmp_path, capsys):
    target = write(tmp_path / "t.txt", [0, 0, 1, 0])
    trace = tmp_path / "trace.csv"
    assert main(["fit", target, "--n", "4", "--trace", str(trace)]) == 0
    out = capsys.readouterr().out
    final = float(out.split("final_loss=")[1].split()[0])
    assert final <= 1e-6
    assert trace.read_text().startswith("step,loss\n0,")
    assert main(["fit", target, "--n", "6"]) == 2
    assert main(["fit", target, "--step-size", "-1"]) == 2


def test_noise_demo(tmp_path):
    out = tmp_path / "mle.csv"
    args = ["noise-demo", "--n", "16", "--sigma", "0.1", "--samples", "20", "--seed", "5", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert first.startswith(b"theta,neg_loglik,fourier_loss\n")
    assert len(first.splitlines()) == 102
    assert main(args) == 0
    assert out.read_bytes() == first


def test_module_entry_point(tmp_path):
    out = tmp_path / "curve.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "fdisc", "delta-curve", "--n", "8", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    table = np.loadtxt(out, delimiter=",", skiprows=1)
    np.testing.assert_allclose(table[1:, 1], [dipole_discrepancy(d, 8) for d in range(1, 8)], rtol=1e-12)


def test_usage_errors_exit_2():
    assert main([]) == 2
    assert main(["bounds", "--n", "four", "--theta", "1"]) == 2
