import json
import math
import subprocess
import sys

import numpy as np
import pytest

from affine_frft import frft_direct, make_params
from affine_frft.cli import main, parse_angle
from affine_frft.signal_io import read_signal, write_signal
import affine_frft.verify

from conftest import crandn


@pytest.mark.parametrize("text, value", [
    ("0.7", 0.7),
    ("pi/2", math.pi / 2),
    ("PI", math.pi),
    ("2pi", 2 * math.pi),
    ("2*pi", 2 * math.pi),
    ("-pi/4", -math.pi / 4),
    ("3*pi/4", 3 * math.pi / 4),
    ("1.5707963267948966", math.pi / 2),
])
def test_parse_angle(text, value):
    assert parse_angle(text) == value


@pytest.mark.parametrize("text", ["tau", "pi/", "inf", "1/2"])
def test_parse_angle_rejects(text):
    with pytest.raises(Exception):
        parse_angle(text)


def test_transform_quarter_turn_impulse(tmp_path):
    src, dst = tmp_path / "x.csv", tmp_path / "X.csv"
    write_signal(src, [1, 0, 0, 0])
    assert main(["transform", "--alpha", "1.5707963267948966", "--method", "fast",
                 "--input", str(src), "--output", str(dst)]) == 0
    np.testing.assert_allclose(read_signal(dst), np.full(4, 0.5), atol=1e-16)


def test_transform_round_trip(tmp_path, rng):
    x = crandn(rng, 24)
    src, mid, back = tmp_path / "x.json", tmp_path / "X.json", tmp_path / "y.csv"
    write_signal(src, x)
    assert main(["transform", "--alpha", "0.7", "--method", "direct",
                 "--input", str(src), "--output", str(mid)]) == 0
    np.testing.assert_allclose(read_signal(mid), frft_direct(make_params(0.7, 24), x), atol=1e-12)
    assert json.loads(mid.read_text())["alpha"] == 0.7
    # alpha taken from the annotation in the JSON file
    assert main(["transform", "--inverse", "--input", str(mid), "--output", str(back)]) == 0
    assert np.max(np.abs(read_signal(back) - x)) <= 1e-10


def test_transform_reversal(tmp_path):
    src, dst = tmp_path / "x.csv", tmp_path / "X.csv"
    write_signal(src, [1, 2, 3, 4])
    assert main(["transform", "--alpha", "3.141592653589793",
                 "--input", str(src), "--output", str(dst)]) == 0
    np.testing.assert_array_equal(read_signal(dst), [1, 4, 3, 2])


def test_transform_needs_alpha(tmp_path, capsys):
    src = tmp_path / "x.csv"
    write_signal(src, [1, 2])
    assert main(["transform", "--input", str(src), "--output", str(tmp_path / "o.csv")]) == 1
    assert "--alpha" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["transform"], ["bogus"], ["verify", "--n", "x"]])
def test_usage_errors_exit_1(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("nope\n")
    out = str(tmp_path / "o.csv")
    assert main(["transform", "--alpha", "0.7", "--input", str(bad), "--output", out]) == 2
    two, three = tmp_path / "two.csv", tmp_path / "three.csv"
    write_signal(two, [1, 2])
    write_signal(three, [1, 2, 3])
    assert main(["convolve", "--alpha", "0.7", "--h", str(two), "--x", str(three),
                 "--output", out]) == 3
    assert main(["convolve", "--alpha", "pi", "--h", str(two), "--x", str(two),
                 "--output", out]) == 4
    assert main(["transform", "--alpha", "0.7", "--input", str(tmp_path / "missing.csv"),
                 "--output", out]) == 7
    assert main(["matrix", "--alpha", "0.7", "--n", "0", "--output", out]) == 1


def test_convolve_identity_element(tmp_path, rng):
    x = crandn(rng, 8)
    d = np.zeros(8)
    d[0] = 1
    hp, xp, out = tmp_path / "h.csv", tmp_path / "x.csv", tmp_path / "y.csv"
    write_signal(hp, d)
    write_signal(xp, x)
    assert main(["convolve", "--alpha", "0.7", "--h", str(hp), "--x", str(xp),
                 "--output", str(out)]) == 0
    kappa = make_params(0.7, 8).kappa
    assert np.max(np.abs(read_signal(out) - kappa * x)) <= 1e-14


@pytest.mark.parametrize("domain", ["time", "spectral"])
def test_convolve_check(tmp_path, rng, capsys, domain):
    hp, xp, out = tmp_path / "h.json", tmp_path / "x.json", tmp_path / "y.json"
    write_signal(hp, crandn(rng, 64))
    write_signal(xp, crandn(rng, 64))
    assert main(["convolve", "--alpha", "0.7", "--h", str(hp), "--x", str(xp),
                 "--output", str(out), "--domain", domain, "--check"]) == 0
    err = capsys.readouterr().err
    residual = float(err.split("residual=")[1].split()[0])
    assert residual <= 1e-10 and "PASS" in err


def test_matrix_command(tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert main(["matrix", "--alpha", "pi/2", "--n", "2", "--output", str(out)]) == 0
    rows = [r.split(",") for r in out.read_text().splitlines()[1:]]
    vals = {(int(n), int(k)): complex(float(re), float(im)) for n, k, re, im in rows}
    s = 1 / math.sqrt(2)
    assert vals[(1, 1)] == pytest.approx(-s, abs=1e-15) and vals[(0, 1)] == pytest.approx(s)
    assert "circulant: no" in capsys.readouterr().err
    assert main(["matrix", "--alpha", "2pi", "--n", "3", "--output", str(out)]) == 0
    assert "circulant: yes" in capsys.readouterr().err


def test_matrix_probe(tmp_path, rng):
    out = tmp_path / "w.csv"
    assert main(["matrix", "--alpha", "pi/4", "--n", "8", "--output", str(out)]) == 0
    W = np.zeros((8, 8), dtype=complex)
    for row in out.read_text().splitlines()[1:]:
        n, k, re, im = row.split(",")
        W[int(n), int(k)] = complex(float(re), float(im))
    p = make_params(math.pi / 4, 8)
    for _ in range(10):
        x = crandn(rng, 8)
        assert np.max(np.abs(W @ x - frft_direct(p, x))) <= 1e-12


def test_verify_delta_grid_skips_theorem(tmp_path):
    rep = tmp_path / "r.json"
    assert main(["verify", "--alpha", "pi,0.7", "--n", "4", "--report", str(rep)]) == 0
    data = json.loads(rep.read_text())
    skipped = {(s["name"], s["alpha"]) for s in data["skipped"]}
    assert ("theorem", math.pi) in skipped
    assert not any(c["name"] == "theorem" and c["alpha"] == math.pi for c in data["checks"])
    assert data["summary"]["failed"] == 0


def test_verify_detects_tampered_theorem(tmp_path, monkeypatch, capsys):
    # Mutation sanity check: a spectral product missing exp(-A k**2).
    monkeypatch.setattr(affine_frft.verify, "spectral_product", lambda p, H, X: H * X)
    rep = tmp_path / "r.json"
    assert main(["verify", "--alpha", "0.7", "--n", "16", "--report", str(rep)]) == 6
    theorem = [c for c in json.loads(rep.read_text())["checks"] if c["name"] == "theorem"]
    assert theorem and not theorem[0]["passed"]
    assert theorem[0]["residual"] > 1e3 * theorem[0]["tolerance"]
    assert "FAIL theorem" in capsys.readouterr().err


def test_verify_to_stdout(capsys):
    assert main(["verify", "--alpha", "0.7", "--n", "2", "--trials", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["summary"]["failed"] == 0


def test_verify_invalid_grid():
    assert main(["verify", "--n", "0"]) == 1
    assert main(["verify", "--trials", "0"]) == 1


def test_console_script(tmp_path):
    rep = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "affine_frft", "verify", "--n", "4", "--trials", "2",
         "--report", str(rep)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(rep.read_text())["summary"]["failed"] == 0
