import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betatet import GSeries, Jet, Params, beta_eval
from betatet.cli import format_complex, parse_complex, run
from betatet.render import read_ppm

MU_ROOT2 = "0.34657359"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def values(text):
    return dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line)


@pytest.mark.parametrize("text, z", [
    ("1", 1), ("-2.5", -2.5), ("3i", 3j), ("-i", -1j), ("1+2i", 1 + 2j),
    ("1e-3-4.5E2i", 1e-3 - 450j), (".5+i", 0.5 + 1j),
])
def test_parse_complex(text, z):
    assert parse_complex(text) == z


@pytest.mark.parametrize("bad", ["", "1 + 2i", "i2", "1+2j", "abc", "1++2i"])
def test_parse_complex_rejects(bad):
    with pytest.raises(ValueError):
        parse_complex(bad)


@settings(max_examples=1000)
@given(st.complex_numbers(max_magnitude=1e300, allow_nan=False, allow_infinity=False))
def test_format_round_trip(z):
    assert parse_complex(format_complex(z, 17)) == z
    back = parse_complex(format_complex(z))
    assert abs(back - z) <= 1e-14 * abs(z)


def test_eval_root_two_far_right():
    code, out = call("eval", "--lambda", "1", "--mu", MU_ROOT2, "--s", "30")
    assert code == 0
    v = values(out)
    beta = parse_complex(v["beta"])
    # the distance to 2 shrinks like (ln 2)^s, so at s = 30 it is still ~3.6e-5
    assert abs(beta - 2) < 1e-4
    assert abs(parse_complex(v["F"]) - 2) < 1e-4


def test_eval_overflow(capsys):
    code, out = call("eval", "--lambda", "1", "--mu", "1", "--s", "6")
    assert code == 3
    assert values(out)["beta"] == "Overflow"
    assert "Overflow" in capsys.readouterr().err


def test_classify():
    code, out = call("classify", "--lambda", "1", "--mu", "1", "--s", "1")
    assert code == 0 and out.splitlines()[0] == "Julia"
    code, out = call("classify", "--mu", MU_ROOT2, "--s", "1")
    assert out.splitlines()[0] == "Fatou"


def test_abel_fields():
    code, out = call("abel", "--mu", MU_ROOT2, "--s", "2")
    v = values(out)
    assert code == 0 and v["converged"] == "true"
    assert set(v) == {"F", "tau", "n_used", "rho_tail", "converged", "k_shift"}


def test_series_file(tmp_path):
    path = tmp_path / "g.txt"
    code, _ = call("series", "--mu", "1+i", "--lambda", "1+i", "--K", "20", "--out", str(path))
    assert code == 0
    gs = GSeries.loads(path.read_text())
    assert gs.order == 20 and gs.params.mu == 1 + 1j


def test_jet_file(tmp_path):
    path = tmp_path / "j.txt"
    code, out = call("jet", "--s", "0.5", "--m", "12", "--n-max", "3", "--out", str(path))
    assert code == 0 and "radius" in values(out)
    assert Jet.loads(path.read_text()).order == 12


def test_theta_and_residue():
    code, out = call("theta", "--mu", MU_ROOT2, "--s", "0.5")
    assert code == 0 and float(values(out)["drift"]) < 1e-9
    code, out = call("theta", "--mu", "1", "--s", "0.5")
    assert code == 3
    code, out = call("residue", "--mu", MU_ROOT2)
    assert code == 0 and float(values(out)["rel_err"]) < 1e-6


def test_images(tmp_path):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    grid = ["--re-min", "0", "--re-max", "1", "--im-min", "0", "--im-max", "1",
            "--width", "6", "--height", "5"]
    assert call("plot", "--mu", MU_ROOT2, *grid, "--out", str(a))[0] == 0
    assert call("plot", "--mu", MU_ROOT2, *grid, "--out", str(b), "--workers", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_ppm(a.read_bytes()).shape == (5, 6, 3)
    assert call("julia", *grid, "--out", str(a))[0] == 0
    assert np.all(read_ppm(a.read_bytes()) == 255)


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"mu": MU_ROOT2, "s": "2"}))
    code, out = call("eval", "--config", str(cfg))
    assert code == 0
    expected = beta_eval(2, Params(1, float(MU_ROOT2)))
    assert values(out)["beta"] == format_complex(expected)
    # explicit flags override the file
    code, out2 = call("eval", "--config", str(cfg), "--s", "3")
    assert out2 != out


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["eval"], ["eval", "--s", "1", "--lambda", "-1"],
    ["eval", "--s", "1", "--mu", "0"], ["series", "--K", "0"],
    ["residue", "--radius", "2"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_deterministic():
    first = call("abel", "--mu", "0.3+i", "--s", "1+0.5i")
    assert first == call("abel", "--mu", "0.3+i", "--s", "1+0.5i")
    assert math.isfinite(abs(parse_complex(values(first[1])["F"])))
