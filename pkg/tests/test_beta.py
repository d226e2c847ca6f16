import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from betatet import Jet, NonConvergent, Overflow, Params, PoleHit, Sentinel
from betatet.beta import (FundamentalCoords, GSeries, beta_backward, beta_compose, beta_eval,
                          beta_jet, beta_series, default_series, g_coefficients, series_valid,
                          to_fundamental)

LN2_HALF = math.log(2) / 2

# frozen from oracles.series_coeffs (undetermined coefficients at 40 digits)
COEFFS_E = [0.36787944117144233, -0.08554821486874875, 0.030581208156253387,
            -0.011114522411558485]
COEFFS_ROOT2 = {2: -0.11808040020284763, 3: 0.04180654651376001}
COEFFS_SKEW = [(0.19876611034641295 - 0.3095598756531122j),
               (0.014056477369559311 + 0.06674524920450793j),
               (-0.026752106696108918 - 0.010616504744647277j)]

# frozen from oracles.beta_nested (composition at 40 digits)
NESTED = [
    ((1, 1), -10, 1.6701524465094317e-05),
    ((1, 1), 3, 3.718965368076906),
    ((1, LN2_HALF), 2.5 + 1j, 1.0783486132580484 + 0.320775451309683j),
    ((1, LN2_HALF), 30, 1.9999639478681168),
    ((1, LN2_HALF), 40, 1.9999990770525953),
    ((1 + 1j, 1 + 1j), 1.5 - 0.5j, 2.0574187460351196 - 0.31292996547551644j),
]

PARAMS = [Params(1, 1), Params(1, LN2_HALF), Params(1 + 1j, 1 + 1j)]


def test_leading_coefficients(base_e, root_two, skew):
    gs = g_coefficients(base_e, 8)
    assert gs.coeffs[0] == 0
    assert gs.coeffs[1] == pytest.approx(math.exp(-1), rel=1e-15)
    assert gs.coeffs[2] == pytest.approx(math.exp(-2) * (math.exp(-1) - 1), rel=1e-14)
    for k, c in enumerate(COEFFS_E, start=1):
        assert gs.coeffs[k] == pytest.approx(c, rel=1e-13)
    gs2 = g_coefficients(root_two, 4)
    for k, c in COEFFS_ROOT2.items():
        assert gs2.coeffs[k] == pytest.approx(c, rel=1e-13)
    gs3 = g_coefficients(skew, 4)
    for k, c in enumerate(COEFFS_SKEW, start=1):
        assert abs(gs3.coeffs[k] - c) <= 1e-14


@pytest.mark.parametrize("p", PARAMS, ids=["e", "root2", "skew"])
def test_coefficient_growth(p):
    gs = default_series(p)
    K = gs.order
    proxy = max(abs(gs.coeffs[k]) ** (1 / k) for k in range(K // 2, K + 1) if gs.coeffs[k])
    assert proxy <= math.exp(-p.lam.real) + 0.1


def test_invalid_order(base_e):
    with pytest.raises(ValueError):
        g_coefficients(base_e, 0)


@pytest.mark.parametrize("pq, s, expected", NESTED)
def test_eval_matches_nested_oracle(pq, s, expected):
    p = Params(*pq)
    assert abs(beta_eval(s, p) - expected) <= 1e-12 * max(1, abs(expected))


def test_compose_examples(base_e):
    assert beta_compose(-10, base_e) == pytest.approx(1.6701524465094317e-05, rel=1e-12)
    assert beta_compose(1 + 1j * math.pi, base_e) is PoleHit
    # Re(s) = -10: leading term c_1 e^s
    assert beta_compose(-10, base_e) == pytest.approx(math.exp(-11), rel=1e-4)


def test_series_at_zero_matches_composition(base_e):
    gs = g_coefficients(base_e, 100)
    assert abs(beta_series(0, gs) - sum(gs.coeffs)) <= 1e-15
    assert abs(beta_series(0, gs) - beta_compose(0, base_e)) <= 1e-12


def test_series_refuses_outside_disk(base_e):
    gs = default_series(base_e)
    assert not series_valid(0.6, base_e)
    assert beta_series(0.6, gs) is NonConvergent
    assert abs(beta_series(-60, gs)) < 1e-25


def test_base_e_overflows_at_six(base_e):
    assert beta_eval(6, base_e) is Overflow


def test_root_two_limit(root_two):
    # the approach to 2 is geometric with ratio ln 2 per unit step
    assert abs(beta_eval(40, root_two) - 2) < 1e-6
    assert abs(beta_eval(30, root_two) - 2) == pytest.approx(3.6052e-5, rel=1e-3)


@given(st.floats(-5, 8), st.floats(-3, 3))
def test_periodicity(x, y):
    p = Params(1, LN2_HALF)
    s = complex(x, y)
    a, b = beta_eval(s, p), beta_eval(s + p.period, p)
    if isinstance(a, Sentinel):
        assert a is b
    else:
        assert abs(a - b) <= 1e-10 * max(1, abs(a))


@given(st.floats(-4, 3), st.floats(-3, 3))
def test_periodicity_complex_lambda(x, y):
    p = Params(1 + 1j, 1 + 1j)
    s = complex(x, y)
    a, b = beta_eval(s, p), beta_eval(s - 2 * p.period, p)
    if not isinstance(a, Sentinel) and not isinstance(b, Sentinel):
        assert abs(a - b) <= 1e-10 * max(1, abs(a))


@pytest.mark.parametrize("p", PARAMS, ids=["e", "root2", "skew"])
def test_functional_equation(p):
    gs = default_series(p)
    for x in range(-4, 5):
        for y in (-2.9, -1.3, 0.0, 0.7, 2.2):
            s = complex(x + 0.3, y)
            b0, b1 = beta_eval(s, p, gs), beta_eval(s + 1, p, gs)
            if isinstance(b0, Sentinel) or isinstance(b1, Sentinel):
                continue
            rhs = cmath.exp(p.mu * b0)
            assert abs(b1 * (1 + cmath.exp(-p.lam * s)) - rhs) <= 1e-9 * (1 + abs(rhs))


def test_backward_inverts_forward(root_two):
    for s in (0.5 + 0.2j, 1.5 - 1j, 3 + 0.5j):
        back = beta_backward(s, root_two)
        assert abs(back - beta_eval(s - 1, root_two)) <= 1e-10
        fwd = cmath.exp(root_two.mu * back) / (1 + cmath.exp(-(s - 1)))
        assert abs(fwd - beta_eval(s, root_two)) <= 1e-10


def test_backward_stays_real(root_two):
    v = beta_backward(5, root_two, steps=3)
    assert v.imag == 0
    assert v.real == pytest.approx(beta_eval(2, root_two).real, abs=1e-10)


def test_backward_through_pole(base_e):
    assert beta_backward(2 + 1j * math.pi, base_e, steps=2) is PoleHit
    with pytest.raises(ValueError):
        beta_backward(0, base_e, steps=0)


def test_fundamental_examples():
    p = Params(1, 1)
    fc = to_fundamental(0.25 + 1j, p)
    assert (fc.n_shift, fc.m_period) == (0, 0)
    fc = to_fundamental(2.5 + 3 * p.period, p)
    assert (fc.n_shift, fc.m_period) == (2, 3)
    assert abs(fc.s0 - 0.5) < 1e-12
    assert isinstance(fc, FundamentalCoords)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_fundamental_reconstruction_complex_lambda(x, y):
    p = Params(1 + 1j, 1)
    s = complex(x, y)
    fc = to_fundamental(s, p)
    back = fc.reconstruct(p)
    assert abs(back - s) <= 4 * math.ulp(max(abs(s), 1.0)) * (1 + abs(fc.m_period))
    t = p.lam * fc.s0
    xr = t.real / p.lam.real
    assert -1e-12 <= xr < 1 + 1e-12


def test_series_round_trip(skew):
    gs = g_coefficients(skew, 30)
    text = gs.dumps()
    assert text.splitlines()[0].startswith("lambda=")
    again = GSeries.loads(text)
    assert again.params == gs.params
    assert again.coeffs == gs.coeffs


def test_series_loads_rejects_bad_header():
    with pytest.raises(ValueError):
        GSeries.loads("mu=0x1p+0,0x0p+0 K=1\nc_0 = 0x0p+0 0x0p+0\nc_1 = 0x0p+0 0x0p+0\n")


def test_jet_matches_finite_differences(root_two):
    s0 = 1.2 + 0.4j
    j = beta_jet(s0, 6, root_two)
    assert isinstance(j, Jet)
    assert abs(j.value - beta_eval(s0, root_two)) <= 1e-13
    h = 1e-4
    fd = (beta_eval(s0 + h, root_two) - beta_eval(s0 - h, root_two)) / (2 * h)
    assert abs(j.coeffs[1] - fd) <= 1e-7
    fd2 = (beta_eval(s0 + h, root_two) - 2 * beta_eval(s0, root_two)
           + beta_eval(s0 - h, root_two)) / h ** 2
    assert abs(2 * j.coeffs[2] - fd2) <= 1e-5
    assert abs(j(s0 + 0.01) - beta_eval(s0 + 0.01, root_two)) <= 1e-12
