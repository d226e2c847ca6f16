"""Re-derive every frozen reference value from the extended-precision oracles."""
import math

import pytest

import oracles
from test_abel import TAU_DIRECT
from test_beta import COEFFS_E, COEFFS_ROOT2, COEFFS_SKEW, NESTED


def close(a, b, tol=1e-15):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


@pytest.mark.parametrize("pq, s, expected", NESTED)
def test_nested_values(pq, s, expected):
    assert close(oracles.beta_nested(s, *pq), expected)


def test_series_coefficients():
    c = oracles.series_coeffs(1, 1, 4)
    assert all(close(c[k], v) for k, v in enumerate(COEFFS_E, start=1))
    c = oracles.series_coeffs(1, math.log(2) / 2, 3)
    assert all(close(c[k], v) for k, v in COEFFS_ROOT2.items())
    c = oracles.series_coeffs(1 + 1j, 1 + 1j, 3)
    assert all(close(c[k], v) for k, v in enumerate(COEFFS_SKEW, start=1))


@pytest.mark.parametrize("s, n, expected", TAU_DIRECT)
def test_tau_direct(s, n, expected):
    assert close(oracles.tau_direct(s, n), expected, 1e-14)


def test_composition_constants():
    assert close(oracles.beta_nested(0), 0.30478127237156316)
    assert close(oracles.tail_sum(1, 60), 0.4641635157612597)
    assert close(oracles.log1p_ref(10 ** -16), 1e-16)
