"""Independent reference implementations in extended precision (mpmath).

Nothing here imports the package; values produced by these helpers were
frozen into the tests, and ``test_oracles.py`` re-derives them.
"""
from __future__ import annotations

import mpmath as mp

LN2_HALF = mp.log(2) / 2


def beta_nested(s, lam=1, mu=1, terms=None, dps=40):
    """``q_1(s, q_2(s, ... q_n(s, 0)))`` with ``q_j(s, z) = e^(mu z)/(1 + e^(lam (j - s)))``."""
    with mp.workdps(dps):
        s, lam, mu = mp.mpc(s), mp.mpc(lam), mp.mpc(mu)
        if terms is None:
            terms = int(mp.re(lam * s) / mp.re(lam)) + 120
        z = mp.mpc(0)
        for j in range(terms, 0, -1):
            z = mp.exp(mu * z) / (1 + mp.exp(lam * (j - s)))
        return complex(z)


def series_coeffs(lam, mu, K, dps=40):
    """Coefficients of g with g(e^lam w)(1 + w) = w e^(mu g(w)), by undetermined coefficients.

    Works directly with truncated polynomial products (no recurrence for the
    exponential): at each degree the unknown enters linearly, so the
    coefficient is read off after plugging in zero for it.
    """
    with mp.workdps(dps):
        lam, mu = mp.mpc(lam), mp.mpc(mu)
        c = [mp.mpc(0)] * (K + 1)
        for k in range(1, K + 1):
            # degree-k coefficient of w e^(mu g(w)) / (1 + w) uses c_1..c_{k-1}
            g = c[:k] + [mp.mpc(0)] * (K + 1 - k)
            E = mp.taylor(lambda w: mp.exp(mu * sum(g[i] * w ** i for i in range(1, k))), 0, k)
            rhs = sum(E[i] * (-1) ** (k - 1 - i) for i in range(k))
            c[k] = rhs / mp.exp(lam * k)
        return [complex(x) for x in c]


def log1p_ref(z, mu=1, dps=50):
    with mp.workdps(dps):
        return complex(mp.log1p(mp.mpc(z)) / mp.mpc(mu))


def tau_direct(s, n, lam=1, mu=LN2_HALF, dps=40):
    """``log_b^n(beta(s+n)) - beta(s)`` from the nested-composition beta."""
    with mp.workdps(dps):
        mu = mp.mpc(mu)
        v = mp.mpc(beta_nested(s + n, lam, mu, dps=dps))
        for _ in range(n):
            v = mp.log(v) / mu
        return complex(v - beta_nested(s, lam, mu, dps=dps))


def tail_sum(j_from, j_to, dps=30):
    with mp.workdps(dps):
        return float(mp.fsum(1 / (1 + mp.e ** j) for j in range(j_from, j_to + 1)))
