"""The asymptotic solution ``beta`` of ``beta(s+1) = e^(mu beta(s)) / (1 + e^(-lam s))``.

Two independent constructions are provided:

* :func:`beta_compose` nests ``q_j(s, z) = e^(mu z) / (1 + e^(lam (j - s)))``
  across ``z``;
* :func:`beta_series` sums the power series ``g(w) = sum c_k w^k`` at
  ``w = e^(lam s)``, valid on a left half-plane.

:func:`beta_eval` is the production evaluator: it seeds from the series and
walks right with the functional equation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import textio
from .composer import DEFAULT_J_MAX, CompositionTerm, inner_compose
from .jets import Jet
from .core import (OVERFLOW_EXPONENT, Checked, NonConvergent, Overflow, Params,
                   PoleHit, Sentinel, _log1p, exp_b, finite, log_b)

SERIES_MARGIN = 0.5
DEFAULT_ORDER = 120
POLE_DISTANCE = 1e-9
COEFF_GUARD = 1e300


# -- singular lattice -------------------------------------------------------

def _odd_pi_distance(t: complex) -> float:
    """Distance from ``t`` to the nearest point ``(2k+1) pi i``."""
    k = round((t.imag / math.pi - 1) / 2)
    return abs(t - (2 * k + 1) * math.pi * 1j)


def near_lattice(s: complex, p: Params, j_max: int) -> bool:
    """True if ``lam (j - s)`` is within ``POLE_DISTANCE`` of ``(2k+1) pi i`` for some ``1 <= j <= j_max``."""
    # only j with Re(lam (j - s)) ~ 0 can be close
    lam = p.lam
    j0 = (lam * s).real / lam.real
    for j in range(max(1, math.floor(j0) - 1), min(j_max, math.ceil(j0) + 1) + 1):
        if _odd_pi_distance(lam * (j - s)) < POLE_DISTANCE:
            return True
    return False


# -- first construction -----------------------------------------------------

def beta_term(p: Params) -> CompositionTerm:
    lam, mu = p.lam, p.mu

    def q(j: int, s: complex, z: Checked) -> Checked:
        if isinstance(z, Sentinel):
            return z
        t = lam * (j - s)
        if t.real > 0:
            # e^(mu z) e^(-t) / (1 + e^(-t)) avoids overflow of e^t
            w = mu * z - t
            if not finite(w) or w.real > OVERFLOW_EXPONENT:
                return Overflow
            return cmath.exp(w) / (1 + cmath.exp(-t))
        if t.real < -OVERFLOW_EXPONENT:
            return Overflow
        den = 1 + cmath.exp(t)
        if den == 0:
            return PoleHit
        return exp_b(z, p) / den

    return CompositionTerm(q, 0j)


def beta_compose(s: complex, p: Params, tol: float = 1e-14,
                 j_max: int = DEFAULT_J_MAX) -> Checked:
    s = complex(s)
    if near_lattice(s, p, j_max):
        return PoleHit
    return inner_compose(beta_term(p), s, 0j, tol, j_max).value


# -- second construction ----------------------------------------------------

@dataclass(frozen=True)
class GSeries:
    """Taylor coefficients ``c_0..c_K`` of ``g`` with ``beta(s) = g(e^(lam s))``."""

    params: Params
    coeffs: tuple[complex, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def dumps(self) -> str:
        p = self.params
        header = (f"lambda={textio.format_complex_pair(p.lam)} "
                  f"mu={textio.format_complex_pair(p.mu)} K={self.order}")
        return textio.dump_coeffs(header, self.coeffs)

    @classmethod
    def loads(cls, text: str) -> "GSeries":
        header, coeffs = textio.load_coeffs(text)
        try:
            p = Params(textio.parse_complex_pair(header["lambda"]),
                       textio.parse_complex_pair(header["mu"]))
            K = int(header["K"])
        except KeyError as e:
            raise ValueError(f"missing header field {e}") from None
        if len(coeffs) != K + 1:
            raise ValueError(f"expected {K + 1} coefficients, found {len(coeffs)}")
        return cls(p, tuple(coeffs))


def g_coefficients(p: Params, K: int = DEFAULT_ORDER) -> GSeries | Sentinel:
    """Solve ``g(e^lam w) (1 + w) = w e^(mu g(w))`` order by order.

    With ``E = e^(mu g)`` the degree-k coefficient of ``w E / (1 + w)`` is the
    alternating sum ``sum_{i<k} (-1)^(k-1-i) E_i``, and ``E`` itself obeys
    ``k E_k = mu sum_j j c_j E_(k-j)``.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    c = [0j] * (K + 1)
    E = [0j] * (K + 1)
    E[0] = 1 + 0j
    alt = 0j  # sum_{i<k} (-1)^(k-1-i) E_i
    for k in range(1, K + 1):
        alt = E[k - 1] - alt
        ck = cmath.exp(-p.lam * k) * alt
        if not finite(ck) or abs(ck) > COEFF_GUARD:
            return Overflow
        c[k] = ck
        E[k] = p.mu / k * sum(j * c[j] * E[k - j] for j in range(1, k + 1))
    return GSeries(p, tuple(c))


def series_valid(s: complex, p: Params) -> bool:
    return (p.lam * s).real < p.lam.real - SERIES_MARGIN


def beta_series(s: complex, gs: GSeries) -> Checked:
    p = gs.params
    s = complex(s)
    if not series_valid(s, p):
        return NonConvergent
    w = cmath.exp(p.lam * s)
    acc = 0j
    for ck in reversed(gs.coeffs):
        acc = acc * w + ck
    return acc


# -- hybrid evaluator -------------------------------------------------------

def reduce_period(s: complex, p: Params) -> tuple[complex, int]:
    """Shift ``s`` by a multiple ``m`` of the period so ``Im(lam s)`` lies in ``[-pi, pi]``."""
    x = (p.lam * s).real / p.lam.real
    y = ((p.lam * s).imag - x * p.lam.imag) / (2 * math.pi)
    m = round(y)
    return s - m * p.period, m


def beta_eval(s: complex, p: Params, gs: GSeries | None = None) -> Checked:
    if gs is None:
        gs = default_series(p)
    s, _ = reduce_period(complex(s), p)
    lam = p.lam
    n = max(0, math.floor(((lam * s).real - lam.real + SERIES_MARGIN) / lam.real) + 1)
    t = s - n
    val = beta_series(t, gs)
    for _ in range(n):
        if _odd_pi_distance(lam * t) < POLE_DISTANCE:
            return PoleHit
        val = exp_b(val, p) / (1 + cmath.exp(-lam * t))
        if isinstance(val, Sentinel):
            return val
        if not finite(val):
            return Overflow
        t += 1
    return val


def beta_jet(center: complex, order: int, p: Params,
             gs: GSeries | None = None) -> Jet | Sentinel:
    """Taylor jet of beta at ``center``, by the same route as :func:`beta_eval`."""
    if gs is None:
        gs = default_series(p)
    # beta is periodic, so shifting the center leaves every coefficient unchanged
    c, _ = reduce_period(complex(center), p)
    lam = p.lam
    n = max(0, math.floor(((lam * c).real - lam.real + SERIES_MARGIN) / lam.real) + 1)
    if not series_valid(c - n, p):
        return NonConvergent
    t = Jet.variable(c - n, order)
    w = (t * lam).exp()
    acc = Jet.constant(0j, c - n, order)
    for ck in reversed(gs.coeffs):
        acc = acc * w + ck
        if isinstance(acc, Sentinel):
            return acc
    for _ in range(n):
        if _odd_pi_distance(lam * t.value) < POLE_DISTANCE:
            return PoleHit
        num = (acc * p.mu)
        num = num if isinstance(num, Sentinel) else num.exp()
        acc = num / ((t * -lam).exp() + 1)
        if isinstance(acc, Sentinel):
            return acc
        t = t + 1
    return Jet(complex(center), acc.coeffs)


_SERIES_CACHE: dict[tuple[Params, int], GSeries | Sentinel] = {}


def default_series(p: Params, K: int = DEFAULT_ORDER) -> GSeries:
    key = (p, K)
    gs = _SERIES_CACHE.get(key)
    if gs is None:
        gs = _SERIES_CACHE[key] = g_coefficients(p, K)
    if isinstance(gs, Sentinel):
        raise ValueError(f"series coefficients overflow for {p}")
    return gs


def log1p_exp_b(x: complex, p: Params) -> Checked:
    """Principal ``log_b(1 + e^x)`` without overflowing for large ``Re x``."""
    if x.real > 30:
        v = x + _log1p(cmath.exp(-x))
        v -= 2j * math.pi * round(v.imag / (2 * math.pi))
        if v.imag <= -math.pi:
            v += 2j * math.pi
        return v / p.mu
    if x.real < -OVERFLOW_EXPONENT:
        return 0j
    arg = cmath.exp(x)
    if 1 + arg == 0:
        return PoleHit
    return _log1p(arg) / p.mu


def beta_backward(s: complex, p: Params, gs: GSeries | None = None,
                  steps: int = 1) -> Checked:
    """``beta(s - steps)`` by repeated principal logs of the functional equation."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    s = complex(s)
    val = beta_eval(s, p, gs)
    for _ in range(steps):
        if isinstance(val, Sentinel):
            return val
        s -= 1
        if _odd_pi_distance(p.lam * s) < POLE_DISTANCE:
            return PoleHit
        val = log_b(val, p) + log1p_exp_b(-p.lam * s, p)
    return val


# -- fundamental domain -----------------------------------------------------

@dataclass(frozen=True)
class FundamentalCoords:
    s0: complex
    n_shift: int
    m_period: int

    def reconstruct(self, p: Params) -> complex:
        return self.s0 + self.n_shift + self.m_period * p.period


def _floor_snap(x: float) -> int:
    r = round(x)
    if abs(x - r) <= 1e-12 * max(1.0, abs(x)):
        return r
    return math.floor(x)


def to_fundamental(s: complex, p: Params) -> FundamentalCoords:
    """Write ``s = s0 + n + m (2 pi i / lam)`` with ``s0`` in the unit cell.

    The cell is ``{x + y (2 pi i / lam) : 0 <= x, y < 1}``, the parallelogram
    spanned by the two periods of the lattice.
    """
    s = complex(s)
    lam = p.lam
    x = (lam * s).real / lam.real
    y = ((lam * s).imag - x * lam.imag) / (2 * math.pi)
    n, m = _floor_snap(x), _floor_snap(y)
    return FundamentalCoords(s - n - m * p.period, n, m)
