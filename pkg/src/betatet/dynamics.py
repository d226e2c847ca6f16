"""Orbit behaviour of beta and the regular iteration at an attracting fixed point.

For bases with an attracting fixed point ``omega = e^(mu omega)`` the
Schroeder (Koenigs) function ``phi`` linearizes ``f(z) = e^(mu z)``:
``phi(f(z)) = gamma phi(z)`` with ``gamma = mu omega``.  Its inverse gives
the regular tetration ``tet(s) = omega + phi^-1(gamma^(s - s0))`` and
``alpha = log(phi) / log(gamma)`` is the matching Abel function.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .beta import GSeries, beta_eval, default_series
from .core import (Checked, NonConvergent, Overflow, Params, PoleHit, Sentinel, exp_b,
                   finite, log_b)

FIXED_POINT_TOL = 1e-13


# -- fixed point -------------------------------------------------------------

@dataclass(frozen=True)
class FixedPointData:
    omega: complex
    multiplier: complex
    iterations: int


def omega_fixed_point(p: Params, max_iter: int = 10_000) -> FixedPointData | Sentinel:
    """Attracting fixed point of ``z -> e^(mu z)`` as the limit of the orbit of 0."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    z = 0j
    for it in range(1, max_iter + 1):
        nz = exp_b(z, p)
        if isinstance(nz, Sentinel):
            return NonConvergent
        if abs(nz - z) < FIXED_POINT_TOL:
            z = nz
            break
        z = nz
    else:
        return NonConvergent
    # two Newton steps on e^(mu z) - z clean up the slow linear tail
    for _ in range(2):
        e = cmath.exp(p.mu * z)
        d = p.mu * e - 1
        if d == 0:
            break
        z -= (e - z) / d
    return FixedPointData(z, p.mu * z, it)


# -- Koenigs linearization ---------------------------------------------------

def _compose_powers(g: np.ndarray, order: int) -> list[np.ndarray]:
    """``[g^0, g^1, ..., g^order]`` truncated at degree ``order``."""
    powers = [np.zeros(order + 1, dtype=complex)]
    powers[0][0] = 1
    for _ in range(order):
        powers.append(np.convolve(powers[-1], g)[: order + 1])
    return powers


def _reversion(phi: np.ndarray, order: int) -> np.ndarray:
    """Coefficients of the compositional inverse of ``phi`` (``phi_0 = 0``, ``phi_1 = 1``)."""
    powers = _compose_powers(phi, order)
    psi = np.zeros(order + 1, dtype=complex)
    psi[1] = 1
    for k in range(2, order + 1):
        psi[k] = -sum(psi[j] * powers[j][k] for j in range(1, k))
    return psi


@dataclass(frozen=True, eq=False)
class KoenigsSeries:
    """Schroeder function ``phi`` and its inverse as series in ``u = z - omega``.

    ``phi_coeffs[k]`` is the coefficient of ``u^k`` (index 0 is always 0);
    ``disk`` is the radius in ``u`` where ``phi`` is used and ``w_disk`` the
    radius in ``w`` where ``phi^-1`` is used.
    """

    params: Params
    fp: FixedPointData
    phi_coeffs: np.ndarray
    phi_inv_coeffs: np.ndarray
    disk: float
    w_disk: float

    @property
    def order(self) -> int:
        return len(self.phi_coeffs) - 1

    @property
    def log_gamma(self) -> complex:
        return cmath.log(self.fp.multiplier)

    @property
    def period(self) -> complex:
        """Imaginary period ``2 pi i / log(gamma)`` of the regular tetration."""
        return 2j * math.pi / self.log_gamma

    def phi(self, z: complex) -> complex:
        return _horner(self.phi_coeffs, z - self.fp.omega)

    def phi_inv(self, w: complex) -> complex:
        return self.fp.omega + _horner(self.phi_inv_coeffs, w)


def _horner(c: np.ndarray, x: complex) -> complex:
    acc = 0j
    for ck in c[::-1]:
        acc = acc * x + complex(ck)
    return acc


def _safe_radius(c: np.ndarray, eps: float = 1e-17) -> float:
    """Largest ``r`` with ``|c_k| r^k <= eps`` for the top quarter of the coefficients."""
    order = len(c) - 1
    r = math.inf
    for k in range(max(2, 3 * order // 4), order + 1):
        a = abs(complex(c[k]))
        if a > 0:
            r = min(r, (eps / a) ** (1.0 / k))
    return r


def koenigs_series(p: Params, order: int = 32, fp: FixedPointData | None = None,
                   f_coeffs: np.ndarray | None = None) -> KoenigsSeries | Sentinel:
    """Solve ``phi(f(omega + u) - omega) = gamma phi(u)`` with ``phi'(0) = 1``.

    Coefficient ``k`` satisfies ``p_k (gamma^k - gamma) = -sum_{j<k} p_j [g^j]_k``
    where ``g(u) = f(omega + u) - omega``.  ``f_coeffs`` overrides ``g`` (its
    degree-1 term must equal the multiplier); it exists for testing the
    recursion on maps with known linearizers.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if fp is None:
        fp = omega_fixed_point(p)
        if isinstance(fp, Sentinel):
            return fp
    gamma = fp.multiplier
    if not 0 < abs(gamma) < 1 - 1e-9:
        return NonConvergent
    if f_coeffs is None:
        # e^(mu (omega + u)) - omega = omega (e^(mu u) - 1)
        g = np.array([0j] + [fp.omega * p.mu ** k / math.factorial(k)
                             for k in range(1, order + 1)])
    else:
        g = np.zeros(order + 1, dtype=complex)
        g[: len(f_coeffs)] = f_coeffs[: order + 1]
    powers = _compose_powers(g, order)
    phi = np.zeros(order + 1, dtype=complex)
    phi[1] = 1
    for k in range(2, order + 1):
        rhs = -sum(phi[j] * powers[j][k] for j in range(1, k))
        phi[k] = rhs / (gamma ** k - gamma)
    psi = _reversion(phi, order)
    # phi is only trusted well inside its disk of convergence; psi is entire
    disk = min(0.5 / abs(p.mu), _safe_radius(phi))
    w_disk = min(disk, _safe_radius(psi))
    return KoenigsSeries(p, fp, phi, psi, disk, w_disk)


# -- regular tetration and its Abel function --------------------------------

def abel_regular(z: complex, ks: KoenigsSeries, max_steps: int = 200) -> Checked:
    """``alpha(z) = log(phi(f^n(z))) / log(gamma) - n`` for the first ``n`` in the disk."""
    p = ks.params
    z = complex(z)
    for n in range(max_steps + 1):
        if abs(z - ks.fp.omega) <= ks.disk:
            ph = ks.phi(z)
            if ph == 0:
                return PoleHit
            return cmath.log(ph) / ks.log_gamma - n
        z = exp_b(z, p)
        if isinstance(z, Sentinel):
            return NonConvergent
    return NonConvergent


def regular_s0(ks: KoenigsSeries) -> Checked:
    """Offset ``s0`` making ``tet(0) = 1``."""
    a = abel_regular(1.0, ks)
    return a if isinstance(a, Sentinel) else -a


def regular_tet(s: complex, ks: KoenigsSeries, s0_norm: complex | None = None,
                max_pull: int = 400) -> Checked:
    """``omega + phi^-1(gamma^(s - s0))``, pulled back with logs when ``|gamma^(s-s0)|`` is large."""
    if s0_norm is None:
        s0_norm = regular_s0(ks)
        if isinstance(s0_norm, Sentinel):
            return s0_norm
    p = ks.params
    x = (complex(s) - s0_norm) * ks.log_gamma  # log of gamma^(s - s0)
    # shift right by k so that |gamma^(s + k - s0)| fits the inverse series disk
    k = 0
    lg = ks.log_gamma.real
    if x.real > math.log(ks.w_disk):
        k = math.ceil((math.log(ks.w_disk) - x.real) / lg)
    if k > max_pull:
        return NonConvergent
    v = ks.phi_inv(cmath.exp(x + k * ks.log_gamma))
    for _ in range(k):
        v = log_b(v, p)
        if isinstance(v, Sentinel):
            return v
    return v


# -- theta mapping -----------------------------------------------------------

@dataclass(frozen=True)
class ThetaValue:
    theta: Checked
    n_used: int
    drift: float


def theta_map(s: complex, p: Params, gs: GSeries | None, ks: KoenigsSeries,
              n_max: int = 100, tol: float = 1e-9) -> ThetaValue:
    """``theta(s) = lim alpha(beta(s+n)) - s - n``; stops when successive values agree to ``tol``."""
    gs = gs or default_series(p)
    s = complex(s)
    prev: complex | None = None
    drift = math.inf
    for n in range(n_max + 1):
        b = beta_eval(s + n, p, gs)
        if isinstance(b, Sentinel):
            return ThetaValue(b, n, drift)
        a = abel_regular(b, ks)
        if isinstance(a, Sentinel):
            if prev is None:
                continue
            return ThetaValue(a, n, drift)
        th = a - s - n
        if prev is not None:
            # alpha is defined modulo the regular period; compare on one branch
            th = prev + _mod_period(th - prev, ks.period)
            drift = abs(th - prev)
            if drift < tol:
                return ThetaValue(th, n, drift)
        prev = th
    return ThetaValue(NonConvergent, n_max, drift)


def _mod_period(d: complex, period: complex) -> complex:
    m = round((d / period).real)
    return d - m * period


# -- classification ------------------------------------------------------------

class Verdict(enum.Enum):
    FATOU = "Fatou"
    JULIA = "Julia"
    UNDECIDED = "Undecided"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ClassifyConfig:
    K: int | None = None  # default 80 / Re(lambda)
    delta: float = 1e-8
    D: float = 1e8
    probe_radius: float = 0.02
    probes: int = 8

    def window(self, p: Params) -> int:
        return self.K if self.K is not None else max(2, round(80 / p.lam.real))


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    orbit_min: float
    orbit_max: float
    k_window: int


def _orbit(s: complex, p: Params, gs: GSeries, k_lo: int, k_hi: int) -> list[Checked]:
    out: list[Checked] = []
    v = beta_eval(s + k_lo, p, gs)
    t = s + k_lo
    for _ in range(k_lo, k_hi + 1):
        out.append(v)
        if isinstance(v, Sentinel):
            break
        v = exp_b(v, p) / (1 + cmath.exp(-p.lam * t))
        if not isinstance(v, Sentinel) and not finite(v):
            v = Overflow
        t += 1
    return out


def _probe_points(s: complex, radius: float, count: int) -> list[complex]:
    pts = [s]
    if radius > 0:
        pts += [s + radius * cmath.exp(2j * math.pi * j / count) for j in range(count)]
    return pts


def classify_point(s: complex, p: Params, gs: GSeries | None = None,
                   cfg: ClassifyConfig = ClassifyConfig()) -> Classification:
    """Fatou if ``1/|beta(s'+k)|`` stays in ``(delta, D)`` for every probe ``s'``.

    ``k`` runs over ``[K/2, K]``.  An overflowing or pole-hitting probe, or
    one whose orbit sits below ``1/D`` for the whole second half of the
    window, makes the point Julia; any other escape is Undecided.
    """
    gs = gs or default_series(p)
    K = cfg.window(p)
    if not (K >= 1 and 0 < cfg.delta < cfg.D and cfg.probes >= 4):
        raise ValueError("invalid classification thresholds")
    lo_b, hi_b = 1 / cfg.D, 1 / cfg.delta
    omin, omax = math.inf, 0.0
    undecided = False
    for sp in _probe_points(complex(s), cfg.probe_radius, cfg.probes):
        orbit = _orbit(sp, p, gs, K // 2, K)
        if isinstance(orbit[-1], Sentinel):
            return Classification(Verdict.JULIA, omin, math.inf, K)
        mags = [abs(v) for v in orbit]
        omin, omax = min(omin, *mags), max(omax, *mags)
        if all(m < lo_b for m in mags[len(mags) // 2:]):
            return Classification(Verdict.JULIA, omin, omax, K)
        if any(not lo_b < m < hi_b for m in mags):
            undecided = True
    verdict = Verdict.UNDECIDED if undecided else Verdict.FATOU
    return Classification(verdict, omin, omax, K)


def a_mu_estimate(s_center: complex, radius: float, p: Params, gs: GSeries | None = None,
                  K: int = 60, samples: int = 8) -> float:
    """``max |1 / (mu beta(s + k))|`` over a sampled disk boundary and ``k`` in ``[K/2, K]``."""
    if samples < 8:
        raise ValueError("samples must be >= 8")
    gs = gs or default_series(p)
    worst = 0.0
    for sp in _probe_points(complex(s_center), radius, samples):
        for v in _orbit(sp, p, gs, K // 2, K):
            if isinstance(v, Sentinel) or abs(v) < 1e-300:
                return math.inf
            worst = max(worst, 1 / abs(p.mu * v))
    return worst


# -- residue identity ----------------------------------------------------------

@dataclass(frozen=True)
class ResidueCheck:
    integral: Checked
    expected: Checked
    rel_err: float


def residue_check(p: Params, gs: GSeries | None = None, k_index: int = 0,
                  radius: float = 0.1, nodes: int = 512) -> ResidueCheck:
    """Trapezoid contour integral of beta around the pole ``1 + (2k+1) pi i / lam``.

    The pole is simple with residue ``e^(mu beta(pi i / lam)) / lam``.
    """
    if nodes < 4:
        raise ValueError("nodes must be >= 4")
    gs = gs or default_series(p)
    # neighbouring lattice points are 1 and |2 pi / lam| away
    if not 0 < radius < 0.5 * min(1.0, abs(p.period)):
        raise ValueError("contour radius encloses or touches another lattice point")
    center = 1 + (2 * k_index + 1) * math.pi * 1j / p.lam
    total = 0j
    for j in range(nodes):
        e = cmath.exp(2j * math.pi * j / nodes)
        v = beta_eval(center + radius * e, p, gs)
        if isinstance(v, Sentinel):
            return ResidueCheck(v, v, math.inf)
        total += v * e
    integral = total * (2j * math.pi * radius / nodes)
    b = beta_eval(math.pi * 1j / p.lam, p, gs)
    expected = 2j * math.pi / p.lam * exp_b(b, p)
    if isinstance(expected, Sentinel):
        return ResidueCheck(integral, expected, math.inf)
    return ResidueCheck(integral, expected, abs(integral - expected) / abs(expected))
