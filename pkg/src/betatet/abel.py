"""Correcting beta into an inverse Abel function ``F`` with ``F(s+1) = exp_b(F(s))``.

``F = beta + tau`` where ``tau = sum_j rho^j`` and

    rho^1(s) = -log_b(1 + e^(-lam s))
    rho^j(s) = log_b(1 + rho^(j-1)(s+1) / F_(j-2)(s+1)),   F_j = beta + rho^1 + ... + rho^j.

The same recursion runs on scalars and on :class:`~betatet.jets.Jet`
values, so Taylor jets of ``F`` come out of the identical code path.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .beta import (POLE_DISTANCE, GSeries, _odd_pi_distance, beta_eval, beta_jet,
                   default_series)
from .core import (Checked, NonConvergent, Overflow, Params, PoleHit, Sentinel, _log1p, exp_b,
                   finite, log_b)
from .jets import Jet, gexp_b, glog1p_b, glog_b, value_of

NEAR_CUT = 1e-12


@dataclass(frozen=True)
class TauConfig:
    n_max: int = 64
    k_shift: int = 10
    tol: float = 1e-12
    #: treat an overflowed beta as infinite: every later rho term at ``s``
    #: carries a factor ``1/beta`` and is below double range, so stop there
    saturate: bool = False

    def __post_init__(self):
        if self.n_max < 0 or self.k_shift < 0 or not self.tol > 0:
            raise ValueError(f"invalid TauConfig {self}")


@dataclass(frozen=True)
class AbelResult:
    F: Checked
    tau: Checked
    n_used: int
    rho_tail: float
    converged: bool
    k_shift: int = 0
    rho_history: tuple[float, ...] = field(default=(), repr=False)


def rho_step(rho_prev, F_prev_at_s1, p: Params) -> Checked:
    """One step of the rho recursion, ``log1p_b(rho_prev / F_prev_at_s1)``."""
    if isinstance(rho_prev, Sentinel):
        return rho_prev
    if isinstance(F_prev_at_s1, Sentinel):
        return F_prev_at_s1
    if value_of(F_prev_at_s1) == 0:
        return PoleHit
    x = rho_prev / F_prev_at_s1
    if isinstance(x, Sentinel):
        return x
    one_plus = abs(1 + value_of(x))
    if one_plus == 0:
        return PoleHit
    if one_plus < NEAR_CUT:
        return NonConvergent
    return glog1p_b(x, p)


def rho_first(t, p: Params) -> Checked:
    """``rho^1`` at ``t`` (scalar or jet of the variable)."""
    if isinstance(t, Jet):
        e = (t * -p.lam).exp()
    else:
        if (-p.lam * t).real > 700:
            return PoleHit if _odd_pi_distance(p.lam * t) < POLE_DISTANCE else _big_rho1(t, p)
        e = cmath.exp(-p.lam * t)
    if isinstance(e, Sentinel):
        return e
    r = glog1p_b(e, p)
    return r if isinstance(r, Sentinel) else -r


def _big_rho1(t: complex, p: Params) -> complex:
    # -log(1 + e^x) for huge Re x, principal branch
    x = -p.lam * t
    v = x + _log1p(cmath.exp(-x))
    v -= 2j * math.pi * round(v.imag / (2 * math.pi))
    return -v / p.mu


@dataclass
class _Run:
    F: Checked
    n_used: int
    history: list[float]
    converged: bool


def _converged(history: list[float], tol: float) -> bool:
    n = len(history)
    if history[-1] >= tol:
        return False
    ratios = [history[k] / history[k - 1] if history[k - 1] else 0.0
              for k in range(max(1, n - 3), n)]
    return all(r < 1 for r in ratios)


def _rho_engine(s, p: Params, gs: GSeries, n_max: int, tol: float,
                beta_at: Callable[[int], Checked], var_at: Callable[[int], object],
                saturate: bool = False) -> _Run:
    """Accumulate ``F_n(s)`` diagonal by diagonal.

    Diagonal ``n`` adds ``rho^j(s + n - j)`` for ``j = 1..n``; each needs the
    previous-diagonal value of ``F`` one step to the right, so a diagonal is
    computed in full before any of its terms are added in.
    """
    F_sum: list = []
    history: list[float] = []
    for n in range(1, n_max + 1):
        b = beta_at(n - 1)
        if b is Overflow and saturate and n > 1:
            history.append(0.0)
            return _Run(F_sum[0], n, history, True)
        if isinstance(b, Sentinel):
            return _Run(b, n - 1, history, False)
        F_sum.append(b)
        new = [None] * n
        new[n - 1] = rho_first(var_at(n - 1), p)
        for j in range(2, n + 1):
            pos = n - j
            new[pos] = rho_step(new[pos + 1], F_sum[pos + 1], p)
        for pos, r in enumerate(new):
            if isinstance(r, Sentinel):
                return _Run(r, n - 1, history, False)
            F_sum[pos] = F_sum[pos] + r
            if isinstance(F_sum[pos], Sentinel):
                return _Run(F_sum[pos], n - 1, history, False)
        history.append(abs(value_of(new[0])))
        if _converged(history, tol):
            return _Run(F_sum[0], n, history, True)
    return _Run(F_sum[0], n_max, history, False)


def _scalar_betas(s: complex, p: Params, gs: GSeries) -> Callable[[int], Checked]:
    cache: list[Checked] = []

    def beta_at(i: int) -> Checked:
        while len(cache) <= i:
            if not cache:
                cache.append(beta_eval(s, p, gs))
                continue
            t = s + len(cache) - 1
            prev = cache[-1]
            if isinstance(prev, Sentinel):
                cache.append(prev)
            elif _odd_pi_distance(p.lam * t) < POLE_DISTANCE:
                cache.append(PoleHit)
            else:
                v = exp_b(prev, p) / (1 + cmath.exp(-p.lam * t))
                cache.append(v if isinstance(v, Sentinel) or finite(v) else NonConvergent)
        return cache[i]

    return beta_at


def _pull_back(F, k: int, p: Params) -> Checked:
    for _ in range(k):
        F = glog_b(F, p)
        if isinstance(F, Sentinel):
            return F
    return F


def tau_n(s: complex, p: Params, cfg: TauConfig = TauConfig(),
          gs: GSeries | None = None) -> AbelResult:
    """``F(s)`` from ``n <= cfg.n_max`` rho terms evaluated at ``s + cfg.k_shift``.

    The value at the shifted point is pulled back with ``cfg.k_shift``
    principal logarithms.  When the terms do not drop below ``cfg.tol`` the
    result's ``F`` is NonConvergent and ``tau`` holds the last partial value.
    """
    gs = gs or default_series(p)
    s = complex(s)
    base = beta_eval(s, p, gs)
    if cfg.n_max == 0:
        return AbelResult(base, 0j, 0, 0.0, False, cfg.k_shift)
    shifted = s + cfg.k_shift
    run = _rho_engine(shifted, p, gs, cfg.n_max, cfg.tol,
                      _scalar_betas(shifted, p, gs), lambda i: shifted + i, cfg.saturate)
    hist = tuple(run.history)
    tail = hist[-1] if hist else math.inf
    if isinstance(run.F, Sentinel):
        return AbelResult(run.F, run.F, run.n_used, tail, False, cfg.k_shift, hist)
    F = _pull_back(run.F, cfg.k_shift, p)
    tau = F - base
    if not run.converged:
        return AbelResult(NonConvergent, tau, run.n_used, tail, False, cfg.k_shift, hist)
    return AbelResult(F, tau, run.n_used, tail, True, cfg.k_shift, hist)


def _geometric(history: tuple[float, ...], window: int = 5, bound: float = 0.9) -> bool:
    tail = history[-(window + 1):]
    if len(tail) < 2:
        return True
    return all((b / a if a else 0.0) < bound for a, b in zip(tail, tail[1:]))


def inverse_abel(s: complex, p: Params, gs: GSeries | None = None, tol: float = 1e-12,
                 n_max: int = 64, k_max: int = 64) -> AbelResult:
    """Adaptive ``F(s)``: double the shift until the rho terms decay geometrically.

    Stops at the first shift whose run converged with the last five ratios
    below 0.9.  If a larger shift overflows, the best earlier converged run is
    returned.
    """
    gs = gs or default_series(p)
    best: AbelResult | None = None
    k = 1
    while k <= k_max:
        res = tau_n(s, p, TauConfig(n_max, k, tol, saturate=True), gs)
        if res.converged:
            best = res
            if _geometric(res.rho_history):
                return res
        elif isinstance(res.F, Sentinel) and res.F is not NonConvergent:
            # overflow (or a pole) blocks larger shifts
            return best or res
        k *= 2
    return best or res


# -- oracles and linear model ------------------------------------------------

def tau_iterated_log(s: complex, p: Params, n: int, gs: GSeries | None = None) -> Checked:
    """``log_b^n(beta(s+n)) - beta(s)`` with principal logs: the direct form of tau^n."""
    gs = gs or default_series(p)
    v = beta_eval(s + n, p, gs)
    for _ in range(n):
        v = log_b(v, p)
    return v - beta_eval(s, p, gs)


def tau_linear(s: complex, p: Params, n: int, gs: GSeries | None = None) -> Checked:
    """Linearized recursion ``t^(n+1)(s) = t^n(s+1) / (mu beta(s+1)) - e^(-lam s) / mu``."""
    gs = gs or default_series(p)
    s = complex(s)
    t: Checked = 0j
    # unroll from the right: t^1(s+n-1), t^2(s+n-2), ..., t^n(s)
    for j in range(1, n + 1):
        pos = s + n - j
        b = beta_eval(pos + 1, p, gs)
        t = t / (p.mu * b) - cmath.exp(-p.lam * pos) / p.mu
        if isinstance(t, Sentinel):
            return t
    return t


# -- jets --------------------------------------------------------------------

def tau_jet(s0: complex, m: int, p: Params, cfg: TauConfig = TauConfig(),
            gs: GSeries | None = None) -> Jet | Sentinel:
    """Order-``m`` Taylor jet of ``F`` at ``s0``.

    The rho recursion runs in jet arithmetic at ``s0 + cfg.k_shift`` and is
    pulled back with jet logarithms.  The jet of the last approximant is
    returned whether or not the terms reached ``cfg.tol``.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    gs = gs or default_series(p)
    s0 = complex(s0)
    if cfg.n_max == 0:
        return beta_jet(s0, m, p, gs)
    shifted = s0 + cfg.k_shift
    run = _rho_engine(shifted, p, gs, cfg.n_max, cfg.tol,
                      lambda i: beta_jet(shifted + i, m, p, gs),
                      lambda i: Jet.variable(shifted + i, m), cfg.saturate)
    if isinstance(run.F, Sentinel):
        return run.F
    F = _pull_back(run.F, cfg.k_shift, p)
    if isinstance(F, Sentinel):
        return F
    return Jet(s0, F.coeffs)


def radius_estimate(jet: Jet) -> float:
    """``1 / max_{m/2 <= k <= m} |c_k|^(1/k)``, a finite-order radius of convergence."""
    m = jet.order
    if m < 8:
        raise ValueError("radius_estimate needs order >= 8")
    roots = [abs(complex(jet.coeffs[k])) ** (1.0 / k) for k in range(m // 2, m + 1)]
    peak = max(roots)
    return math.inf if peak == 0 else 1.0 / peak


# -- singularities -------------------------------------------------------------

def locate_singularity(s_guess: complex, branch_n: int, p: Params,
                       gs: GSeries | None = None, h: float = 1e-6, tol: float = 1e-9,
                       max_iter: int = 50) -> Checked:
    """Newton root of ``beta(s-1) + lam s / mu - 2 pi i n / mu``."""
    gs = gs or default_series(p)
    shift = 2j * math.pi * branch_n / p.mu

    def G(s):
        b = beta_eval(s - 1, p, gs)
        return b if isinstance(b, Sentinel) else b + p.lam * s / p.mu - shift

    s = complex(s_guess)
    for it in range(max_iter):
        g = G(s)
        if isinstance(g, Sentinel):
            # a sentinel after the first step means Newton left the basin
            return g if it == 0 else NonConvergent
        if abs(g) < tol:
            return s
        gp, gm = G(s + h), G(s - h)
        if isinstance(gp, Sentinel) or isinstance(gm, Sentinel):
            return first_or(gp, gm) if it == 0 else NonConvergent
        d = (gp - gm) / (2 * h)
        if d == 0 or not finite(d):
            return NonConvergent
        s = s - g / d
        if not finite(s):
            return NonConvergent
    g = G(s)
    if not isinstance(g, Sentinel) and abs(g) < tol:
        return s
    return NonConvergent


def first_or(*xs) -> Sentinel:
    for x in xs:
        if isinstance(x, Sentinel):
            return x
    return NonConvergent
