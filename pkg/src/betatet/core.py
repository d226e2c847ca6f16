"""Base-mu exponential and logarithm with overflow sentinels.

Every evaluator in the package returns either a complex number or one of the
:class:`Sentinel` members.  Sentinels absorb arithmetic, so a chain such as
``exp_b(x) / (1 + w)`` stays a sentinel once any step produced one.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Union

#: Largest allowed real part of ``mu * z`` before ``exp_b`` reports Overflow.
OVERFLOW_EXPONENT = 700.0


class Sentinel(enum.Enum):
    OVERFLOW = "Overflow"
    POLE_HIT = "PoleHit"
    NON_CONVERGENT = "NonConvergent"

    def __str__(self) -> str:
        return self.value

    # absorbing arithmetic
    def _absorb(self, *_args):
        return self

    __add__ = __radd__ = __sub__ = __rsub__ = _absorb
    __mul__ = __rmul__ = __truediv__ = __rtruediv__ = _absorb
    __pow__ = __rpow__ = __neg__ = __pos__ = _absorb

    def __abs__(self) -> float:
        return math.inf


Overflow = Sentinel.OVERFLOW
PoleHit = Sentinel.POLE_HIT
NonConvergent = Sentinel.NON_CONVERGENT

Checked = Union[complex, Sentinel]


def is_sentinel(x) -> bool:
    return isinstance(x, Sentinel)


def first_sentinel(*xs) -> Sentinel | None:
    for x in xs:
        if isinstance(x, Sentinel):
            return x
    return None


@dataclass(frozen=True)
class Params:
    """The pair (lambda, mu); the base of the exponential is ``b = e^mu``."""

    lam: complex
    mu: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "mu", complex(self.mu))
        if not self.lam.real > 0:
            raise ValueError(f"Re(lambda) must be positive, got {self.lam}")
        if self.mu == 0:
            raise ValueError("mu must be nonzero")

    @property
    def base(self) -> complex:
        return cmath.exp(self.mu)

    @property
    def period(self) -> complex:
        """Imaginary period ``2 pi i / lambda`` of beta."""
        return 2j * math.pi / self.lam


def finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def exp_b(z: Checked, p: Params) -> Checked:
    """``e^(mu z)``, or Overflow when ``Re(mu z)`` exceeds the guard."""
    if isinstance(z, Sentinel):
        return z
    w = p.mu * z
    if not finite(w) or w.real > OVERFLOW_EXPONENT:
        return Overflow
    return cmath.exp(w)


def log_b(z: Checked, p: Params, branch: int = 0) -> Checked:
    """``(ln|z| + i Arg z + 2 pi i k) / mu`` with the principal ``Arg``."""
    if isinstance(z, Sentinel):
        return z
    if z == 0:
        return PoleHit
    if not finite(z):
        return Overflow
    w = cmath.log(z)
    if branch:
        w += 2j * math.pi * branch
    return w / p.mu


def _log1p(z: complex) -> complex:
    # principal log(1+z) without cancellation for small |z|
    x, y = z.real, z.imag
    if abs(z) < 0.5:
        # |1+z|^2 - 1 = 2x + x^2 + y^2
        re = 0.5 * math.log1p(2 * x + x * x + y * y)
        im = math.atan2(y, 1 + x)
        return complex(re, im)
    return cmath.log(1 + z)


def log1p_b(z: Checked, p: Params) -> Checked:
    """Principal ``log_b(1 + z)``, accurate for small ``z``."""
    if isinstance(z, Sentinel):
        return z
    if not finite(z):
        return Overflow
    if z == -1:
        return PoleHit
    return _log1p(z) / p.mu
