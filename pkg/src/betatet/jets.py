"""Truncated Taylor polynomials ("jets") of a fixed order at a center.

A jet of order ``m`` stores ``f(c), f'(c), f''(c)/2, ..., f^(m)(c)/m!``.
Arithmetic is exact truncated polynomial arithmetic; ``exp`` and ``log1p``
use the usual derivative recurrences.  Anything that would produce a
non-finite coefficient returns a :class:`~betatet.core.Sentinel` instead of
a jet, so a poisoned jet never leaks partial coefficients.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import textio
from .core import (OVERFLOW_EXPONENT, Checked, Overflow, Params, PoleHit, Sentinel,
                   _log1p, exp_b, log1p_b, log_b)


def _checked(coeffs: np.ndarray) -> np.ndarray | Sentinel:
    if not np.all(np.isfinite(coeffs)):
        return Overflow
    return coeffs


@dataclass(frozen=True, eq=False)
class Jet:
    center: complex
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "center", complex(self.center))

    # construction -------------------------------------------------------
    @classmethod
    def variable(cls, center: complex, order: int) -> "Jet":
        """The identity map ``s`` expanded at ``center``."""
        c = np.zeros(order + 1, dtype=complex)
        c[0] = center
        if order >= 1:
            c[1] = 1
        return cls(center, c)

    @classmethod
    def constant(cls, value: complex, center: complex, order: int) -> "Jet":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(center, c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def _new(self, coeffs) -> "Jet | Sentinel":
        c = _checked(coeffs)
        if isinstance(c, Sentinel):
            return c
        return Jet(self.center, c)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        return Jet(self.center, self.coeffs[: order + 1].copy())

    def __call__(self, s: complex) -> complex:
        """Evaluate the Taylor polynomial at ``s``."""
        h = complex(s) - self.center
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * h + c
        return acc

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> np.ndarray | None:
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet orders differ")
            return other.coeffs
        if isinstance(other, (int, float, complex, np.number)):
            c = np.zeros_like(self.coeffs)
            c[0] = other
            return c
        return None

    def __add__(self, other):
        if isinstance(other, Sentinel):
            return other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.coeffs + o)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.center, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Sentinel):
            return other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.coeffs - o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Sentinel):
            return other
        if isinstance(other, Jet):
            self._coerce(other)
            with np.errstate(all="ignore"):
                prod = np.convolve(self.coeffs, other.coeffs)[: self.order + 1]
            return self._new(prod)
        if isinstance(other, (int, float, complex, np.number)):
            with np.errstate(all="ignore"):
                return self._new(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet | Sentinel":
        a = self.coeffs
        if a[0] == 0:
            return PoleHit
        m = self.order
        r = np.zeros(m + 1, dtype=complex)
        r[0] = 1 / a[0]
        with np.errstate(all="ignore"):
            for k in range(1, m + 1):
                r[k] = -np.dot(a[1 : k + 1], r[k - 1 :: -1]) / a[0]
        return self._new(r)

    def __truediv__(self, other):
        if isinstance(other, Sentinel):
            return other
        if isinstance(other, Jet):
            inv = other.reciprocal()
            return inv if isinstance(inv, Sentinel) else self * inv
        if isinstance(other, (int, float, complex, np.number)):
            if other == 0:
                return PoleHit
            return self._new(self.coeffs / other)
        return NotImplemented

    def __rtruediv__(self, other):
        inv = self.reciprocal()
        return inv if isinstance(inv, Sentinel) else inv * other

    # transcendental -----------------------------------------------------
    def exp(self) -> "Jet | Sentinel":
        """``e^f`` via ``(e^f)' = e^f f'``."""
        a = self.coeffs
        if not a[0].real <= OVERFLOW_EXPONENT:
            return Overflow
        m = self.order
        e = np.zeros(m + 1, dtype=complex)
        e[0] = cmath.exp(a[0])
        da = a[1:] * np.arange(1, m + 1)
        with np.errstate(all="ignore"):
            for k in range(1, m + 1):
                e[k] = np.dot(da[:k], e[k - 1 :: -1]) / k
        return self._new(e)

    def log1p(self, const_term: complex | None = None) -> "Jet | Sentinel":
        """``log(1 + f)`` via ``L' = f' / (1 + f)``; ``const_term`` overrides ``L(c)``."""
        a = self.coeffs
        if a[0] == -1:
            return PoleHit
        if const_term is None:
            const_term = cmath.log(1 + a[0])
        denom = (1 + self).reciprocal()
        if isinstance(denom, Sentinel):
            return denom
        m = self.order
        out = np.zeros(m + 1, dtype=complex)
        out[0] = const_term
        if m == 0:
            return self._new(out)
        da = a[1:] * np.arange(1, m + 1)
        with np.errstate(all="ignore"):
            d = np.convolve(da, denom.coeffs)[:m]
        out[1:] = d / np.arange(1, m + 1)
        return self._new(out)

    def log(self, const_term: complex | None = None) -> "Jet | Sentinel":
        a0 = self.coeffs[0]
        if a0 == 0:
            return PoleHit
        if const_term is None:
            const_term = cmath.log(a0)
        return (self / a0 - 1).log1p(const_term)

    # io -----------------------------------------------------------------
    def dumps(self) -> str:
        header = f"center={textio.format_complex_pair(self.center)} m={self.order}"
        return textio.dump_coeffs(header, self.coeffs)

    @classmethod
    def loads(cls, text: str) -> "Jet":
        header, coeffs = textio.load_coeffs(text)
        try:
            center = textio.parse_complex_pair(header["center"])
            m = int(header["m"])
        except KeyError as e:
            raise ValueError(f"missing header field {e}") from None
        if len(coeffs) != m + 1:
            raise ValueError(f"expected {m + 1} coefficients, found {len(coeffs)}")
        return cls(center, coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Jet) and self.center == other.center
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None


def value_of(x) -> complex:
    return x.value if isinstance(x, Jet) else complex(x)


def gexp_b(x, p: Params) -> Checked:
    """``e^(mu x)`` for a scalar or a jet."""
    if isinstance(x, Sentinel):
        return x
    if isinstance(x, Jet):
        w = x * p.mu
        return w if isinstance(w, Sentinel) else w.exp()
    return exp_b(x, p)


def glog1p_b(x, p: Params) -> Checked:
    """Principal ``log_b(1 + x)`` for a scalar or a jet."""
    if isinstance(x, Sentinel):
        return x
    if isinstance(x, Jet):
        if x.value == -1:
            return PoleHit
        L = x.log1p(_log1p(x.value))
        return L if isinstance(L, Sentinel) else L / p.mu
    return log1p_b(x, p)


def glog_b(x, p: Params) -> Checked:
    if isinstance(x, Sentinel):
        return x
    if isinstance(x, Jet):
        L = x.log()
        return L if isinstance(L, Sentinel) else L / p.mu
    return log_b(x, p)
