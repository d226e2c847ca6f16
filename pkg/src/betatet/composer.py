"""Inner infinite compositions ``q_1(s, q_2(s, ... q_n(s, z)))``.

The terms are assumed to converge to a constant ``A`` in a summable way; the
composition is then truncated at the first term that sits within ``tol`` of
``A`` and evaluated from the inside out.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .core import Checked, NonConvergent, Sentinel, first_sentinel

TermFn = Callable[[int, complex, Checked], Checked]

DEFAULT_J_MAX = 200


@dataclass(frozen=True)
class CompositionTerm:
    """A family ``q_j(s, z)`` (``j >= 1``) together with its limit ``A``."""

    eval: TermFn
    limit_A: complex = 0j

    def __call__(self, j: int, s: complex, z: Checked) -> Checked:
        return self.eval(j, s, z)


@dataclass(frozen=True)
class CompositionResult:
    value: Checked
    terms_used: int
    tail_bound: float


def truncation_index(term: CompositionTerm, s: complex, z0: complex, tol: float,
                     j_max: int = DEFAULT_J_MAX) -> tuple[int, float] | Sentinel:
    """Smallest ``n <= j_max`` with ``|q_n(s, z0) - A| < tol``."""
    for n in range(1, j_max + 1):
        q = term(n, s, z0)
        if isinstance(q, Sentinel):
            return q
        d = abs(q - term.limit_A)
        if d < tol:
            return n, d
    return NonConvergent


def compose_range(term: CompositionTerm, s: complex, z: Checked, j_from: int,
                  j_to: int) -> Checked:
    """``q_{j_from}(s, ... q_{j_to}(s, z))``; an empty range returns ``z``."""
    for j in range(j_to, j_from - 1, -1):
        z = term(j, s, z)
        if isinstance(z, Sentinel):
            return z
    return z


def inner_compose(term: CompositionTerm, s: complex, z0: complex = 0j,
                  tol: float = 1e-14, j_max: int = DEFAULT_J_MAX) -> CompositionResult:
    if tol <= 0 or j_max < 1:
        raise ValueError("need tol > 0 and j_max >= 1")
    cut = truncation_index(term, s, z0, tol, j_max)
    if isinstance(cut, Sentinel):
        return CompositionResult(cut, j_max if cut is NonConvergent else 0, float("inf"))
    n, tail = cut
    value = compose_range(term, s, z0, 1, n)
    return CompositionResult(value, n, tail)


def tail_summability(term: CompositionTerm, s_samples: Iterable[complex],
                     z_samples: Iterable[complex], j_from: int, j_to: int) -> Checked:
    """``sum_j max_{s,z} |q_j(s, z) - A|`` over ``j_from..j_to``.

    A bounded, slowly growing value as ``j_to`` increases is the numeric
    witness that the composition converges uniformly on the samples.
    """
    s_samples = list(s_samples)
    z_samples = list(z_samples)
    if not s_samples or not z_samples or j_from > j_to:
        raise ValueError("need non-empty samples and j_from <= j_to")
    total = 0.0
    for j in range(j_from, j_to + 1):
        vals = [term(j, s, z) for s in s_samples for z in z_samples]
        bad = first_sentinel(*vals)
        if bad is not None:
            return bad
        total += max(abs(v - term.limit_A) for v in vals)
    return total
