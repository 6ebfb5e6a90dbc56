"""Gregory-Newton expansion in a poweroid basis, the inverse operator Theta,
and expansions of the exponential in powers of ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import OrderError, PoweroidError
from .operators import DeltaOperator, catalog, generalized_difference
from .poweroids import basic_sequence_transfer
from .series import Polynomial


@dataclass(frozen=True)
class PoweroidExpansion:
    """``f = sum coeffs[nu] * b_nu`` with ``coeffs[nu] = (theta^nu f)(0) / nu!``."""

    op: DeltaOperator
    coeffs: tuple[Fraction, ...]

    def __eq__(self, other):
        if not isinstance(other, PoweroidExpansion):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None


def expand(op: DeltaOperator, f: Polynomial) -> PoweroidExpansion:
    d = max(f.degree, 0)
    if op.order < d:
        raise OrderError(f"insufficient truncation order: degree {d}, operator order {op.order}")
    coeffs = tuple(generalized_difference(op, nu, f) / math.factorial(nu) for nu in range(d + 1))
    return PoweroidExpansion(op, coeffs)


def from_differences(op: DeltaOperator, differences: Iterable) -> PoweroidExpansion:
    """Expansion from tabulated values ``(theta^nu f)(0)``, nu = 0, 1, ..."""
    diffs = [Fraction(d) for d in differences]
    if not diffs:
        raise PoweroidError("difference table is empty")
    return PoweroidExpansion(op, tuple(d / math.factorial(nu) for nu, d in enumerate(diffs)))


def reconstruct(e: PoweroidExpansion) -> Polynomial:
    seq = basic_sequence_transfer(e.op, len(e.coeffs) - 1)
    acc = Polynomial([0])
    for c, b in zip(e.coeffs, seq):
        if c:
            acc = acc + b * c
    return acc


def interpolate(op: DeltaOperator, differences: Sequence) -> Polynomial:
    """Polynomial whose generalized differences at zero are ``differences``."""
    return reconstruct(from_differences(op, differences))


def theta_inverse(op: DeltaOperator, p: Polynomial) -> Polynomial:
    """Right inverse of theta with no ``b_0`` component in its image."""
    d = max(p.degree, 0)
    if op.order < d + 1:
        raise OrderError(f"insufficient truncation order: need {d + 1}, operator order {op.order}")
    coeffs = expand(op, p).coeffs
    seq = basic_sequence_transfer(op, d + 1)
    acc = Polynomial([0])
    for nu, c in enumerate(coeffs):
        if c:
            acc = acc + seq[nu + 1] * (c / (nu + 1))
    return acc


def aitken_sum(op: DeltaOperator, f: Polynomial) -> Polynomial:
    """``f(0) + sum_{nu>=1} (Theta^nu 1) (theta^nu f)(0)``.

    For an operator with unit linear coefficient ``Theta 1 = x``, so the
    terms are equally ``Theta^{nu-1}(x)``.
    """
    d = max(f.degree, 0)
    acc = Polynomial([f(Fraction(0))])
    term = Polynomial([1])
    for nu in range(1, d + 1):
        term = theta_inverse(op, term)
        acc = acc + term * generalized_difference(op, nu, f)
    return acc


def expand_in_phi(r, op: DeltaOperator, terms: int) -> list[Fraction]:
    """Coefficients ``b_n(r) / n!`` of ``e^{r x} = sum_n (.) phi(x)^n``, n = 0..terms."""
    if op.order < terms:
        raise OrderError(f"insufficient truncation order: need {terms}, operator order {op.order}")
    r = Fraction(r)
    seq = basic_sequence_transfer(op, terms)
    return [seq[n](r) / math.factorial(n) for n in range(terms + 1)]


def trig_check(n: int, phi_samples: Sequence[float]) -> float:
    """Max error of ``cos(n p) = sum_k n^[2k]/(2k)! (-4 sin^2(p/2))^k`` over samples."""
    if not 1 <= n <= 8:
        raise PoweroidError("trig_check supports 1 <= n <= 8")
    coeffs = expand_in_phi(n, catalog("central", order=2 * n + 2), 2 * n + 2)
    even = [float(coeffs[2 * k]) for k in range(n + 2)]
    worst = 0.0
    for p in phi_samples:
        s = -4.0 * math.sin(p / 2.0) ** 2
        total = sum(c * s**k for k, c in enumerate(even))
        worst = max(worst, abs(total - math.cos(n * p)))
    return worst
