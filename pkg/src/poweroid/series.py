"""Exact rational scalars, truncated formal power series and polynomials.

A :class:`PowerSeries` carries its truncation order explicitly: coefficients
are trusted through ``t**order`` and every operation reports the order up to
which its own result is exact.  Scalars are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import OrderError, SeriesError

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]int[/posint]`` with no embedded whitespace."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise SeriesError(f"malformed rational literal {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise SeriesError(f"zero denominator in rational literal {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fractions(values: Iterable) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        if isinstance(v, float):
            raise SeriesError("floating-point coefficients are not accepted")
        out.append(parse_rational(v) if isinstance(v, str) else Fraction(v))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Truncated series ``sum coeffs[m] t**m`` exact through ``t**order``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = _fractions(self.coeffs)
        if not coeffs:
            raise SeriesError("a power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> PowerSeries:
        """Build a series, zero-padding or truncating to ``order``."""
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("truncation order must be non-negative")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c, order: int) -> PowerSeries:
        return cls.from_coeffs([c], order)

    @classmethod
    def identity(cls, order: int) -> PowerSeries:
        """The series ``t``."""
        return cls.from_coeffs([0, 1], order)

    @classmethod
    def exp_linear(cls, c, order: int) -> PowerSeries:
        """``exp(c t)`` truncated to ``order``."""
        c = Fraction(c)
        return cls(tuple(c**m / math.factorial(m) for m in range(order + 1)))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, m):
        if isinstance(m, slice):
            return self.coeffs[m]
        if m < 0:
            raise IndexError(m)
        if m > self.order:
            raise OrderError(f"coefficient t^{m} is beyond truncation order {self.order}")
        return self.coeffs[m]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def __repr__(self):
        body = ", ".join(format_rational(c) for c in self.coeffs)
        return f"PowerSeries([{body}], order={self.order})"

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise OrderError(f"cannot raise truncation order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return series_arith(self, other, "add")

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return series_arith(self, other, "sub")

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_arith(self, other, "mul")
        if isinstance(other, (int, Fraction)):
            return series_arith(self, None, "scale", other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return series_arith(self, None, "scale", -1)

    def __pow__(self, k: int):
        return int_pow(self, k)

    def __call__(self, other: PowerSeries) -> PowerSeries:
        return compose(self, other)

    def shift_down(self) -> PowerSeries:
        """Divide by ``t``; requires a vanishing constant term."""
        if self.coeffs[0] != 0:
            raise SeriesError("cannot divide by t: constant term is nonzero")
        if self.order == 0:
            raise OrderError("dividing an order-0 series by t leaves no coefficients")
        return PowerSeries(self.coeffs[1:])


def series_arith(a: PowerSeries, b: PowerSeries | None, kind: str, c=None) -> PowerSeries:
    """Ring operations; ``kind`` is one of add, sub, mul, scale (with ``c``)."""
    if kind == "scale":
        c = Fraction(c)
        return PowerSeries(tuple(c * x for x in a.coeffs))
    n = min(a.order, b.order)
    if kind == "add":
        return PowerSeries(tuple(a.coeffs[m] + b.coeffs[m] for m in range(n + 1)))
    if kind == "sub":
        return PowerSeries(tuple(a.coeffs[m] - b.coeffs[m] for m in range(n + 1)))
    if kind == "mul":
        return PowerSeries(_mul(a.coeffs, b.coeffs, n))
    raise SeriesError(f"unknown series operation {kind!r}")


def _mul(x: Sequence[Fraction], y: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(x[: n + 1]):
        if xi == 0:
            continue
        for j in range(n + 1 - i):
            yj = y[j]
            if yj:
                out[i + j] += xi * yj
    return tuple(out)


def derivative(a: PowerSeries) -> PowerSeries:
    if a.order < 1:
        raise OrderError("an order-0 series carries no derivative information")
    return PowerSeries(tuple((m + 1) * a.coeffs[m + 1] for m in range(a.order)))


def integral(a: PowerSeries) -> PowerSeries:
    """Antiderivative with zero constant term; order grows by one."""
    return PowerSeries((Fraction(0),) + tuple(c / (m + 1) for m, c in enumerate(a.coeffs)))


def reciprocal(a: PowerSeries) -> PowerSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise SeriesError("not invertible as a series: constant term is zero")
    r = [1 / a0]
    for m in range(1, a.order + 1):
        s = sum((a.coeffs[k] * r[m - k] for k in range(1, m + 1)), Fraction(0))
        r.append(-s / a0)
    return PowerSeries(tuple(r))


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """``outer(inner(t))``; ``inner`` must have zero constant term."""
    if inner.coeffs[0] != 0:
        raise SeriesError("cannot compose: inner series has a nonzero constant term")
    n = min(outer.order, inner.order)
    inner_c = inner.coeffs[: n + 1]
    acc: tuple[Fraction, ...] = (outer.coeffs[n],) + (Fraction(0),) * n
    # Horner's scheme; each multiplication by inner raises the valuation by one.
    for m in range(n - 1, -1, -1):
        acc = _mul(acc, inner_c, n)
        acc = (acc[0] + outer.coeffs[m],) + acc[1:]
    return PowerSeries(acc)


def comp_inverse(a: PowerSeries) -> PowerSeries:
    """Compositional inverse ``b`` with ``a(b(t)) = t`` through ``a.order``.

    Solved order by order: the coefficient of ``t**m`` in ``a(b)`` equals
    ``a_1 b_m`` plus terms involving only ``b_1 .. b_{m-1}``.
    """
    if a.order < 1 or a.coeffs[0] != 0 or a.coeffs[1] == 0:
        raise SeriesError("not a delta-operator series: need zero constant and nonzero linear term")
    n = a.order
    a1 = a.coeffs[1]
    b = [Fraction(0)] * (n + 1)
    b[1] = 1 / a1
    # powers[k][m] = [t^m] b^k, filled column by column as b becomes known
    powers = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    powers[1][1] = b[1]
    for m in range(2, n + 1):
        for k in range(2, m + 1):
            # [t^m] b^k = sum_j b_j [t^(m-j)] b^(k-1); only j <= m-k+1 contribute
            powers[k][m] = sum(
                (b[j] * powers[k - 1][m - j] for j in range(1, m - k + 2)), Fraction(0)
            )
        rest = sum((a.coeffs[k] * powers[k][m] for k in range(2, m + 1)), Fraction(0))
        b[m] = -rest / a1
        powers[1][m] = b[m]
    return PowerSeries(tuple(b))


def exp_series(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] != 0:
        raise SeriesError("exp_series needs a zero constant term")
    n = a.order
    e = [Fraction(1)]
    # e' = a' e
    for m in range(1, n + 1):
        s = sum((k * a.coeffs[k] * e[m - k] for k in range(1, m + 1)), Fraction(0))
        e.append(s / m)
    return PowerSeries(tuple(e))


def log_series(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] != 1:
        raise SeriesError("log_series needs constant term one")
    n = a.order
    out = [Fraction(0)]
    # a l' = a'
    for m in range(1, n + 1):
        s = sum((k * out[k] * a.coeffs[m - k] for k in range(1, m)), Fraction(0))
        out.append((m * a.coeffs[m] - s) / m)
    return PowerSeries(tuple(out))


def int_pow(a: PowerSeries, k: int) -> PowerSeries:
    if k < 0:
        raise SeriesError("negative powers are not supported; use reciprocal")
    result = PowerSeries.constant(1, a.order)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def op_at_zero(f: PowerSeries, n: int) -> Fraction:
    """Value of ``f(D) x**n`` at ``x = 0``, i.e. ``n! [t^n] f``."""
    if n > f.order:
        raise OrderError(f"insufficient truncation order: need {n}, have {f.order}")
    return math.factorial(n) * f.coeffs[n]


def apply_operator(f: PowerSeries, p: Polynomial) -> Polynomial:
    """Apply the differential operator ``f(D)`` to a polynomial."""
    d = p.degree
    if f.order < max(d, 0):
        raise OrderError(f"insufficient truncation order: polynomial degree {d}, series order {f.order}")
    out = [Fraction(0)] * (len(p.coeffs))
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        # D^m x^i = i!/(i-m)! x^(i-m)
        falling = 1
        for m in range(i + 1):
            fm = f.coeffs[m]
            if fm:
                out[i - m] += fm * falling * c
            falling *= i - m
    return Polynomial(out)


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Exact polynomial ``sum coeffs[m] x**m`` over the rationals."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = list(_fractions(self.coeffs))
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs) or (Fraction(0),))

    @classmethod
    def monomial(cls, n: int, c=1) -> Polynomial:
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        terms = []
        for m in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[m]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            mono = "" if m == 0 else ("x" if m == 1 else f"x^{m}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __getitem__(self, m: int) -> Fraction:
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[m] + other[m] for m in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def derivative(self, k: int = 1) -> Polynomial:
        coeffs = list(self.coeffs)
        for _ in range(k):
            coeffs = [m * coeffs[m] for m in range(1, len(coeffs))] or [0]
        return Polynomial(coeffs)

    def substitute(self, q: Polynomial) -> Polynomial:
        """``self(q(x))``."""
        acc = Polynomial([0])
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def shift(self, h) -> Polynomial:
        """``self(x + h)``."""
        return self.substitute(Polynomial([h, 1]))

    def scale_argument(self, c) -> Polynomial:
        """``self(c x)``."""
        c = Fraction(c)
        return Polynomial([a * c**m for m, a in enumerate(self.coeffs)])

    def times_x(self) -> Polynomial:
        return Polynomial((Fraction(0),) + self.coeffs)

    def divide_by_x(self) -> Polynomial:
        if self.coeffs[0] != 0:
            raise SeriesError("polynomial does not vanish at zero; cannot divide by x")
        return Polynomial(self.coeffs[1:] or (0,))


X = Polynomial([0, 1])
