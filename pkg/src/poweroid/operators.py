"""Delta operators ``theta = phi(D)``, their conjugates, and a named catalog.

Operators are specified in a small text language::

    forward | backward | central | confluent | touchard
    gould:a=RAT,b=RAT
    abel:a=RAT
    series:[RAT,RAT,...]      coefficients of phi from t^0 upward
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import OperatorError, OrderError, SeriesError, SpecError
from .series import (
    Polynomial,
    PowerSeries,
    apply_operator,
    comp_inverse,
    compose,
    format_rational,
    int_pow,
    parse_rational,
)


@dataclass(frozen=True, eq=False)
class DeltaOperator:
    """A validated delta operator series with an optional provenance tag."""

    phi: PowerSeries
    name: str | None = field(default=None)

    def __post_init__(self):
        phi = self.phi
        if phi.order < 2:
            raise OperatorError("a delta operator series needs truncation order >= 2")
        if phi[0] != 0:
            raise OperatorError("constant term nonzero, not a delta operator")
        if phi[1] == 0:
            raise OperatorError("linear term zero, not a delta operator")

    @property
    def order(self) -> int:
        return self.phi.order

    @property
    def k1(self) -> Fraction:
        return self.phi[1]

    @cached_property
    def eta(self) -> PowerSeries:
        """Compositional inverse of ``phi``."""
        return comp_inverse(self.phi)

    def truncate(self, order: int) -> DeltaOperator:
        return DeltaOperator(self.phi.truncate(order), self.name)

    def __eq__(self, other):
        if not isinstance(other, DeltaOperator):
            return NotImplemented
        return self.phi == other.phi

    __hash__ = None

    def __repr__(self):
        tag = self.name or "series"
        return f"DeltaOperator({tag}, order={self.order})"


def normalize(op: DeltaOperator) -> DeltaOperator:
    """Rescale so the linear coefficient is one."""
    return DeltaOperator(op.phi * (1 / op.k1), op.name if op.k1 == 1 else None)


def _order(order: int) -> int:
    if order < 2:
        raise OperatorError("operator truncation order must be at least 2")
    return order


def make_gould(alpha, beta, order: int) -> DeltaOperator:
    """``E^alpha (E^beta - 1) / beta``."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta == 0:
        raise OperatorError("gould operator needs b != 0; the b -> 0 limit is make_abel(a)")
    order = _order(order)
    phi = (PowerSeries.exp_linear(alpha + beta, order) - PowerSeries.exp_linear(alpha, order)) * (1 / beta)
    spec = OperatorSpec("gould", (alpha, beta))
    return DeltaOperator(phi, _catalog_name(spec))


def make_abel(a, order: int) -> DeltaOperator:
    """``D e^{aD}``, the confluent limit of the Gould operator."""
    a = Fraction(a)
    order = _order(order)
    phi = PowerSeries.identity(order) * PowerSeries.exp_linear(a, order)
    return DeltaOperator(phi, OperatorSpec("abel", (a,)).render())


def _catalog_name(spec: OperatorSpec) -> str:
    # Gould parameters that coincide with a named difference keep the short name.
    for short, params in _NAMED_GOULD.items():
        if spec.kind == "gould" and spec.params == params:
            return short
    return spec.render()


_NAMED_GOULD = {
    "forward": (Fraction(0), Fraction(1)),
    "backward": (Fraction(0), Fraction(-1)),
    "central": (Fraction(-1, 2), Fraction(1)),
}

CATALOG_NAMES = ("forward", "backward", "central", "confluent", "gould", "abel", "touchard", "series")


def catalog(name: str, params=(), order: int = 12) -> DeltaOperator:
    """Look up a catalog operator at the given truncation order."""
    order = _order(order)
    params = tuple(params)
    arity = {"gould": 2, "abel": 1}
    if name not in CATALOG_NAMES:
        raise OperatorError(f"unknown operator {name!r}")
    if name in ("forward", "backward", "central", "confluent", "touchard") and params:
        raise OperatorError(f"operator {name!r} takes no parameters")
    if name in arity and len(params) != arity[name]:
        raise OperatorError(f"operator {name!r} takes {arity[name]} parameter(s)")
    if name in _NAMED_GOULD:
        op = make_gould(*_NAMED_GOULD[name], order)
        return DeltaOperator(op.phi, name)
    if name == "confluent":
        return DeltaOperator(PowerSeries.identity(order), "confluent")
    if name == "gould":
        return make_gould(params[0], params[1], order)
    if name == "abel":
        return make_abel(params[0], order)
    if name == "touchard":
        mercator = [Fraction(0)] + [Fraction((-1) ** (m + 1), m) for m in range(1, order + 1)]
        return DeltaOperator(PowerSeries(tuple(mercator)), "touchard")
    # series
    if not params:
        raise OperatorError("series operator needs at least one coefficient")
    if len(params) > order + 1 and any(c != 0 for c in params[order + 1 :]):
        raise OperatorError(f"series has nonzero coefficients beyond order {order}")
    name = OperatorSpec("series", params).render()
    try:
        return DeltaOperator(PowerSeries.from_coeffs(params, order), name)
    except SeriesError as exc:
        raise OperatorError(str(exc)) from exc


def conjugate(op: DeltaOperator) -> DeltaOperator:
    """The operator ``eta = phi^{-1}(D)``."""
    name = None
    if op.name == "forward":
        name = "touchard"
    elif op.name == "touchard":
        name = "forward"
    elif op.name == "confluent":
        name = "confluent"
    return DeltaOperator(op.eta, name)


def op_compose(op1: DeltaOperator, op2: DeltaOperator) -> DeltaOperator:
    """Operator with series ``phi2(phi1(t))``: op1's substitution applied first."""
    if min(op1.order, op2.order) < 2:
        raise OperatorError("composition needs both operators at order >= 2")
    return DeltaOperator(compose(op2.phi, op1.phi))


def generalized_difference(op: DeltaOperator, nu: int, p: Polynomial) -> Fraction:
    """``(theta^nu p)(0)``."""
    if op.order < p.degree:
        raise OrderError(f"insufficient truncation order: polynomial degree {p.degree}, operator order {op.order}")
    if nu == 0:
        return p(Fraction(0))
    if nu > max(p.degree, 0):
        return Fraction(0)
    return apply_operator(int_pow(op.phi, nu), p)(Fraction(0))


# ---------------------------------------------------------------------------
# spec mini-language

_RAT = r"[+-]?[0-9]+(?:/[0-9]+)?"


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    params: tuple[Fraction, ...] = ()

    def render(self) -> str:
        p = [format_rational(x) for x in self.params]
        if self.kind == "gould":
            return f"gould:a={p[0]},b={p[1]}"
        if self.kind == "abel":
            return f"abel:a={p[0]}"
        if self.kind == "series":
            return "series:[" + ",".join(p) + "]"
        return self.kind

    def __str__(self):
        return self.render()

    def build(self, order: int) -> DeltaOperator:
        return DeltaOperator(catalog(self.kind, self.params, order).phi, self.render())


def _expect(text: str, pos: int, literal: str) -> int:
    if not text.startswith(literal, pos):
        found = text[pos : pos + len(literal)] or "end of input"
        raise SpecError(f"expected {literal!r}, found {found!r}", text, pos)
    return pos + len(literal)


def _rational_at(text: str, pos: int) -> tuple[Fraction, int]:
    m = re.compile(_RAT).match(text, pos)
    if not m:
        raise SpecError("expected a rational literal", text, pos)
    try:
        return parse_rational(m.group()), m.end()
    except SeriesError as exc:
        raise SpecError(str(exc), text, pos) from exc


def parse_spec(text: str) -> OperatorSpec:
    """Parse operator spec text; errors carry the offending position."""
    if not isinstance(text, str):
        raise SpecError("operator spec must be a string", str(text), 0)
    head = re.match(r"[a-z]*", text).group()
    if head in ("forward", "backward", "central", "confluent", "touchard"):
        if len(text) != len(head):
            raise SpecError(f"unexpected trailing text after {head!r}", text, len(head))
        return OperatorSpec(head)
    if head == "gould":
        pos = _expect(text, len(head), ":a=")
        a, pos = _rational_at(text, pos)
        pos = _expect(text, pos, ",b=")
        b, pos = _rational_at(text, pos)
        params = (a, b)
    elif head == "abel":
        pos = _expect(text, len(head), ":a=")
        a, pos = _rational_at(text, pos)
        params = (a,)
    elif head == "series":
        pos = _expect(text, len(head), ":[")
        coeffs = []
        c, pos = _rational_at(text, pos)
        coeffs.append(c)
        while text.startswith(",", pos):
            c, pos = _rational_at(text, pos + 1)
            coeffs.append(c)
        pos = _expect(text, pos, "]")
        params = tuple(coeffs)
    else:
        raise SpecError(f"unknown operator name {head or text[:1]!r}", text, 0)
    if pos != len(text):
        raise SpecError("unexpected trailing text", text, pos)
    return OperatorSpec(head, params)


def render_spec(spec: OperatorSpec) -> str:
    return spec.render()


def parse_operator(text: str, order: int) -> DeltaOperator:
    return parse_spec(text).build(order)


def series_spec(op: DeltaOperator) -> OperatorSpec:
    """Spec text reproducing ``op`` exactly at its truncation order."""
    return OperatorSpec("series", op.phi.coeffs)
