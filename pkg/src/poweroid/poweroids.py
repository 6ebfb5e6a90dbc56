"""Poweroid (basic polynomial) sequences and their coefficient triangles.

For a delta operator with series ``phi`` and conjugate ``eta``::

    b_n(x) = sum_nu g(n, nu) x^nu,      g(n, nu) = n!/nu! [t^n] eta^nu
    x^n    = sum_nu gbar(n, nu) b_nu,   gbar(n, nu) = n!/nu! [t^n] phi^nu

Both triangles are stored as plain coefficients, row ``n`` and column ``nu``,
so that composing sequences is ordinary matrix multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import OrderError, PoweroidError
from .operators import DeltaOperator, catalog, op_compose
from .series import (
    X,
    Polynomial,
    PowerSeries,
    apply_operator,
    compose,
    derivative,
    int_pow,
    reciprocal,
)


@dataclass(frozen=True)
class PoweroidSequence:
    op: DeltaOperator
    polys: tuple[Polynomial, ...]

    @property
    def N(self) -> int:
        return len(self.polys) - 1

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        if not isinstance(other, PoweroidSequence):
            return NotImplemented
        return self.polys == other.polys

    __hash__ = None

    def coefficient_rows(self) -> list[list[Fraction]]:
        return [[p[nu] for nu in range(n + 1)] for n, p in enumerate(self.polys)]


TRIANGLE_KINDS = ("g", "gbar")


@dataclass(frozen=True, eq=False)
class CoefficientTriangle:
    """Lower-triangular rational matrix; ``rows[n]`` has ``n + 1`` entries."""

    rows: tuple[tuple[Fraction, ...], ...]
    kind: str = "g"
    operator: str | None = None

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.kind not in TRIANGLE_KINDS:
            raise PoweroidError(f"unknown triangle kind {self.kind!r}")
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise PoweroidError(f"triangle row {n} has {len(row)} entries, expected {n + 1}")
        if rows and rows[0][0] != 1:
            raise PoweroidError("triangle entry (0,0) must be 1")
        for n, row in enumerate(rows):
            if n and row[0] != 0:
                raise PoweroidError(f"triangle entry ({n},0) must vanish")
            if row[n] == 0:
                raise PoweroidError(f"triangle diagonal entry ({n},{n}) is zero")

    @property
    def N(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, index):
        n, nu = index
        return self.rows[n][nu] if nu <= n else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, CoefficientTriangle):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None

    def __matmul__(self, other: CoefficientTriangle) -> list[list[Fraction]]:
        if self.N != other.N:
            raise PoweroidError(f"triangle size mismatch: {self.N} vs {other.N}")
        return _tri_matmul(self.rows, other.rows)

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def differences_of_nothing(self) -> list[list[Fraction]]:
        """Rescale a ``gbar`` triangle to ``theta^nu 0^n = nu! gbar(n, nu)``."""
        return [[math.factorial(nu) * c for nu, c in enumerate(row)] for row in self.rows]


def _tri_matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(i + 1):
            row.append(sum((a[i][k] * b[k][j] for k in range(j, i + 1)), Fraction(0)))
        out.append(row)
    return out


def _need(op: DeltaOperator, N: int):
    if N < 0:
        raise PoweroidError("sequence length must be non-negative")
    if op.order < N:
        raise OrderError(f"insufficient truncation order: need {N}, operator has {op.order}")


def basic_sequence_transfer(op: DeltaOperator, N: int) -> PoweroidSequence:
    """Poweroids from powers of the conjugate series ``eta``."""
    _need(op, N)
    eta = op.eta
    powers = [PowerSeries.constant(1, eta.order)]
    for _ in range(N):
        powers.append(powers[-1] * eta)
    polys = []
    for n in range(N + 1):
        fn = math.factorial(n)
        polys.append(Polynomial([Fraction(fn, math.factorial(nu)) * powers[nu][n] for nu in range(n + 1)]))
    return PoweroidSequence(op, tuple(polys))


def basic_sequence_rodrigues(op: DeltaOperator, N: int) -> PoweroidSequence:
    """Poweroids by ``b_n = x (1/phi') b_{n-1}``."""
    _need(op, N)
    inv_dphi = reciprocal(derivative(op.phi))
    polys = [Polynomial([1])]
    for _ in range(1, N + 1):
        polys.append(apply_operator(inv_dphi, polys[-1]).times_x())
    return PoweroidSequence(op, tuple(polys))


def gould_factorial(alpha, beta, n: int) -> Polynomial:
    """``x (x - n a - b) (x - n a - 2b) ... (x - n a - (n-1) b)``."""
    if n < 0:
        raise PoweroidError("factorial index must be non-negative")
    if n == 0:
        return Polynomial([1])
    alpha, beta = Fraction(alpha), Fraction(beta)
    p = X
    for j in range(1, n):
        p = p * Polynomial([-(n * alpha + j * beta), 1])
    return p


def triangle_first_kind(op: DeltaOperator, N: int) -> CoefficientTriangle:
    seq = basic_sequence_transfer(op, N)
    return CoefficientTriangle(tuple(map(tuple, seq.coefficient_rows())), "g", op.name)


def triangle_second_kind(op: DeltaOperator, N: int) -> CoefficientTriangle:
    """``gbar(n, nu) = (theta^nu 0^n) / nu!``."""
    _need(op, N)
    rows = [[Fraction(0)] * (n + 1) for n in range(N + 1)]
    power = PowerSeries.constant(1, op.order)
    for nu in range(N + 1):
        for n in range(nu, N + 1):
            rows[n][nu] = Fraction(math.factorial(n), math.factorial(nu)) * power[n]
        power = power * op.phi
    return CoefficientTriangle(tuple(map(tuple, rows)), "gbar", op.name)


class InversionCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int, Fraction] | None


def triangle_invert_check(g: CoefficientTriangle, gbar: CoefficientTriangle) -> InversionCheck:
    """Check ``g @ gbar`` is the identity; on failure report the first bad entry."""
    if g.N != gbar.N:
        raise PoweroidError(f"triangle size mismatch: {g.N} vs {gbar.N}")
    if g.kind == gbar.kind:
        raise PoweroidError("need one first-kind and one second-kind triangle")
    if g.kind == "gbar":
        g, gbar = gbar, g
    prod = g @ gbar
    for m, row in enumerate(prod):
        for n, value in enumerate(row):
            if value != (1 if m == n else 0):
                return InversionCheck(False, (m, n, value))
    return InversionCheck(True, None)


def umbral_compose(seq1: PoweroidSequence, seq2: PoweroidSequence) -> PoweroidSequence:
    """Replace each ``x^i`` in ``seq2``'s polynomials by ``seq1``'s ``b_i``."""
    if seq1.N != seq2.N:
        raise PoweroidError(f"sequence length mismatch: {seq1.N} vs {seq2.N}")
    polys = []
    for b in seq2.polys:
        acc = Polynomial([0])
        for i, c in enumerate(b.coeffs):
            if c:
                acc = acc + seq1.polys[i] * c
        polys.append(acc)
    return PoweroidSequence(op_compose(seq1.op, seq2.op), tuple(polys))


def connection_operator(op1: DeltaOperator, op2: DeltaOperator) -> DeltaOperator:
    """The operator ``phi1(phi2^{-1}(t))`` whose poweroids give the connection constants."""
    order = min(op1.order, op2.order)
    return DeltaOperator(compose(op1.phi.truncate(order), op2.eta.truncate(order)))


def connection_constants(op1: DeltaOperator, op2: DeltaOperator, N: int, verify: bool = False) -> CoefficientTriangle:
    """Entry ``(n, m)`` is the coefficient of ``b2_m`` in ``b1_n``."""
    _need(op1, N)
    _need(op2, N)
    tri = triangle_first_kind(connection_operator(op1, op2), N)
    if verify:
        oracle = connection_by_solve(op1, op2, N)
        if tri.rows != tuple(map(tuple, oracle)):
            raise PoweroidError("connection constants disagree with basis-change solve")
    return tri


def connection_by_solve(op1: DeltaOperator, op2: DeltaOperator, N: int) -> list[list[Fraction]]:
    """Independent route: solve ``C @ B2 = B1`` for lower-triangular ``C``."""
    b1 = basic_sequence_rodrigues(op1, N).coefficient_rows()
    b2 = basic_sequence_rodrigues(op2, N).coefficient_rows()
    c = [[Fraction(0)] * (n + 1) for n in range(N + 1)]
    for n in range(N + 1):
        # back-substitute from the highest power of x down
        for m in range(n, -1, -1):
            s = b1[n][m] - sum((c[n][k] * b2[k][m] for k in range(m + 1, n + 1)), Fraction(0))
            c[n][m] = s / b2[m][m]
    return c


def hansen_recursion(N: int, m2: Polynomial | None = None) -> list[Polynomial]:
    """Central factorials ``M_n / 2^n`` from ``M_m = (4x^2 - (m-2)^2) M_{m-2}``.

    ``m2`` overrides the second starting value (default ``4x^2``).
    """
    if N < 1:
        raise PoweroidError("Hansen recursion needs N >= 1")
    if m2 is None:
        m2 = Polynomial([0, 0, 4])
    moments = [Polynomial([1]), Polynomial([0, 2]), m2]
    for m in range(3, N + 1):
        moments.append(Polynomial([-((m - 2) ** 2), 0, 4]) * moments[m - 2])
    return [moments[n] * Fraction(1, 2**n) for n in range(N + 1)]


def central_hansen(N: int) -> PoweroidSequence:
    return PoweroidSequence(catalog("central", order=max(N, 2)), tuple(hansen_recursion(N)))


def eta_in_theta(op: DeltaOperator, N: int) -> PowerSeries:
    """``eta`` expanded in powers of ``theta``: coefficient m is ``(eta b_m)(0) / m!``."""
    _need(op, N)
    seq = basic_sequence_transfer(op, N)
    eta = op.eta
    coeffs = [apply_operator(eta, seq[m])(Fraction(0)) / math.factorial(m) for m in range(N + 1)]
    return PowerSeries(tuple(coeffs))


def double_conjugate_series(op: DeltaOperator) -> PowerSeries:
    """``eta(eta(t))``."""
    return compose(op.eta, op.eta)
