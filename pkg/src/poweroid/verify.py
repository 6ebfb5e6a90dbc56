"""Seeded self-check suite: every library invariant as an exact check.

Each check draws its random inputs from a ``random.Random`` seeded by the
caller, so a run is reproducible from ``(suite, seed)`` alone.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import interp, operators, poweroids, series
from .operators import DeltaOperator, catalog, conjugate, make_gould, op_compose
from .series import Polynomial, PowerSeries


# ---------------------------------------------------------------------------
# random inputs


def rand_rational(rng: random.Random, num: int = 6, den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if q or not nonzero:
            return q


def rand_series(rng: random.Random, order: int, const=None) -> PowerSeries:
    coeffs = [rand_rational(rng) for _ in range(order + 1)]
    if const is not None:
        coeffs[0] = Fraction(const)
    return PowerSeries(tuple(coeffs))


def rand_delta(rng: random.Random, order: int, unit: bool = False) -> DeltaOperator:
    """Random delta operator; low-order coefficients only, to bound growth."""
    coeffs = [Fraction(0), Fraction(1) if unit else rand_rational(rng, 3, 2, nonzero=True)]
    coeffs += [rand_rational(rng, 3, 3) if m <= 5 else Fraction(0) for m in range(2, order + 1)]
    return DeltaOperator(PowerSeries(tuple(coeffs)))


def rand_poly(rng: random.Random, degree: int) -> Polynomial:
    coeffs = [rand_rational(rng) for _ in range(degree + 1)]
    if degree >= 0 and coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return Polynomial(coeffs)


CATALOG_SPECS = (
    "forward",
    "backward",
    "central",
    "confluent",
    "touchard",
    "gould:a=1/3,b=2",
    "gould:a=-2,b=1/2",
    "abel:a=1",
    "abel:a=-1/2",
)


def catalog_operators(order: int) -> list[DeltaOperator]:
    return [operators.parse_operator(s, order) for s in CATALOG_SPECS]


# ---------------------------------------------------------------------------
# registry


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


_CHECKS: list[tuple[str, str, Callable[[random.Random], None]]] = []
SUITES = ("all", "series", "operators", "poweroids", "interp")


def check(module: str, name: str):
    def register(fn):
        _CHECKS.append((module, name, fn))
        return fn

    return register


def checks_for(suite: str):
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return [(m, n, f) for m, n, f in _CHECKS if suite in ("all", m)]


def run_suite(suite: str = "all", seed: int = 0) -> list[CheckResult]:
    results = []
    for module, name, fn in checks_for(suite):
        # Per-check streams keep results stable when checks are added or filtered.
        rng = random.Random(f"{seed}:{module}.{name}")
        start = time.perf_counter()
        try:
            fn(rng)
            passed, detail = True, ""
        except AssertionError as exc:
            passed, detail = False, (str(exc) or "assertion failed").splitlines()[0]
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(f"{module}.{name}", passed, detail, time.perf_counter() - start))
    return results


def _eq(a, b, what: str):
    assert a == b, f"{what}: {a!r} != {b!r}"


# ---------------------------------------------------------------------------
# series


@check("series", "ring_laws")
def _ring_laws(rng):
    for _ in range(10):
        n = rng.randint(0, 12)
        a, b, c = (rand_series(rng, n) for _ in range(3))
        _eq(a * b, b * a, "commutativity")
        _eq((a * b) * c, a * (b * c), "associativity")
        _eq(a * (b + c), a * b + a * c, "distributivity")


@check("series", "compositional_inverse")
def _comp_inverse(rng):
    for _ in range(6):
        n = rng.randint(2, 16)
        a = rand_delta(rng, n).phi
        b = series.comp_inverse(a)
        ident = PowerSeries.identity(n)
        _eq(series.compose(a, b), ident, "a(b(t))")
        _eq(series.compose(b, a), ident, "b(a(t))")


@check("series", "exp_log_inverse")
def _exp_log(rng):
    for _ in range(10):
        n = rng.randint(1, 12)
        a = rand_series(rng, n, const=0)
        _eq(series.log_series(series.exp_series(a)), a, "log(exp(a))")
        b = rand_series(rng, n, const=1)
        _eq(series.exp_series(series.log_series(b)), b, "exp(log(b))")


@check("series", "op_at_zero_two_paths")
def _op_at_zero(rng):
    f = rand_series(rng, 10)
    for n in range(11):
        _eq(series.op_at_zero(f, n), series.apply_operator(f, Polynomial.monomial(n))(0), f"n={n}")


def _theorem_operators(rng, order):
    return catalog_operators(order) + [rand_delta(rng, order) for _ in range(3)]


@check("series", "theorem_b")
def _theorem_b(rng):
    for op in _theorem_operators(rng, 10):
        fphi = series.compose(rand_series(rng, 10), op.phi)
        dfphi = series.derivative(fphi)
        for n in range(1, 11):
            _eq(series.op_at_zero(fphi, n), series.op_at_zero(dfphi, n - 1), f"{op!r} n={n}")


@check("series", "theorem_a")
def _theorem_a(rng):
    for op in _theorem_operators(rng, 10):
        fphi = series.compose(rand_series(rng, 10, const=0), op.phi)
        shifted = fphi.shift_down()
        for n in range(1, 11):
            _eq(series.op_at_zero(fphi, n), n * series.op_at_zero(shifted, n - 1), f"{op!r} n={n}")


# ---------------------------------------------------------------------------
# operators


@check("operators", "catalog_normalized")
def _catalog_norm(rng):
    for op in catalog_operators(8):
        assert op.phi[0] == 0 and op.phi[1] == 1, f"{op.name}: phi starts {op.phi[:2]}"


@check("operators", "conjugate_involution")
def _involution(rng):
    for _ in range(20):
        op = rand_delta(rng, rng.randint(2, 12))
        _eq(conjugate(conjugate(op)), op, "conjugate twice")


@check("operators", "compose_associative")
def _assoc(rng):
    for _ in range(8):
        n = rng.randint(2, 10)
        a, b, c = (rand_delta(rng, n) for _ in range(3))
        _eq(op_compose(op_compose(a, b), c), op_compose(a, op_compose(b, c)), "associativity")


@check("operators", "gould_action")
def _gould_action(rng):
    for _ in range(6):
        alpha, beta = rand_rational(rng), rand_rational(rng, nonzero=True)
        phi = make_gould(alpha, beta, 10).phi
        for n in range(1, 11):
            lhs = series.apply_operator(phi, poweroids.gould_factorial(alpha, beta, n))
            _eq(lhs, poweroids.gould_factorial(alpha, beta, n - 1) * n, f"a={alpha} b={beta} n={n}")


@check("operators", "duality")
def _duality(rng):
    N = 8
    for op in catalog_operators(N) + [rand_delta(rng, N)]:
        seq = poweroids.basic_sequence_transfer(op, N)
        f = rand_series(rng, N)
        f_eta = series.compose(f, op.eta)
        for r in range(N + 1):
            lhs = series.apply_operator(f, seq[r])(0)
            _eq(lhs, series.op_at_zero(f_eta, r), f"{op!r} r={r}")
        _eq(poweroids.triangle_second_kind(op, N), poweroids.triangle_first_kind(conjugate(op), N), "gbar vs conj g")


# ---------------------------------------------------------------------------
# poweroids


def _operator_pool(rng, order, n_random):
    return catalog_operators(order) + [rand_delta(rng, order) for _ in range(n_random)]


@check("poweroids", "two_route_generation")
def _two_route(rng):
    for op in _operator_pool(rng, 12, 20):
        _eq(poweroids.basic_sequence_transfer(op, 12), poweroids.basic_sequence_rodrigues(op, 12), repr(op))


@check("poweroids", "defining_action")
def _action(rng):
    for op in _operator_pool(rng, 12, 5):
        seq = poweroids.basic_sequence_transfer(op, 12)
        assert seq[0] == 1, "b_0 != 1"
        for n in range(1, 13):
            assert seq[n](0) == 0, f"b_{n}(0) != 0"
            _eq(series.apply_operator(op.phi, seq[n]), seq[n - 1] * n, f"{op!r} n={n}")


@check("poweroids", "binomial_property")
def _binomial(rng):
    for op in _operator_pool(rng, 10, 2):
        seq = poweroids.basic_sequence_transfer(op, 10)
        for _ in range(25):
            x, y = rand_rational(rng), rand_rational(rng)
            for n in range(11):
                rhs = sum((math.comb(n, k) * seq[k](x) * seq[n - k](y) for k in range(n + 1)), Fraction(0))
                _eq(seq[n](x + y), rhs, f"{op!r} n={n} x={x} y={y}")


@check("poweroids", "shift_invariance")
def _shift(rng):
    for op in _operator_pool(rng, 8, 3):
        for _ in range(5):
            p, h = rand_poly(rng, rng.randint(0, 8)), rand_rational(rng)
            _eq(series.apply_operator(op.phi, p.shift(h)), series.apply_operator(op.phi, p).shift(h), repr(op))


@check("poweroids", "orthogonality")
def _ortho(rng):
    for op in catalog_operators(12):
        res = poweroids.triangle_invert_check(
            poweroids.triangle_first_kind(op, 12), poweroids.triangle_second_kind(op, 12)
        )
        assert res.ok, f"{op.name}: first bad entry {res.witness}"


@check("poweroids", "group_law")
def _group(rng):
    N = 8
    for op in _operator_pool(rng, N, 2):
        seq = poweroids.basic_sequence_transfer(op, N)
        inv = poweroids.basic_sequence_transfer(conjugate(op), N)
        comp = poweroids.umbral_compose(seq, inv)
        for n in range(N + 1):
            _eq(comp[n], Polynomial.monomial(n), f"{op!r} n={n}")
    for _ in range(4):
        a, b = rand_delta(rng, N), rand_delta(rng, N)
        comp = poweroids.umbral_compose(poweroids.basic_sequence_transfer(a, N), poweroids.basic_sequence_transfer(b, N))
        _eq(comp, poweroids.basic_sequence_transfer(op_compose(a, b), N), "umbral vs op_compose")


@check("poweroids", "gould_closed_form")
def _gould_closed(rng):
    for _ in range(6):
        alpha, beta = rand_rational(rng), rand_rational(rng, nonzero=True)
        tri = poweroids.triangle_first_kind(make_gould(alpha, beta, 10), 10)
        for n in range(11):
            _eq(Polynomial(tri.rows[n]), poweroids.gould_factorial(alpha, beta, n), f"a={alpha} b={beta} n={n}")


@check("poweroids", "operator_expansion")
def _mcdc(rng):
    N = 10
    for op in _operator_pool(rng, N, 2):
        gbar = poweroids.triangle_second_kind(op, N)
        power = PowerSeries.constant(1, N)
        for n in range(N + 1):
            for m in range(n, N + 1):
                _eq(power[m], gbar[m, n] * Fraction(math.factorial(n), math.factorial(m)), f"m={m} n={n}")
            power = power * op.phi


def _theta_power_at(op: DeltaOperator, nu: int, p: Polynomial, x0) -> Fraction:
    return series.apply_operator(series.int_pow(op.phi, nu), p)(x0)


@check("poweroids", "generalized_taylor")
def _gtay(rng):
    for op in catalog_operators(8):
        seq = poweroids.basic_sequence_transfer(op, 8)
        for _ in range(10):
            d = rng.randint(0, 8)
            p, h, x0 = rand_poly(rng, d), rand_rational(rng), rand_rational(rng)
            total = sum(
                (seq[nu](h) * _theta_power_at(op, nu, p, x0) / math.factorial(nu) for nu in range(d + 1)),
                Fraction(0),
            )
            _eq(total, p(x0 + h), f"{op.name} h={h} x0={x0}")


@check("poweroids", "generalized_taylor_derivative_form")
def _gtay2(rng):
    for op in catalog_operators(9):
        seq = poweroids.basic_sequence_transfer(op, 9)
        dphi = series.derivative(op.phi)
        for _ in range(5):
            d = rng.randint(0, 8)
            p, h, x0 = rand_poly(rng, d), rand_rational(rng), rand_rational(rng)
            dp = series.apply_operator(dphi, p)
            total = sum(
                (
                    seq[nu + 1].divide_by_x()(h) * _theta_power_at(op, nu, dp, x0) / math.factorial(nu)
                    for nu in range(d + 1)
                ),
                Fraction(0),
            )
            _eq(total, p(x0 + h), f"{op.name} h={h} x0={x0}")


@check("poweroids", "central_hansen")
def _hansen(rng):
    seq = poweroids.central_hansen(12)
    for n in range(13):
        _eq(seq[n], poweroids.gould_factorial(Fraction(-1, 2), 1, n), f"n={n}")
    _eq(seq, poweroids.basic_sequence_transfer(catalog("central", order=12), 12), "hansen vs transfer")


@check("poweroids", "connection_constants")
def _connection(rng):
    ops = catalog_operators(8)
    for a in ops:
        for b in ops:
            tri = poweroids.connection_constants(a, b, 8)
            _eq([list(r) for r in tri.rows], poweroids.connection_by_solve(a, b, 8), f"{a.name} -> {b.name}")


@check("poweroids", "eta_in_theta")
def _eta_theta(rng):
    N = 10
    for op in _operator_pool(rng, N, 2):
        e = poweroids.eta_in_theta(op, N)
        _eq(e, poweroids.double_conjugate_series(op), repr(op))
        _eq(series.compose(e, series.compose(op.phi, op.phi)), PowerSeries.identity(N), "compose back")


# ---------------------------------------------------------------------------
# interp


def _interp_corpus(rng, count, max_degree):
    return [rand_poly(rng, rng.randint(0, max_degree)) for _ in range(count)]


@check("interp", "round_trip")
def _round_trip(rng):
    for op in _operator_pool(rng, 12, 2):
        for f in _interp_corpus(rng, 6, 12):
            _eq(interp.reconstruct(interp.expand(op, f)), f, repr(op))


@check("interp", "theta_inverse_identities")
def _thinv(rng):
    for op in _operator_pool(rng, 11, 2):
        for p in _interp_corpus(rng, 5, 10):
            _eq(series.apply_operator(op.phi, interp.theta_inverse(op, p)), p, "theta Theta")
            _eq(interp.theta_inverse(op, series.apply_operator(op.phi, p)), p - p(0), "Theta theta")


@check("interp", "aitken_consistency")
def _aitken(rng):
    for op in catalog_operators(10):
        for f in _interp_corpus(rng, 4, 8):
            _eq(interp.aitken_sum(op, f), interp.reconstruct(interp.expand(op, f)), op.name)
        term = Polynomial([0, 1])
        one = interp.theta_inverse(op, Polynomial([1]))
        _eq(one, term, "Theta 1 = x")


@check("interp", "expand_in_phi_closed_forms")
def _expexp(rng):
    fwd, conf = catalog("forward", order=10), catalog("confluent", order=10)
    for _ in range(5):
        r = rand_rational(rng)
        falling = Fraction(1)
        for n, c in enumerate(interp.expand_in_phi(r, fwd, 10)):
            _eq(c, falling / math.factorial(n), f"forward r={r} n={n}")
            falling *= r - n
        for n, c in enumerate(interp.expand_in_phi(r, conf, 10)):
            _eq(c, r**n / math.factorial(n), f"confluent r={r} n={n}")


@check("interp", "central_termination")
def _termination(rng):
    central = catalog("central", order=16)
    for r in range(6):
        coeffs = interp.expand_in_phi(r, central, 16)
        for k in range(r + 1, 9):
            _eq(coeffs[2 * k], 0, f"r={r} 2k={2 * k}")


@check("interp", "trig_cos_expansion")
def _trig(rng):
    samples = [rng.uniform(0.0, math.pi) for _ in range(20)]
    for n in range(1, 7):
        err = interp.trig_check(n, samples)
        assert err < 1e-10, f"n={n}: max error {err:.3g}"
