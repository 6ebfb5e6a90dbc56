import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import delta_st, poly_st, rationals, series_st
from poweroid.errors import OrderError, SeriesError
from poweroid.series import (
    X,
    Polynomial,
    PowerSeries,
    apply_operator,
    comp_inverse,
    compose,
    derivative,
    exp_series,
    format_rational,
    int_pow,
    log_series,
    op_at_zero,
    parse_rational,
    reciprocal,
    series_arith,
)


def S(*coeffs):
    return PowerSeries(tuple(F(c) for c in coeffs))


def exp_t(order, c=1):
    return PowerSeries(tuple(F(c) ** m / math.factorial(m) for m in range(order + 1)))


def forward_phi(order):
    return exp_t(order) - PowerSeries.constant(1, order)


def mercator(order):
    return PowerSeries((F(0),) + tuple(F((-1) ** (m + 1), m) for m in range(1, order + 1)))


class TestRationalLiterals:
    @pytest.mark.parametrize("text,value", [("-3/4", F(-3, 4)), ("0", F(0)), ("7", F(7)), ("+2/6", F(1, 3))])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["", "1/", "/2", "1 /2", " 3", "1/0", "1.5", "1/-2", "--1", "1e3"])
    def test_rejects(self, text):
        with pytest.raises(SeriesError):
            parse_rational(text)

    @given(rationals)
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q

    def test_format_lowest_terms(self):
        assert format_rational(F(6, -8)) == "-3/4"
        assert format_rational(F(10, 5)) == "2"


class TestArithmetic:
    def test_add(self):
        assert series_arith(S(0, 1, 0), S(0, 0, 1), "add").coeffs == S(0, 1, 1).coeffs

    def test_mul(self):
        r = series_arith(S(0, 1, 0, 0, 0), S(0, 1, 0, 0, 0), "mul")
        assert r.coeffs == S(0, 0, 1, 0, 0).coeffs and r.order == 4

    def test_scale(self):
        assert series_arith(S(0, 1, F(1, 2)), None, "scale", 2).coeffs == S(0, 2, 1).coeffs

    def test_binary_order_is_min(self):
        assert (S(1, 2, 3) + S(1, 1)).order == 1
        assert (S(1, 2, 3) * S(1, 1, 1, 1)).order == 2

    def test_equality_up_to_min_order(self):
        assert S(1, 2, 3) == S(1, 2)
        assert S(1, 2, 3) != S(1, 3)

    def test_coefficients_stay_normalized(self):
        r = S(F(1, 2), F(1, 3)) * S(F(2, 1), F(3, 1))
        assert all(math.gcd(c.numerator, c.denominator) == 1 for c in r)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_ring_laws(self, data):
        n = data.draw(st.integers(0, 12))
        a, b, c = (data.draw(series_st(n, n)) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a


class TestDerivative:
    def test_exp(self):
        r = derivative(S(1, 1, F(1, 2), F(1, 6)))
        assert r.coeffs == S(1, 1, F(1, 2)).coeffs and r.order == 2

    def test_identity(self):
        assert derivative(S(0, 1, 0, 0)).coeffs == S(1, 0, 0).coeffs

    def test_forward_phi(self):
        r = derivative(forward_phi(5))
        assert r.order == 4 and r.coeffs == exp_t(4).coeffs

    def test_order_zero_rejected(self):
        with pytest.raises(OrderError):
            derivative(S(3))


class TestReciprocal:
    def test_one(self):
        assert reciprocal(S(1, 0, 0)).coeffs == S(1, 0, 0).coeffs

    def test_geometric(self):
        assert reciprocal(S(1, 1)).coeffs == S(1, -1).coeffs

    def test_exp(self):
        r = reciprocal(exp_t(4))
        assert r.coeffs == exp_t(4, -1).coeffs
        assert exp_t(4) * r == PowerSeries.constant(1, 4)

    def test_not_invertible(self):
        with pytest.raises(SeriesError, match="not invertible"):
            reciprocal(S(0, 1))

    @settings(max_examples=40, deadline=None)
    @given(series_st(const=3))
    def test_multiply_back(self, a):
        assert a * reciprocal(a) == PowerSeries.constant(1, a.order)


class TestCompose:
    @given(series_st(min_order=1))
    def test_identity_inner(self, f):
        assert compose(f, PowerSeries.identity(f.order)).coeffs == f.coeffs

    def test_square(self):
        r = compose(S(0, 0, 1, 0, 0), S(0, 1, 1, 0, 0))
        assert r.coeffs == S(0, 0, 1, 2, 1).coeffs

    def test_exp_log_pair(self):
        assert compose(forward_phi(8), mercator(8)).coeffs == PowerSeries.identity(8).coeffs

    def test_nonzero_constant_inner(self):
        with pytest.raises(SeriesError):
            compose(S(0, 1, 1), S(1, 1, 0))

    @settings(max_examples=30, deadline=None)
    @given(series_st(max_order=8), st.data())
    def test_coefficient_m_depends_only_on_low_inner(self, f, data):
        g = data.draw(series_st(min_order=f.order, max_order=f.order, const=0))
        m = data.draw(st.integers(0, f.order))
        perturbed = PowerSeries(g.coeffs[: m + 1] + tuple(c + 1 for c in g.coeffs[m + 1 :]))
        assert compose(f, g)[: m + 1] == compose(f, perturbed)[: m + 1]


def lagrange_inverse(a: PowerSeries) -> PowerSeries:
    """[t^n] a^{-1} = (1/n) [t^{n-1}] (t / a(t))^n."""
    q = reciprocal(a.shift_down())
    coeffs = [F(0)] + [int_pow(q, n)[n - 1] / n for n in range(1, a.order + 1)]
    return PowerSeries(tuple(coeffs))


class TestCompInverse:
    def test_identity(self):
        assert comp_inverse(PowerSeries.identity(5)).coeffs == PowerSeries.identity(5).coeffs

    def test_forward(self):
        r = comp_inverse(forward_phi(6))
        assert r.coeffs == S(0, 1, F(-1, 2), F(1, 3), F(-1, 4), F(1, 5), F(-1, 6)).coeffs
        assert compose(forward_phi(6), r).coeffs == PowerSeries.identity(6).coeffs

    def test_central(self):
        central = exp_t(5, F(1, 2)) - exp_t(5, F(-1, 2))
        r = comp_inverse(central)
        assert r.coeffs == S(0, 1, 0, F(-1, 24), 0, F(3, 640)).coeffs
        assert compose(central, r).coeffs == PowerSeries.identity(5).coeffs

    @pytest.mark.parametrize("bad", [S(1, 1, 0), S(0, 0, 1), S(0)])
    def test_not_delta(self, bad):
        with pytest.raises(SeriesError, match="not a delta-operator series"):
            comp_inverse(bad)

    @settings(max_examples=40, deadline=None)
    @given(delta_st(max_order=16))
    def test_two_sided(self, op):
        b = comp_inverse(op.phi)
        ident = PowerSeries.identity(op.order)
        assert compose(op.phi, b) == ident
        assert compose(b, op.phi) == ident

    @settings(max_examples=30, deadline=None)
    @given(delta_st(max_order=12))
    def test_matches_lagrange(self, op):
        assert comp_inverse(op.phi).coeffs == lagrange_inverse(op.phi).coeffs


class TestExpLog:
    def test_exp(self):
        assert exp_series(S(0, 1, 0, 0, 0)).coeffs == S(1, 1, F(1, 2), F(1, 6), F(1, 24)).coeffs

    def test_log(self):
        assert log_series(S(1, 1, 0, 0, 0)).coeffs == mercator(4).coeffs

    def test_round_trip(self):
        r = log_series(exp_series(S(0, 2, 1, 0, 0)))
        assert r.coeffs == S(0, 2, 1, 0, 0).coeffs

    def test_domains(self):
        with pytest.raises(SeriesError):
            exp_series(S(1, 1))
        with pytest.raises(SeriesError):
            log_series(S(2, 1))

    @settings(max_examples=40, deadline=None)
    @given(series_st(min_order=1, const=0))
    def test_mutually_inverse(self, a):
        assert log_series(exp_series(a)) == a
        b = PowerSeries((F(1),) + a.coeffs[1:])
        assert exp_series(log_series(b)) == b


class TestIntPow:
    def test_zero_power(self):
        r = int_pow(S(3, 1, 4), 0)
        assert r.coeffs == S(1, 0, 0).coeffs

    def test_cube(self):
        assert int_pow(S(0, 1, 0, 0, 0), 3).coeffs == S(0, 0, 0, 1, 0).coeffs

    def test_forward_squared(self):
        # (e^t - 1)^2 = e^{2t} - 2 e^t + 1
        oracle = exp_t(4, 2) - exp_t(4) * 2 + PowerSeries.constant(1, 4)
        r = int_pow(forward_phi(4), 2)
        assert r.coeffs == oracle.coeffs == S(0, 0, 1, 1, F(7, 12)).coeffs

    @given(series_st(max_order=6), st.integers(0, 6))
    def test_matches_repeated_product(self, a, k):
        acc = PowerSeries.constant(1, a.order)
        for _ in range(k):
            acc = acc * a
        assert int_pow(a, k).coeffs == acc.coeffs


class TestOpAtZero:
    def test_exp(self):
        assert op_at_zero(exp_t(3), 3) == 1

    def test_forward(self):
        assert op_at_zero(forward_phi(3), 1) == 1

    def test_delta_squared_zero_cubed(self):
        brute = sum((-1) ** (2 - k) * math.comb(2, k) * k**3 for k in range(3))
        assert brute == 6
        assert op_at_zero(int_pow(forward_phi(4), 2), 3) == brute

    def test_insufficient_order(self):
        with pytest.raises(OrderError, match="insufficient truncation order"):
            op_at_zero(S(0, 1), 2)

    @settings(max_examples=30, deadline=None)
    @given(series_st(min_order=10, max_order=10), st.integers(0, 10))
    def test_two_paths(self, f, n):
        assert op_at_zero(f, n) == apply_operator(f, Polynomial.monomial(n))(0)


class TestApplyOperator:
    @given(poly_st())
    def test_identity_operator(self, p):
        assert apply_operator(PowerSeries.constant(1, 8), p) == p

    def test_forward_difference(self):
        p = X**2
        assert apply_operator(forward_phi(2), p) == p.shift(1) - p == Polynomial([1, 2])

    def test_central_difference(self):
        p = X**3
        oracle = p.shift(F(1, 2)) - p.shift(F(-1, 2))
        central = exp_t(3, F(1, 2)) - exp_t(3, F(-1, 2))
        assert apply_operator(central, p) == oracle == Polynomial([F(1, 4), 0, 3])

    def test_insufficient_order(self):
        with pytest.raises(OrderError):
            apply_operator(S(0, 1), X**3)

    @settings(max_examples=30, deadline=None)
    @given(poly_st(max_degree=6), rationals)
    def test_shift_operator(self, p, h):
        # e^{hD} is translation by h
        assert apply_operator(exp_t(6, h), p) == p.shift(h)


class TestPolynomial:
    def test_zero_representation(self):
        assert Polynomial([0, 0, 0]).coeffs == (F(0),)
        assert Polynomial([]).degree == -1

    def test_trailing_zeros(self):
        assert Polynomial([1, 2, 0, 0]) == Polynomial([1, 2])

    def test_str(self):
        assert str(Polynomial([0, 2, -3, 1])) == "x^3 - 3*x^2 + 2*x"
        assert str(Polynomial([F(-1, 4), 0, 1])) == "x^2 - 1/4"

    @given(poly_st(), poly_st(), rationals)
    def test_evaluation_homomorphism(self, p, q, x):
        assert (p * q)(x) == p(x) * q(x)
        assert (p + q)(x) == p(x) + q(x)
        assert p.substitute(q)(x) == p(q(x))


class TestTheorems:
    @settings(max_examples=30, deadline=None)
    @given(series_st(min_order=10, max_order=10), delta_st(min_order=10, max_order=10), st.integers(1, 10))
    def test_theorem_b(self, f, op, n):
        fphi = compose(f, op.phi)
        assert op_at_zero(fphi, n) == op_at_zero(derivative(fphi), n - 1)

    @settings(max_examples=30, deadline=None)
    @given(series_st(min_order=10, max_order=10, const=0), delta_st(min_order=10, max_order=10), st.integers(1, 10))
    def test_theorem_a(self, f, op, n):
        fphi = compose(f, op.phi)
        assert op_at_zero(fphi, n) == n * op_at_zero(fphi.shift_down(), n - 1)

    def test_shift_down_requires_zero_constant(self):
        with pytest.raises(SeriesError):
            S(1, 1, 1).shift_down()
