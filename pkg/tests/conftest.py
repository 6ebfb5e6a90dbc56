from fractions import Fraction

import pytest
from hypothesis import strategies as st

from poweroid.operators import DeltaOperator
from poweroid.series import Polynomial, PowerSeries

ACCEPTANCE_LINES = []

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def series_st(draw, min_order=0, max_order=12, const=None):
    n = draw(st.integers(min_order, max_order))
    coeffs = draw(st.lists(rationals, min_size=n + 1, max_size=n + 1))
    if const is not None:
        coeffs[0] = Fraction(const)
    return PowerSeries(tuple(coeffs))


@st.composite
def delta_st(draw, min_order=2, max_order=10):
    n = draw(st.integers(min_order, max_order))
    # sparse tail keeps Fraction sizes small under repeated composition
    tail = draw(st.lists(rationals, min_size=min(n - 1, 4), max_size=min(n - 1, 4)))
    coeffs = [0, draw(nonzero_rationals)] + tail + [0] * (n - 1 - len(tail))
    return DeltaOperator(PowerSeries(tuple(coeffs)))


@st.composite
def poly_st(draw, max_degree=8):
    return Polynomial(draw(st.lists(rationals, min_size=1, max_size=max_degree + 1)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""

    def record(label, ok):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}")
        assert ok, label

    return record
