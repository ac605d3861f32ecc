"""Truncated power series: exact arithmetic, ring laws, inversions."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from modulitr.series import (
    QRING,
    TruncSeries,
    series_exp,
    series_log,
    series_reversion,
)

ORDER = 8


def ts(values):
    return TruncSeries.from_list("x", [Fraction(v) for v in values], QRING, ORDER)


def rationals():
    return st.fractions(
        min_value=-5, max_value=5, max_denominator=6
    )


def series_strategy():
    return st.lists(rationals(), min_size=0, max_size=ORDER).map(ts)


def test_coefficient_and_truncate():
    s = ts([1, 2, 3])
    assert s.coefficient(0) == 1
    assert s.coefficient(1) == 2
    assert s.coefficient(5) == 0
    assert s.truncate(2).order == 2


def test_geometric_inverse():
    s = ts([1, -1])  # 1 - x
    inv = s.inverse()
    assert all(inv.coefficient(i) == 1 for i in range(ORDER))
    assert (s * inv) == TruncSeries.one("x", ORDER, QRING)


def test_exp_log_roundtrip():
    x = TruncSeries.identity("x", ORDER, QRING)
    e = series_exp(x)
    fact = 1
    for i in range(1, ORDER):
        fact *= i
        assert e.coefficient(i) == Fraction(1, fact)
    assert series_log(e) == x


def test_reversion_is_compositional_inverse():
    x = TruncSeries.identity("x", ORDER, QRING)
    s = x + x * x  # x + x^2
    r = series_reversion(s)
    assert s.compose(r) == x
    assert r.compose(s) == x


def test_derivative_integrate_roundtrip():
    s = ts([0, 1, 5, -7, Fraction(1, 3)])
    assert s.derivative().integrate() == s.truncate(ORDER)


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=40, deadline=None)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(series_strategy())
@settings(max_examples=40, deadline=None)
def test_additive_inverse(a):
    assert (a - a).is_zero()
    assert a + (-a) == a - a


@given(series_strategy())
@settings(max_examples=30, deadline=None)
def test_inverse_when_unit(a):
    if a.coefficient(0) == 0:
        return
    assert a * a.inverse() == TruncSeries.one("x", a.order, QRING)
