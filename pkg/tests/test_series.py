from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rational
from ymstrata.series import Factor, TruncatedSeries, expand_rational, format_factors, parse_factors


def test_basic_arithmetic():
    a = TruncatedSeries([1, 2, 3], 2)
    b = TruncatedSeries([0, 1], 4)
    assert (a + b).coeffs == (1, 3, 3)
    assert (a * b).coeffs == (0, 1, 2)
    assert (a - a).is_zero()
    assert (2 * a).coeffs == (2, 4, 6)


def test_inverse_of_one_minus_t():
    geometric = TruncatedSeries([1, -1], 6).inverse()
    assert geometric.coeffs == (1,) * 7
    assert (TruncatedSeries([1, -1], 6) ** -2).coeffs == (1, 2, 3, 4, 5, 6, 7)
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries([0, 1], 3).inverse()


def test_shift_extends_known_degree():
    s = TruncatedSeries([1, 1], 3).shift(2)
    assert s.degree == 5
    assert s.coeffs == (0, 0, 1, 1, 0, 0)


def test_truncate_cannot_extend():
    with pytest.raises(ValueError):
        TruncatedSeries([1], 2).truncate(3)


def test_text_rendering():
    assert TruncatedSeries([1, 4, 7, 0, 8], 4).to_text() == "1 + 4*t + 7*t^2 + 8*t^4 + O(t^5)"
    assert TruncatedSeries([0, 1, 0, -3], 3).to_text() == "t - 3*t^3 + O(t^4)"
    assert TruncatedSeries([Fraction(1, 2)], 0).to_text() == "1/2 + O(t)"
    assert TruncatedSeries.zero(2).to_text() == "O(t^3)"


def test_json_round_trip():
    s = TruncatedSeries([1, Fraction(-2, 3), 5], 4)
    assert TruncatedSeries.from_json(s.to_json()) == s


def test_factor_parsing_round_trip():
    num, den = parse_factors("+1^4 +3^2 / -2 -4")
    assert num == [Factor(1, 1, 4), Factor(1, 3, 2)]
    assert den == [Factor(-1, 2, 1), Factor(-1, 4, 1)]
    assert parse_factors(format_factors(num, den)) == (num, den)
    with pytest.raises(ValueError):
        parse_factors("+1 / -2 / -3")
    with pytest.raises(ValueError):
        parse_factors("*2")


def test_expand_rational_accepts_tuples():
    s = expand_rational([("+", 1, 4)], [("-", 2, 1)], 4)
    assert s.coeffs == (1, 4, 7, 8, 8)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        expand_rational([], [Factor(-1, 0, 1)], 3)


factor = st.tuples(st.sampled_from([1, -1]), st.integers(1, 6), st.integers(0, 4))


@settings(max_examples=60, deadline=None)
@given(st.lists(factor, max_size=4), st.lists(factor, max_size=4), st.integers(0, 25))
def test_expand_rational_matches_long_division(num, den, degree):
    got = expand_rational([Factor(*f) for f in num], [Factor(*f) for f in den], degree)
    assert list(got.coeffs) == rational(num, den, degree)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8), st.lists(st.integers(-5, 5), min_size=1, max_size=8))
def test_product_with_inverse_is_identity(a, b):
    a[0] = a[0] or 1
    x = TruncatedSeries(a, 7)
    y = TruncatedSeries(b, 7)
    assert (x * y) / x == y
