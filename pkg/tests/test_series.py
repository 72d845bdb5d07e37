from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from brute import type_counts
from symprop.proportions import regular_proportion, rho_closed_form
from symprop.series import (
    SeriesCoefficients,
    TruncationMismatch,
    jacobsthal_gf,
    regular_gf,
    series_exp,
    series_log_one_minus,
    series_mul,
)

S = SeriesCoefficients.from_list


def exp_x(order, scale=1):
    return S([Fraction(scale) ** k / factorial(k) for k in range(order + 1)])


def test_mul_examples():
    assert series_mul(S([1, 1, 0]), S([1, -1, 0])).coeffs == (1, 0, -1)
    b = S([3, Fraction(1, 2), 7])
    assert series_mul(SeriesCoefficients.one(2), b) == b
    assert series_mul(exp_x(3), exp_x(3))[3] == Fraction(4, 3)


def test_mul_rejects_mismatched_orders():
    with pytest.raises(TruncationMismatch):
        series_mul(S([1, 1]), S([1, 1, 1]))
    with pytest.raises(TruncationMismatch):
        S([1]) + S([1, 2])


def test_exp_examples():
    assert series_exp(SeriesCoefficients.zero(4)) == SeriesCoefficients.one(4)
    assert series_exp(S([0, 1, 0, 0, 0])) == exp_x(4)
    assert series_exp(SeriesCoefficients.monomial(2, Fraction(1, 2), 4))[4] == Fraction(1, 8)
    with pytest.raises(ValueError):
        series_exp(S([1, 1]))


def test_log_one_minus_examples():
    assert series_log_one_minus(1, 3).coeffs == (0, -1, Fraction(-1, 2), Fraction(-1, 3))
    assert series_log_one_minus(2, 5).coeffs == (0, 0, -1, 0, Fraction(-1, 2), 0)
    assert series_log_one_minus(3, 2).coeffs == (0, 0, 0)


def test_exp_of_log_is_one_minus_x():
    for order in (0, 1, 5, 30):
        expected = S([1, -1], order=order)
        assert series_exp(series_log_one_minus(1, order)) == expected


def test_jacobsthal_examples():
    gf = jacobsthal_gf(2, 5)
    expected = []
    for n in range(2, 6):
        counts = type_counts(n)
        hits = sum(c for t, c in counts.items() if set(t) <= {1, 2} and 2 in t)
        expected.append(Fraction(hits, factorial(n)))
    assert list(gf.coeffs[2:]) == expected == [Fraction(1, 2), Fraction(1, 2), Fraction(3, 8), Fraction(5, 24)]
    assert jacobsthal_gf(3, 3)[3] == Fraction(1, 3)
    for p in (2, 3, 5, 7):
        assert jacobsthal_gf(p, 10)[0] == 0


def test_regular_gf_examples():
    assert regular_gf(2, 4).coeffs == (1, 1, Fraction(1, 2), Fraction(1, 2), Fraction(3, 8))
    assert regular_gf(3, 2)[2] == 1
    assert regular_gf(2, 0)[0] == 1


@pytest.mark.parametrize("p", (2, 3, 5, 7))
def test_gf_coefficients_match_formulas(p):
    jac = jacobsthal_gf(p, 100).coeffs
    reg = regular_gf(p, 100).coeffs
    for n in range(1, 101):
        assert jac[n] == rho_closed_form(p, n)
        assert reg[n] == regular_proportion(p, n)


small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series_of(order):
    return st.lists(small, min_size=order + 1, max_size=order + 1).map(S)


@settings(max_examples=50)
@given(st.integers(0, 6).flatmap(lambda N: st.tuples(series_of(N), series_of(N), series_of(N))))
def test_mul_commutative_associative(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=50)
@given(st.integers(1, 6).flatmap(lambda N: st.tuples(series_of(N), series_of(N))))
def test_exp_turns_sums_into_products(ab):
    a, b = (S([0, *x.coeffs[1:]]) for x in ab)
    assert series_exp(a + b) == series_exp(a) * series_exp(b)
