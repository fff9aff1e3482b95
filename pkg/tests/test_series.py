from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from motzkin_lab.series import (
    FloatSeries,
    TruncatedSeries,
    UJet,
    series_add,
    series_derivative,
    series_div,
    series_mul,
    series_sqrt,
    ujet_reciprocal,
)

ORDER = 30
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
coeff_lists = st.lists(small, min_size=ORDER + 1, max_size=ORDER + 1)
series = coeff_lists.map(lambda c: TruncatedSeries.polynomial(c, ORDER))
units = coeff_lists.map(lambda c: TruncatedSeries.polynomial([Fraction(1)] + c[1:], ORDER))
invertible = st.tuples(st.fractions(min_value=1, max_value=5, max_denominator=6), coeff_lists).map(
    lambda t: TruncatedSeries.polynomial([t[0]] + t[1][1:], ORDER))


class TestRingLaws:
    @given(series, series)
    def test_commutative(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(series, series, series)
    def test_associative_distributive(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(series, invertible)
    def test_division_inverts_multiplication(self, a, b):
        assert series_div(a, b) * b == a
        assert series_mul(series_div(a, b), b) == a

    @settings(max_examples=100)
    @given(units)
    def test_sqrt_squares_back(self, a):
        s = series_sqrt(a)
        assert s * s == a

    @given(series, series)
    def test_product_rule(self, a, b):
        lhs = series_derivative(a * b)
        rhs = series_derivative(a) * b.truncate(ORDER - 1) + a.truncate(ORDER - 1) * series_derivative(b)
        assert lhs == rhs

    @given(series)
    def test_identities(self, a):
        one = TruncatedSeries.one(ORDER)
        zero = TruncatedSeries.zero(ORDER)
        assert a * one == a and series_add(a, zero) == a
        assert a - a == zero


class TestTruncation:
    def test_mixed_orders_truncate_to_minimum(self):
        a = TruncatedSeries.polynomial([1, 1, 1, 1], 3)
        b = TruncatedSeries.polynomial([1, 2], 6)
        assert (a * b).order == 3 and (a + b).order == 3

    def test_index_past_order(self):
        a = TruncatedSeries.geometric(2, 4)
        assert a[4] == 16
        with pytest.raises(IndexError):
            a[5]
        with pytest.raises(IndexError):
            a[-1]

    def test_cannot_extend(self):
        with pytest.raises(ValueError):
            TruncatedSeries.one(3).truncate(5)

    def test_sqrt_needs_unit_constant(self):
        with pytest.raises(ValueError):
            TruncatedSeries.polynomial([4, 1], 3).sqrt()

    def test_division_by_non_unit(self):
        with pytest.raises(ZeroDivisionError):
            TruncatedSeries.one(3) / TruncatedSeries.polynomial([0, 1], 3)

    def test_shifts_and_evaluation(self):
        a = TruncatedSeries.polynomial([0, 1, 2, 3], 3)
        assert list(a.divide_by_z()) == [1, 2, 3]
        assert list(a.divide_by_z().times_z()) == [0, 1, 2]  # order is kept
        assert a.evaluate(Fraction(1, 2)) == Fraction(1, 2) + Fraction(1, 2) + Fraction(3, 8)
        assert a.dot_reversed(a, 3) == (a * a)[3]

    def test_catalan_by_sqrt(self):
        # (1 - sqrt(1 - 4z)) / (2z) generates the Catalan numbers
        s = TruncatedSeries.polynomial([1, -4], 10).sqrt()
        cat = ((1 - s) / 2).divide_by_z()
        assert list(cat) == [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]


class TestFloatMirror:
    @given(coeff_lists, coeff_lists)
    def test_agrees_with_exact(self, ca, cb):
        a = TruncatedSeries.polynomial(ca, ORDER)
        b = TruncatedSeries.polynomial([Fraction(1)] + cb[1:], ORDER)
        fa, fb = a.to_float(), b.to_float()
        assert isinstance(fa * fb, FloatSeries)
        np.testing.assert_allclose((fa * fb).coeffs, (a * b).to_float().coeffs, atol=1e-9)
        np.testing.assert_allclose((fa / fb).coeffs, (a / b).to_float().coeffs, rtol=1e-9, atol=1e-6)
        np.testing.assert_allclose(fb.sqrt().coeffs, b.sqrt().to_float().coeffs, rtol=1e-9, atol=1e-6)

    def test_backends_do_not_mix(self):
        with pytest.raises(TypeError):
            TruncatedSeries.one(3) + FloatSeries.one(3)


class TestUJet:
    def test_binomial_moments(self):
        # sum_n (1+u)^n z^n: the statistic is Binomial(n, 1/2) over 2^n objects
        like = TruncatedSeries.one(30)
        u = UJet.u(like)
        jet = 1 / (1 - u.__mul__(TruncatedSeries.polynomial([0, 1], 30)) - TruncatedSeries.polynomial([0, 1], 30))
        for n in range(1, 31):
            assert jet.j0[n] == 2 ** n
            assert jet.mean(n) == Fraction(n, 2)
            assert jet.variance(n) == Fraction(n, 4)

    @given(invertible, series, series)
    def test_reciprocal(self, a0, a1, a2):
        a = UJet(a0, a1, a2)
        prod = a * ujet_reciprocal(a)
        one = TruncatedSeries.one(ORDER)
        assert prod.j0 == one and prod.j1 == one * 0 and prod.j2 == one * 0

    def test_component_orders_must_match(self):
        with pytest.raises(ValueError):
            UJet(TruncatedSeries.one(3), TruncatedSeries.one(4), TruncatedSeries.one(3))
