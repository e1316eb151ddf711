import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from asmpat import formulas
from asmpat.series import PowerSeries, TruncationError


def central(k):
    return math.factorial(2 * k) // math.factorial(k) ** 2


class TestSeries:
    def test_invsqrt_is_central_binomial(self):
        s = PowerSeries([1, -4], 30).invsqrt()
        assert s.integer_coeffs() == [central(k) for k in range(31)]
        assert formulas.central_binomial_series(4).integer_coeffs() == [1, 2, 6, 20, 70]

    @pytest.mark.parametrize("order", [0, 1, 10, 40])
    def test_invsqrt_squared(self, order):
        f = PowerSeries([1, -4], order)
        g = f.invsqrt()
        assert g * g * f == PowerSeries.one(order)

    def test_sqrt(self):
        f = PowerSeries([1, 3, -2, 5], 12)
        r = f.sqrt()
        assert r * r == f

    def test_inverse(self):
        f = PowerSeries([2, 1, Fraction(1, 3)], 15)
        assert f * f.inverse() == PowerSeries.one(15)
        with pytest.raises(ZeroDivisionError):
            PowerSeries.z(5).inverse()

    def test_truncation_tracked(self):
        a, b = PowerSeries([1, 1], 3), PowerSeries([1, 2, 3, 4, 5, 6], 5)
        assert (a * b).order == 3 and (a + b).order == 3
        with pytest.raises(TruncationError):
            (a * b)[4]

    def test_shift(self):
        assert PowerSeries([1, 2], 3).shift(2) == PowerSeries([0, 0, 1, 2], 5)

    def test_power_requires_unit(self):
        with pytest.raises(ValueError):
            PowerSeries([2, 1], 4).power(Fraction(1, 2))

    def test_integer_coeffs_rejects_fractions(self):
        with pytest.raises(ValueError):
            PowerSeries([Fraction(1, 2)], 0).integer_coeffs()

    rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)

    @settings(max_examples=15, deadline=None)
    @given(st.lists(rationals, min_size=65, max_size=65), st.lists(rationals, min_size=65, max_size=65))
    def test_mul_commutative(self, x, y):
        a, b = PowerSeries(x, 64), PowerSeries(y, 64)
        assert a * b == b * a

    @settings(max_examples=8, deadline=None)
    @given(
        st.lists(rationals, min_size=65, max_size=65),
        st.lists(rationals, min_size=65, max_size=65),
        st.lists(rationals, min_size=65, max_size=65),
    )
    def test_mul_associative(self, x, y, z):
        a, b, c = PowerSeries(x, 64), PowerSeries(y, 64), PowerSeries(z, 64)
        assert (a * b) * c == a * (b * c)


class TestBinomial:
    @pytest.mark.parametrize("a,b", [(3, 4), (-1, 0), (2, -1), (-3, -5)])
    def test_convention_zero(self, a, b):
        assert formulas.binom(a, b) == 0

    def test_values(self):
        assert formulas.binom(0, 0) == 1 and formulas.binom(10, 3) == 120


def thm14_closed_independent(n):
    """Direct evaluation of the closed form with its own range, n >= 7."""
    s = sum(2 ** (n - 4 - k) * central(k) for k in range(0, n - 4))
    return s - (n - 2) * 2 ** (n - 5)


class TestThreeNegatives:
    KNOWN = {7: 8, 8: 48, 9: 220, 10: 912, 11: 3608}

    @pytest.mark.parametrize("n,v", sorted(KNOWN.items()))
    def test_known(self, n, v):
        assert formulas.thm14_closed(n) == v
        assert formulas.thm14_triple_sum(n) == v

    def test_small_n_zero(self):
        assert [formulas.thm14_closed(n) for n in range(7)] == [0] * 7
        assert formulas.thm14_triple_sum(6) == 0

    def test_triple_agreement(self):
        gf = formulas.thm14_gf_coefficients(40)
        assert gf[:7] == [0] * 7 and gf[7] == 8
        for n in range(41):
            assert formulas.thm14_closed(n) == formulas.thm14_triple_sum(n) == gf[n]
        for n in range(7, 41):
            assert formulas.thm14_closed(n) == thm14_closed_independent(n)


class TestSkewMerged:
    def test_values(self):
        assert [formulas.skew_merged(n) for n in range(10)] == [1, 1, 2, 6, 22, 86, 340, 1340, 5254, 20518]

    @pytest.mark.parametrize("order", [0, 10, 25])
    def test_gf(self, order):
        assert formulas.skew_merged_gf_check(order)


class TestSmallFormulas:
    def test_one_negative(self):
        assert [formulas.one_negative_formula(n) for n in range(1, 8)] == [0, 0, 1, 16, 200, 2400, 29400]

    def test_at_most_one(self):
        assert formulas.at_most_one_formula(1) == 1
        assert formulas.at_most_one_formula(3) == 7
        assert formulas.at_most_one_formula(4) == 40


class TestAppendixIdentity:
    def test_reindexed_zero(self):
        assert formulas.appendix_reindexed_lhs(0) == 4 == formulas.appendix_reindexed_rhs(0)

    def test_n7_row(self):
        row = formulas.verify_appendix_identity(7, 7).rows[0]
        assert (row.lhs, row.rhs, row.reindexed_lhs, row.reindexed_rhs) == (8, 8, 4, 4)

    def test_full_range(self):
        report = formulas.verify_appendix_identity(7, 60)
        assert report.ok and report.passed == 54

    @pytest.mark.parametrize("lo,hi", [(6, 8), (9, 8)])
    def test_range_errors(self, lo, hi):
        with pytest.raises(ValueError):
            formulas.verify_appendix_identity(lo, hi)

    def test_gf_vs_sum(self):
        assert formulas.thm14_gf_vs_sum_check(30)
        assert formulas.appendix_gf(2).integer_coeffs()[2] == 4
