import random
from fractions import Fraction

import pytest

from cyclosum.exactcore import (
    NonInvertibleSeriesError,
    Series,
    UniPoly,
    ZeroDivisorError,
    poly_divrem,
    poly_str,
    rat_str,
    resultant,
    series_exp,
    series_inv,
    series_log,
    series_mul,
    series_pow,
)

from conftest import random_rational, random_unipoly


def P(coeffs, var="t"):
    return UniPoly(coeffs, var)


class TestRational:
    def test_exact_addition(self):
        assert Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2)

    def test_text_form(self):
        assert rat_str(Fraction(3, 4)) == "3/4"
        assert rat_str(Fraction(8, 2)) == "4"
        assert rat_str(Fraction(-5, 10)) == "-1/2"

    def test_field_axioms_on_random_triples(self):
        rng = random.Random(1)
        for _ in range(1000):
            a, b, c = (random_rational(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if a != 0:
                assert a * (1 / a) == 1
            assert a + (-a) == 0


class TestUniPoly:
    def test_trailing_zeros_stripped(self):
        assert P([1, 2, 0, 0]).coeffs == (Fraction(1), Fraction(2))
        assert P([0, 0]).degree == -1

    def test_degree_multiplicative(self):
        rng = random.Random(2)
        for _ in range(50):
            a = random_unipoly(rng, 6)
            b = random_unipoly(rng, 6)
            if not a.is_zero() and not b.is_zero():
                assert (a * b).degree == a.degree + b.degree

    def test_divrem_difference_of_squares(self):
        q, r = poly_divrem(P([-1, 0, 1]), P([-1, 1]))
        assert q == P([1, 1])
        assert r.is_zero()

    def test_divrem_cubic(self):
        # expected quotient frozen after expanding (t-1)(4t^2+4t+1) = 4t^3-3t-1
        q, r = poly_divrem(P([-1, -3, 0, 4]), P([-1, 1]))
        assert q == P([1, 4, 4])
        assert r.is_zero()

    def test_divrem_low_degree_numerator(self):
        q, r = poly_divrem(P([0, 0, 1]), P([0, 0, 0, 1]))
        assert q.is_zero()
        assert r == P([0, 0, 1])

    def test_divrem_zero_divisor(self):
        with pytest.raises(ZeroDivisorError, match="zero divisor"):
            poly_divrem(P([1, 1]), P([]))

    def test_divrem_round_trip(self):
        rng = random.Random(3)
        for _ in range(100):
            a = random_unipoly(rng, 12)
            b = random_unipoly(rng, 12)
            if b.is_zero():
                continue
            q, r = poly_divrem(a, b)
            assert b * q + r == a
            assert r.degree < b.degree or r.is_zero()

    def test_text_form(self):
        assert poly_str(P([Fraction(1, 4), 1, 1])) == "1*t^2 + 1*t + 1/4"
        assert poly_str(P([])) == "0"

    def test_compose(self):
        p = P([1, 2, 1])  # (t+1)^2
        assert p(P([-1, 1])) == P([0, 0, 1])
        assert p(Fraction(3)) == 16


class TestResultant:
    def test_roots_plus_minus_one(self):
        assert resultant(P([-1, 0, 1]), P([-2, 1])) == 3

    def test_single_root(self):
        rng = random.Random(4)
        for _ in range(25):
            c = random_rational(rng)
            b = random_unipoly(rng, 5, "t")
            if b.is_zero():
                continue
            assert resultant(P([-c, 1]), b) == b(c)

    def test_w3_against_linear_factor(self):
        w3 = P([Fraction(1, 4), 1, 1])
        assert resultant(w3, P([1, -1])) == Fraction(9, 4)

    def test_zero_input_rejected(self):
        with pytest.raises(ZeroDivisorError):
            resultant(P([]), P([1, 1]))

    def test_multiplicative_in_second_argument(self):
        rng = random.Random(5)
        for _ in range(30):
            a = random_unipoly(rng, 4, "t")
            if a.degree < 1:
                continue
            a = UniPoly(list(a.coeffs[:-1]) + [1], "t")  # make monic
            b = random_unipoly(rng, 5, "t")
            c = random_unipoly(rng, 5, "t")
            if b.is_zero() or c.is_zero():
                continue
            assert resultant(a, b * c) == resultant(a, b) * resultant(a, c)


def geometric(order):
    return Series([1] * (order + 1), order)


class TestSeries:
    def test_mul_difference_of_squares(self):
        s = series_mul(Series([1, 1], 3), Series([1, -1], 3))
        assert s == Series([1, 0, -1, 0], 3)

    def test_mul_geometric_inverse(self):
        assert series_mul(geometric(5), Series([1, -1], 5)) == Series.one(5)

    def test_mul_takes_min_order(self):
        s = series_mul(Series([1, 1], 7), Series([1, 1], 4))
        assert s.order == 4

    def test_square_of_catalan_series(self):
        # A(t)^2 coefficients via direct Cauchy product of the closed form
        # for A(t) = 1 + t^2/4 + t^4/8 + ...: the t^4 coefficient is
        # 2*(1/8) + (1/4)^2 = 5/16.
        a = Series([1, 0, Fraction(1, 4), 0, Fraction(1, 8)], 4)
        sq = series_mul(a, a)
        assert sq == Series([1, 0, Fraction(1, 2), 0, Fraction(5, 16)], 4)

    def test_inv_geometric(self):
        assert series_inv(Series([1, -1], 6)) == geometric(6)

    def test_inv_identity(self):
        assert series_inv(Series.one(5)) == Series.one(5)

    def test_inv_fibonacci(self):
        inv = series_inv(Series([1, -1, -1], 4))
        assert inv == Series([1, 1, 2, 3, 5], 4)
        assert series_mul(inv, Series([1, -1, -1], 4)) == Series.one(4)

    def test_inv_requires_unit(self):
        with pytest.raises(NonInvertibleSeriesError, match="non-invertible"):
            series_inv(Series([0, 1], 3))

    def test_log_geometric(self):
        got = series_log(geometric(4))
        assert got == Series([0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], 4)

    def test_exp_linear(self):
        got = series_exp(Series([0, 1], 3))
        assert got == Series([1, 1, Fraction(1, 2), Fraction(1, 6)], 3)

    def test_log_requires_unit_constant(self):
        with pytest.raises(ValueError, match="constant term"):
            series_log(Series([2, 1], 3))

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError, match="constant term"):
            series_exp(Series([1, 1], 3))

    def test_log_of_catalan_series(self):
        # log A(t) = sum_j (1/2j) binom(2j,j) (t^2/4)^j
        from cyclosum.catalan import a_power_series

        got = series_log(a_power_series(1, 8))
        expected = [Fraction(0)] * 9
        expected[2] = Fraction(1, 4)
        expected[4] = Fraction(3, 32)
        expected[6] = Fraction(5, 96)
        expected[8] = Fraction(35, 1024)
        assert got == Series(expected, 8)

    def test_exp_log_round_trip(self):
        rng = random.Random(6)
        for _ in range(25):
            coeffs = [Fraction(1)] + [random_rational(rng, 8) for _ in range(16)]
            s = Series(coeffs, 16)
            assert series_exp(series_log(s)) == s
            t = Series([0] + coeffs[1:], 16)
            assert series_log(series_exp(t)) == t

    def test_pow_additivity(self):
        rng = random.Random(7)
        for _ in range(20):
            coeffs = [Fraction(1)] + [random_rational(rng, 6) for _ in range(8)]
            s = Series(coeffs, 8)
            m = rng.randint(-6, 6)
            n = rng.randint(-6, 6)
            assert series_pow(s, m + n) == series_mul(
                series_pow(s, m), series_pow(s, n)
            )

    def test_pow_negative_requires_unit(self):
        with pytest.raises(NonInvertibleSeriesError):
            series_pow(Series([0, 1], 4), -1)
