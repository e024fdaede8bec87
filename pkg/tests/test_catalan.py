from fractions import Fraction

import pytest

from cyclosum.catalan import (
    H1_VALUE,
    TrunkRangeError,
    a_power_series,
    catalan_a,
    extract_coefficient_family,
    h_family,
    h_global_series,
    h_stable,
    verify_trunk,
)
from cyclosum.exactcore import Series, UniPoly, series_mul
from cyclosum.symfunc import PowerSumExpr, expand, h_to_powersum

from conftest import random_rational


class TestCatalanCoefficients:
    def test_catalan_numbers_at_n_one(self):
        # a_l(1) = C_l / 4^l with C_l the l-th Catalan number
        catalan = [1, 1, 2, 5, 14, 42, 132]
        for l, c in enumerate(catalan):
            assert catalan_a(l, 1) == Fraction(c, 4**l)

    def test_first_values_at_n_two(self):
        assert catalan_a(0, 2) == 1
        assert catalan_a(1, 2) == Fraction(1, 2)
        assert catalan_a(2, 2) == Fraction(5, 16)

    def test_example(self):
        assert catalan_a(2, 9) == Fraction(27, 8)

    def test_recurrence(self):
        # a_l(n) = a_l(n-1) + (1/4) a_{l-1}(n+1), valid for all integer n
        for l in range(1, 13):
            for n in range(-10, 31):
                assert catalan_a(l, n) == catalan_a(l, n - 1) + Fraction(
                    1, 4
                ) * catalan_a(l - 1, n + 1)

    def test_pochhammer_form(self):
        # a_l(n) = (n/2)_l ((n+1)/2)_l / ((n+1)_l l!) * ... reduced to the
        # ratio of rising factorials form
        def rising(x, l):
            out = Fraction(1)
            for i in range(l):
                out *= x + i
            return out

        for l in range(0, 9):
            for n in range(1, 12):
                expected = (
                    rising(Fraction(n, 2), l)
                    * rising(Fraction(n + 1, 2), l)
                    / (rising(Fraction(n + 1), l) * rising(Fraction(1), l))
                )
                assert catalan_a(l, n) == expected

    def test_negative_l_rejected(self):
        with pytest.raises(ValueError):
            catalan_a(-1, 3)


class TestAPowerSeries:
    def test_base_series(self):
        got = a_power_series(1, 6)
        expected = Series(
            [1, 0, Fraction(1, 4), 0, Fraction(1, 8), 0, Fraction(5, 64)], 6, "t"
        )
        assert got == expected

    def test_power_consistency(self):
        # A(t)^2 computed from the closed form must equal the product
        assert a_power_series(2, 12) == series_mul(
            a_power_series(1, 12), a_power_series(1, 12)
        )

    def test_additivity_in_n(self):
        for m, n in [(2, 3), (4, 4), (1, 7)]:
            assert a_power_series(m + n, 10) == series_mul(
                a_power_series(m, 10), a_power_series(n, 10)
            )

    def test_functional_equation(self):
        # A = 1 + (t^2 / 4) A^2 as truncated series
        order = 20
        A = a_power_series(1, order)
        sq = series_mul(A, A)
        rhs = [Fraction(0)] * (order + 1)
        rhs[0] = Fraction(1)
        for k in range(2, order + 1):
            rhs[k] = sq.coeffs[k - 2] / 4
        assert A == Series(rhs, order, "t")


class TestHStable:
    def test_low_orders(self):
        assert h_stable(2) == UniPoly([0, Fraction(1, 4)], "n")
        assert h_stable(3) == UniPoly([0, Fraction(-1, 4)], "n")
        # r = 6 and r = 7 share the magnitude n(n+4)(n+5)/384
        cubic = UniPoly([0, Fraction(5, 96), Fraction(3, 128), Fraction(1, 384)], "n")
        assert h_stable(6) == cubic
        assert h_stable(7) == -cubic

    def test_h1_constant(self):
        assert H1_VALUE == -1

    def test_r_below_two_rejected(self):
        with pytest.raises(ValueError):
            h_stable(1)

    def test_matches_global_series(self):
        # at level n > r the coefficient of s^r in H_n equals h_stable(r)(n)
        for n in range(9, 14):
            H = h_global_series(n, 8).series
            assert H.coeffs[0] == 1
            assert H.coeffs[1] == H1_VALUE
            for r in range(2, 9):
                assert H.coeffs[r] == h_stable(r)(Fraction(n))


class TestHGlobalSeries:
    def test_level_four_exact(self):
        # the three punctured points at n = 4 are 0, -1, 0
        H = h_global_series(4, 6).series
        # h_r of {0, -1, 0} is (-1)^r
        assert H.coeffs == tuple(Fraction((-1) ** r) for r in range(7))

    def test_level_nine_spot_value(self):
        assert h_global_series(9, 7).series.coeffs[7] == Fraction(-273, 64)

    def test_level_two(self):
        # single point -1
        H = h_global_series(2, 5).series
        assert H.coeffs == tuple(Fraction((-1) ** r) for r in range(6))

    def test_trunk_congruence(self):
        for R in range(1, 9):
            for n in range(R + 1, 17):
                assert verify_trunk(n, R)

    def test_trunk_range_guard(self):
        with pytest.raises(TrunkRangeError, match="range"):
            verify_trunk(5, 5)


class TestExtraction:
    def test_h_family_matches_newton(self):
        for r in range(0, 9):
            assert h_family(r) == h_to_powersum(r)

    def test_elementary_from_one_plus_t(self):
        # Q = 1 + t generates the elementary symmetric functions
        from cyclosum.symfunc import e_to_powersum

        for r in range(0, 7):
            assert extract_coefficient_family([1, 1], r) == e_to_powersum(r)

    def test_quadratic_example(self):
        # [s^2] prod (1 + s x_j + s^2 x_j^2) = e_2 + p_2
        got = extract_coefficient_family([1, 1, 1], 2)
        from cyclosum.symfunc import e_to_powersum

        assert got == e_to_powersum(2) + PowerSumExpr.gen(2)

    def test_unit_normalization_required(self):
        with pytest.raises(ValueError, match="not unit-normalized"):
            extract_coefficient_family([2, 1], 3)

    def test_against_direct_expansion(self, rng):
        # compare with literally multiplying out prod_j Q(z, s x_j) in
        # m = r variables and reading off the s^r coefficient
        for _ in range(12):
            tdeg = rng.randint(1, 3)
            r = rng.randint(1, 4)
            coeffs = [1] + [random_rational(rng, 6) for _ in range(tdeg)]
            psi = extract_coefficient_family(coeffs, r)
            assert expand(psi, r) == _direct_s_coefficient(coeffs, r)


def _direct_s_coefficient(coeffs, r):
    """[s^r] prod_{j=1}^{r} Q(s x_j) in the monomial-orbit basis, by
    expanding the product over per-variable term choices."""
    import itertools

    from cyclosum.symfunc import SymMonomialPoly

    m = r
    raw = {}
    choices = range(len(coeffs))
    for pick in itertools.product(choices, repeat=m):
        if sum(pick) != r:
            continue
        c = Fraction(1)
        for k in pick:
            c *= Fraction(coeffs[k])
        key = tuple(pick)
        raw[key] = raw.get(key, Fraction(0)) + c
    from cyclosum.symfunc import coeff_poly

    return SymMonomialPoly.from_monomials(
        m, {k: coeff_poly(v) for k, v in raw.items() if v}
    )
