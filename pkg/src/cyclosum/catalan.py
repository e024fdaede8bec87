"""Catalan series machinery for complete symmetric sums at cosine points.

A(t) = 2 / (1 + sqrt(1 - t^2)) is handled purely through the closed form
of its power coefficients a_l(n); the functional equation A = 1 + (t^2/4) A^2
is a test, not a construction.  The global generating function of the
h_r values at level n comes from the Chebyshev factorization of T_n - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactcore import Series, UniPoly, series_inv, series_mul
from .invariants import NVAR, TVAR, chebyshev_T
from .symfunc import PowerSumExpr, ZVAR, coeff_poly


class TrunkRangeError(ValueError):
    pass


def catalan_a(l: int, n: int) -> Fraction:
    """Coefficient a_l(n) of t^(2l) in A(t)^n.

    Uses the product form n / (4^l l!) * prod_{j=l+1}^{2l-1} (n+j), which
    is defined for every integer n.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l == 0:
        return Fraction(1)
    prod = 1
    for j in range(l + 1, 2 * l):
        prod *= n + j
    return Fraction(n * prod, 4**l * math.factorial(l))


def a_power_series(n: int, order: int) -> Series:
    """A(t)^n as an even series to the requested truncation order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [Fraction(0)] * (order + 1)
    for l in range(order // 2 + 1):
        coeffs[2 * l] = catalan_a(l, n)
    return Series(coeffs, order, TVAR)


def h_stable(r: int) -> UniPoly:
    """Stable-range value of h_r at the punctured cosine points, as a
    polynomial in n (valid for integer n >= r+2); r >= 2.

    h_0 = 1 and the h_1 evaluation = -1 are explicit constants, not
    covered by this pattern.
    """
    if r < 2:
        raise ValueError("h_stable is defined for r >= 2")
    m = r // 2
    poly = UniPoly([0, 1], NVAR)  # n
    for j in range(m + 1, 2 * m):
        poly = poly * UniPoly([j, 1], NVAR)
    poly = poly.scale(Fraction(1, 4**m * math.factorial(m)))
    if r % 2:
        poly = -poly
    return poly


H1_VALUE = Fraction(-1)  # sum of the punctured cosine points, any n >= 2


@dataclass(frozen=True)
class HSeriesGlobal:
    """Generating series sum_r h_r(alpha_{1,n}..alpha_{n-1,n}) s^r."""

    n: int
    series: Series


def h_global_series(n: int, order: int) -> HSeriesGlobal:
    """Exact h_r generating series at level n via the Chebyshev identity
    H(s) = 2^(n-1) (1-s) / (s^n (T_n(1/s) - 1)), valid for all r <= order."""
    if n < 2:
        raise ValueError("level n must be >= 2")
    if order < 0:
        raise ValueError("order must be nonnegative")
    T = chebyshev_T(n)
    # D(s) = s^n T_n(1/s) - s^n: reverse the Chebyshev coefficients.
    dcoeffs = [T.coeff(n - j) for j in range(n + 1)]
    dcoeffs[n] -= 1
    lead = dcoeffs[0]  # = 2^(n-1), the leading coefficient of T_n
    unit = Series([c / lead for c in dcoeffs], order, "s")
    series = series_mul(Series([1, -1], order, "s"), series_inv(unit))
    return HSeriesGlobal(n, series)


def verify_trunk(n: int, R: int) -> bool:
    """Check H_n(t) = (1-t) A(t)^n modulo t^(R+1); requires n > R."""
    if n <= R:
        raise TrunkRangeError(f"outside the congruence range: need n > R, got n={n}, R={R}")
    lhs = h_global_series(n, R).series
    rhs = series_mul(Series([1, -1], R, TVAR), a_power_series(n, R))
    return lhs.coeffs == rhs.coeffs


def _log_coeff_list(cs: Sequence[UniPoly], order: int):
    """Formal log of sum c_l t^l with UniPoly('z') coefficients, c_0 = 1.
    Same recurrence as exactcore.series_log, over the coefficient ring."""
    zero = UniPoly((), ZVAR)
    a = [cs[k] if k < len(cs) else zero for k in range(order + 1)]
    out = [zero] * (order + 1)
    for k in range(order):
        s = a[k + 1].scale(k + 1)
        for j in range(1, k + 1):
            if not a[j].is_zero():
                s = s - a[j] * out[k - j + 1].scale(k - j + 1)
        out[k + 1] = s.scale(Fraction(1, k + 1))
    return out


def extract_coefficient_family(q_coeffs: Sequence, r: int) -> PowerSumExpr:
    """Stable power-sum presentation of the coefficient of s^r in
    prod_j Q(z, s x_j), for a unit-normalized Q given by its t-coefficients.

    Computed as [s^r] exp(sum_{l=1}^{r} L_l(z) v_l s^l) where the L_l are
    the coefficients of log Q; only the t-degree <= r part of Q matters.
    Accepts Q as a plain coefficient sequence (polynomial or truncated
    series), entries may be ints, rationals, or UniPoly('z').
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    cs = [coeff_poly(c) for c in q_coeffs]
    if not cs or cs[0] != UniPoly.const(1, ZVAR):
        raise ValueError("not unit-normalized: Q(z,0) != 1")
    if r == 0:
        return PowerSumExpr.const(1)
    L = _log_coeff_list(cs, r)
    X = [PowerSumExpr.zero()] * (r + 1)
    for l in range(1, r + 1):
        if not L[l].is_zero():
            X[l] = PowerSumExpr.gen(l) * L[l]
    # exp recurrence: k b_k = sum_{j=1}^{k} j X_j b_{k-j}
    b = [PowerSumExpr.const(1)] + [PowerSumExpr.zero()] * r
    for k in range(1, r + 1):
        acc = PowerSumExpr.zero()
        for j in range(1, k + 1):
            if not X[j].is_zero():
                acc = acc + X[j].scale(j) * b[k - j]
        b[k] = acc.scale(Fraction(1, k))
    return b[r]


def geometric_q(order: int):
    """Truncated coefficients of 1/(1-t), the source of the h_r family."""
    return [1] * (order + 1)


def h_family(r: int) -> PowerSumExpr:
    """The h_r family as extracted from Q(t) = 1/(1-t)."""
    return extract_coefficient_family(geometric_q(r), r)
