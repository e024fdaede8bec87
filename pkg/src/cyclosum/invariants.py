"""Universal invariants of the punctured cosine configuration.

Parity binomials, the heat-kernel cosine/sine power sums C(n,h) and
S(n,h), the punctured power sums P_h(n), Chebyshev polynomials, the
punctured minimal polynomial W_n, and multiplicative invariants M_Q(n)
computed through exact resultants.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Sequence, Tuple

from .exactcore import (
    GaussianRational,
    UniPoly,
    i_power,
    poly_divrem,
    rat,
    resultant,
)
from .symfunc import ZVAR, coeff_poly

TVAR = "t"
NVAR = "n"


class InternalConsistencyError(AssertionError):
    pass


def parity_binom(h: int, u) -> int:
    """binom(h, u) when u is an integer in [0, h], else 0."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    u = rat(u)
    if u.denominator != 1:
        return 0
    u = u.numerator
    if not 0 <= u <= h:
        return 0
    return math.comb(h, u)


def cos_power_sum(n: int, h: int) -> Fraction:
    """C(n,h) = sum_{k=0}^{n-1} cos^h(2 pi k / n), exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if h < 0:
        raise ValueError("h must be nonnegative")
    bound = h // n
    total = 0
    for r in range(-bound, bound + 1):
        total += parity_binom(h, Fraction(r * n + h, 2))
    return Fraction(n, 2**h) * total


def sin_power_sum(n: int, h: int) -> Fraction:
    """S(n,h) via the Gaussian-rational accumulator i^(rn).

    The imaginary part must cancel exactly; a nonzero residue indicates
    an internal bug and raises.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if h < 0:
        raise ValueError("h must be nonnegative")
    bound = h // n
    acc = GaussianRational(0)
    for r in range(-bound, bound + 1):
        b = parity_binom(h, Fraction(r * n + h, 2))
        if b:
            acc = acc + i_power(r * n) * Fraction(b)
    if acc.im != 0:
        raise InternalConsistencyError(
            f"sin power sum has nonzero imaginary part {acc.im} at (n={n}, h={h})"
        )
    return Fraction(n, 2**h) * acc.re


def punctured_power_sum(n: int, h: int) -> Fraction:
    """P_h(n) = 2^h (C(n,h) - 1); exact in every regime of n and h."""
    if n < 2:
        raise ValueError("level n must be >= 2")
    return 2**h * (cos_power_sum(n, h) - 1)


def punctured_power_sum_stable(h: int) -> UniPoly:
    """Stable-range closed form of P_h as a polynomial in n (valid n > h):
    n*binom(h, h/2) - 2^h for even h, the constant -2^h for odd h."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    if h % 2 == 0:
        return UniPoly([-(2**h), math.comb(h, h // 2)], NVAR)
    return UniPoly([-(2**h)], NVAR)


_cheb_lock = threading.Lock()
_cheb_cache = [UniPoly([1], TVAR), UniPoly([0, 1], TVAR)]


def chebyshev_T(n: int) -> UniPoly:
    """Chebyshev polynomial of the first kind, T_n(t)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _cheb_lock:
        two_t = UniPoly([0, 2], TVAR)
        while len(_cheb_cache) <= n:
            _cheb_cache.append(two_t * _cheb_cache[-1] - _cheb_cache[-2])
        return _cheb_cache[n]


class PuncturedMinPoly:
    """W_n(t) = prod_{k=1}^{n-1} (t - cos(2 pi k/n)), monic of degree n-1,
    obtained from the factorization T_n(t) - 1 = 2^(n-1) (t-1) W_n(t)."""

    __slots__ = ("n", "W")

    def __init__(self, n: int, W: UniPoly):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "W", W)

    def __setattr__(self, name, value):
        raise AttributeError("PuncturedMinPoly is immutable")

    def __repr__(self):
        return f"PuncturedMinPoly(n={self.n}, W={self.W})"


_minpoly_lock = threading.Lock()
_minpoly_cache = {}


def punctured_min_poly(n: int) -> PuncturedMinPoly:
    if n < 2:
        raise ValueError("level n must be >= 2")
    with _minpoly_lock:
        hit = _minpoly_cache.get(n)
        if hit is not None:
            return hit
    numerator = chebyshev_T(n) - 1
    q, r = poly_divrem(numerator, UniPoly([-1, 1], TVAR))
    if not r.is_zero():
        raise InternalConsistencyError(f"T_{n} - 1 not divisible by t - 1")
    W = q.scale(Fraction(1, 2 ** (n - 1)))
    if not W.is_monic() or W.degree != n - 1:
        raise InternalConsistencyError(f"W_{n} is not monic of degree {n - 1}")
    result = PuncturedMinPoly(n, W)
    with _minpoly_lock:
        _minpoly_cache[n] = result
    return result


class QPoly:
    """Unit-normalized product factor: a polynomial in t with Q[z]
    coefficients and constant term identically 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [coeff_poly(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if not cs or cs[0] != UniPoly.const(1, ZVAR):
            raise ValueError("product factor not unit-normalized: Q(z,0) != 1")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @property
    def t_degree(self) -> int:
        return len(self.coeffs) - 1

    def specialize_z(self, value) -> UniPoly:
        """Evaluate the z-dependence, leaving a plain polynomial in t."""
        value = rat(value)
        return UniPoly([c(value) for c in self.coeffs], TVAR)

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        from .exactcore import poly_str, rat_str

        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if c.is_constant():
                v = c.constant()
                sign = 1 if v > 0 else -1
                mag = rat_str(abs(v))
                if k == 0:
                    body = mag
                else:
                    tpart = TVAR if k == 1 else f"{TVAR}^{k}"
                    body = tpart if abs(v) == 1 else f"{mag}*{tpart}"
            else:
                sign = 1
                body = f"({poly_str(c)})"
                if k == 1:
                    body += f"*{TVAR}"
                elif k > 1:
                    body += f"*{TVAR}^{k}"
            if not parts:
                parts.append(body if sign > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if sign > 0 else f"- {body}")
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return f"QPoly({self!s})"


def multiplicative_invariant(Q: QPoly, n: int) -> Fraction:
    """M_Q(n) = prod_{k=1}^{n-1} Q(n-1, alpha_{k,n}), computed exactly as
    the resultant of the monic W_n against Q with z specialized to n-1."""
    if n < 2:
        raise ValueError("level n must be >= 2")
    W = punctured_min_poly(n).W
    qn = Q.specialize_z(n - 1)
    if qn.degree == 0:
        return qn.constant() ** (n - 1)
    return resultant(W, qn)
