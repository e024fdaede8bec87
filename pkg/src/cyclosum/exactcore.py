"""Exact arithmetic substrate: rationals, dense univariate polynomials,
Gaussian rationals, and order-truncated formal power series.

Everything here is immutable after construction and all operations are
pure, so values can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]


def rat(x) -> Fraction:
    """Coerce ints, strings like "a/b", and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def rat_str(q: Fraction) -> str:
    """Canonical text form "a/b", or "a" when the denominator is 1."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class ZeroDivisorError(ZeroDivisionError):
    pass


class NonInvertibleSeriesError(ValueError):
    pass


class UniPoly:
    """Dense univariate polynomial over Q.

    coeffs[k] is the coefficient of var**k; trailing zeros are stripped,
    and the zero polynomial has degree -1.  The variable name is purely
    presentational.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, c, var: str = "x") -> "UniPoly":
        return cls([rat(c)], var)

    @classmethod
    def gen(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, c, k: int, var: str = "x") -> "UniPoly":
        return cls([0] * k + [rat(c)], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroDivisorError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other, self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(
            [self.coeff(k) + o.coeff(k) for k in range(n)], self.var or o.var
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = UniPoly.const(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_divrem(self, o)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner's rule; x may be a rational or another UniPoly."""
        result = x * 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def scale(self, c) -> "UniPoly":
        c = rat(c)
        return UniPoly([a * c for a in self.coeffs], self.var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"


def poly_str(p: UniPoly) -> str:
    """Text form "c_k*x^k + ..." with explicit rational coefficients."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if c == 0:
            continue
        mag = rat_str(abs(c))
        if k == 0:
            body = mag
        elif k == 1:
            body = f"{mag}*{p.var}"
        else:
            body = f"{mag}*{p.var}^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def poly_divrem(a: UniPoly, b: UniPoly) -> tuple:
    """Exact division with remainder: a = b*q + r, deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisorError("zero divisor")
    q = [Fraction(0)] * max(len(a.coeffs) - len(b.coeffs) + 1, 0)
    r = list(a.coeffs)
    lead = b.leading()
    db = b.degree
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        k = len(r) - 1 - db
        f = r[-1] / lead
        q[k] = f
        for j in range(db + 1):
            r[k + j] -= f * b.coeffs[j]
    return UniPoly(q, a.var), UniPoly(r, a.var)


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Resultant of two nonzero polynomials, computed exactly.

    For monic a with roots alpha_i (with multiplicity) this equals
    prod_i b(alpha_i).
    """
    if a.is_zero() or b.is_zero():
        raise ZeroDivisorError("resultant of a zero polynomial")
    acc = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if da == 0:
            return acc * a.leading() ** db
        if db == 0:
            return acc * b.leading() ** da
        if da < db:
            if (da * db) % 2:
                acc = -acc
            a, b = b, a
            continue
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if (da * db) % 2:
            acc = -acc
        acc *= b.leading() ** (da - r.degree)
        a, b = b, r


class GaussianRational:
    """Exact complex rational a + b*i with i^2 = -1."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _gauss(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_gauss(other))

    def __mul__(self, other):
        other = _gauss(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _gauss(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _gauss(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(rat(x))


I_UNIT = GaussianRational(0, 1)


def i_power(k: int) -> GaussianRational:
    """i**k for any integer k."""
    return (GaussianRational(1), I_UNIT, GaussianRational(-1), GaussianRational(0, -1))[
        k % 4
    ]


class Series:
    """Formal power series over Q truncated at an explicit order.

    coeffs[k] is the coefficient of var**k for 0 <= k <= order; all
    arithmetic carries order = min(orders of the inputs) and is exact
    below that order.
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Sequence = (), order: int = None, var: str = "t"):
        if order is None:
            order = len(coeffs) - 1 if len(coeffs) else 0
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = [rat(c) for c in coeffs[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def one(cls, order: int, var: str = "t") -> "Series":
        return cls([1], order, var)

    @classmethod
    def from_poly(cls, p: UniPoly, order: int) -> "Series":
        return cls(list(p.coeffs), order, p.var)

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, min(order, self.order), self.var)

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series([other], self.order, self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return Series(
            [self.coeffs[k] + o.coeffs[k] for k in range(n + 1)], n, self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return series_mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return series_pow(self, k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.order == o.order and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"Series({[rat_str(c) for c in self.coeffs]}, order={self.order})"


def series_mul(a: Series, b: Series) -> Series:
    """Exact Cauchy product, truncated at min(order(a), order(b))."""
    n = min(a.order, b.order)
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a.coeffs[: n + 1]):
        if ca:
            for j in range(n + 1 - i):
                cb = b.coeffs[j]
                if cb:
                    out[i + j] += ca * cb
    return Series(out, n, a.var)


def series_inv(a: Series) -> Series:
    """Multiplicative inverse: a * series_inv(a) = 1 to the shared order."""
    if a.coeffs[0] == 0:
        raise NonInvertibleSeriesError(
            "non-invertible series: constant term is 0"
        )
    n = a.order
    inv0 = 1 / a.coeffs[0]
    out = [inv0] + [Fraction(0)] * n
    for k in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            if a.coeffs[j]:
                s += a.coeffs[j] * out[k - j]
        out[k] = -inv0 * s
    return Series(out, n, a.var)


def series_log(a: Series) -> Series:
    """Formal logarithm; requires constant term 1."""
    if a.coeffs[0] != 1:
        raise ValueError(
            f"series_log requires constant term 1, got {rat_str(a.coeffs[0])}"
        )
    n = a.order
    # From a * L' = a':  (k+1) L_{k+1} = (k+1) a_{k+1} - sum_{j>=1} a_j (k-j+1) L_{k-j+1}
    out = [Fraction(0)] * (n + 1)
    for k in range(n):
        s = (k + 1) * a.coeffs[k + 1]
        for j in range(1, k + 1):
            if a.coeffs[j]:
                s -= a.coeffs[j] * (k - j + 1) * out[k - j + 1]
        out[k + 1] = s / (k + 1)
    return Series(out, n, a.var)


def series_exp(a: Series) -> Series:
    """Formal exponential; requires constant term 0."""
    if a.coeffs[0] != 0:
        raise ValueError(
            f"series_exp requires constant term 0, got {rat_str(a.coeffs[0])}"
        )
    n = a.order
    out = [Fraction(1)] + [Fraction(0)] * n
    for k in range(n):
        s = Fraction(0)
        for j in range(k + 1):
            c = a.coeffs[j + 1]
            if c:
                s += (j + 1) * c * out[k - j]
        out[k + 1] = s / (k + 1)
    return Series(out, n, a.var)


def series_pow(a: Series, k: int) -> Series:
    """Integer power; negative exponents require a unit constant term."""
    if not isinstance(k, int):
        raise TypeError("series exponent must be an integer")
    if k < 0:
        return series_pow(series_inv(a), -k)
    result = Series.one(a.order, a.var)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        k >>= 1
    return result
