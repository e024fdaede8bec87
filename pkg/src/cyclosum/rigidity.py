"""Admissible formulas and the stable-range pipeline.

An admissible formula is a bounded-degree symmetric family given by its
stable power-sum presentation psi_star, optionally multiplied by fixed
unit-normalized product factors.  In the stable range n >= n_star = d+2
the cosine-point evaluation factors through P_1(n)..P_d(n) and the
multiplicative invariants; in the polynomial case it agrees with a
single eventual polynomial in n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactcore import UniPoly, rat_str
from .invariants import (
    NVAR,
    QPoly,
    multiplicative_invariant,
    punctured_power_sum,
    punctured_power_sum_stable,
)
from .symfunc import PowerSumExpr, render_powersum


class BelowThresholdError(ValueError):
    pass


class ProductCaseError(ValueError):
    pass


ProductDatum = Tuple[Tuple[QPoly, int], ...]


def _normalize_products(products) -> ProductDatum:
    out = []
    for Q, mult in products or ():
        if not isinstance(Q, QPoly):
            Q = QPoly(Q)
        mult = int(mult)
        if mult < 0:
            raise ValueError("product exponent must be nonnegative")
        if mult:
            out.append((Q, mult))
    return tuple(out)


@dataclass(frozen=True)
class AdmissibleFormula:
    """Stable presentation psi_star plus product datum; d is the weighted
    degree of psi_star and n_star = d + 2 the stable threshold."""

    psi_star: PowerSumExpr
    products: ProductDatum = ()
    d: int = field(init=False)
    n_star: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "products", _normalize_products(self.products))
        object.__setattr__(self, "d", self.psi_star.weighted_degree)
        object.__setattr__(self, "n_star", self.d + 2)

    @property
    def is_polynomial_case(self) -> bool:
        return not self.products

    def render(self) -> str:
        pieces = []
        psi_text = render_powersum(self.psi_star)
        if psi_text != "1" or not self.products:
            if self.products and len(self.psi_star.terms) > 1:
                psi_text = f"({psi_text})"
            pieces.append(psi_text)
        for Q, mult in self.products:
            piece = f"prod({Q})"
            if mult != 1:
                piece += f"^{mult}"
            pieces.append(piece)
        return " * ".join(pieces)

    def __str__(self):
        return self.render()


def build_admissible(psi_star: PowerSumExpr, products=()) -> AdmissibleFormula:
    """Validate product factors and derive d and n_star."""
    return AdmissibleFormula(psi_star, _normalize_products(products))


@dataclass(frozen=True)
class PhiExpr:
    """The rescaled presentation: Phi(u_1..u_d) = psi_star(u_1/2, ..., u_d/2^d),
    so that Phi(P_1(n)..P_d(n))|_{z=n-1} evaluates the symmetric part."""

    expr: PowerSumExpr


def phi_from_psi(psi_star: PowerSumExpr) -> PhiExpr:
    return PhiExpr(psi_star.rescale_gens(lambda r: Fraction(1, 2**r)))


@dataclass(frozen=True)
class EvalReport:
    """Outcome of an exact evaluation at one level."""

    n: int
    value: Fraction
    power_sums: Tuple[Fraction, ...]  # P_1(n)..P_d(n)
    product_values: Tuple[Fraction, ...]  # M_{Q_i}(n) per factor
    mode: str  # "stable" or "general"
    residual: Optional[str] = None

    def breakdown(self) -> dict:
        out = {f"P_{h}": rat_str(v) for h, v in enumerate(self.power_sums, start=1)}
        for i, v in enumerate(self.product_values, start=1):
            out[f"M_{i}"] = rat_str(v)
        return out


def _assemble(F: AdmissibleFormula, n: int, mode: str) -> EvalReport:
    P = tuple(punctured_power_sum(n, h) for h in range(1, F.d + 1))
    gen_values = {h: P[h - 1] / 2**h for h in range(1, F.d + 1)}
    value = F.psi_star.substitute(gen_values, Fraction(n - 1))
    mvals = []
    for Q, mult in F.products:
        mq = multiplicative_invariant(Q, n)
        mvals.append(mq)
        value *= mq**mult
    return EvalReport(n, value, P, tuple(mvals), mode)


def stable_eval(F: AdmissibleFormula, n: int) -> EvalReport:
    """Exact evaluation through the invariants, guaranteed for n >= n_star."""
    if n < F.n_star:
        raise BelowThresholdError(
            f"below stable threshold {F.n_star}; use oracle_eval"
        )
    return _assemble(F, n, "stable")


def general_eval(F: AdmissibleFormula, n: int) -> EvalReport:
    """Exact evaluation at any level n >= 2; the power sums are computed
    with the full binomial formula, so no stable-range assumption is
    needed.  This is the exact side of the below-threshold oracle."""
    if n < 2:
        raise ValueError("level n must be >= 2")
    return _assemble(F, n, "general")


def eventual_polynomial(F: AdmissibleFormula) -> UniPoly:
    """The polynomial R(n) agreeing with stable_eval for every n >= n_star.
    Only defined in the polynomial case."""
    if not F.is_polynomial_case:
        raise ProductCaseError(
            "eventual polynomiality applies to the polynomial case only"
        )
    gen_values = {
        h: punctured_power_sum_stable(h).scale(Fraction(1, 2**h))
        for h in range(1, F.d + 1)
    }
    z_value = UniPoly([-1, 1], NVAR)
    result = F.psi_star.substitute(gen_values, z_value)
    if not isinstance(result, UniPoly):
        result = UniPoly.const(result, NVAR)
    return result.with_var(NVAR)


@dataclass(frozen=True)
class LevelCheck:
    n: int
    expected: Fraction
    got: Fraction

    @property
    def passed(self) -> bool:
        return self.expected == self.got


@dataclass(frozen=True)
class VerificationReport:
    formula: str
    d: int
    n_star: int
    eventual: Optional[UniPoly]
    symbolic_match: Optional[bool]
    difference: Optional[UniPoly]
    per_level: Tuple[LevelCheck, ...]

    @property
    def passed(self) -> bool:
        if self.symbolic_match is False:
            return False
        return all(c.passed for c in self.per_level)

    def to_dict(self) -> dict:
        return {
            "formula": self.formula,
            "d": self.d,
            "n_star": self.n_star,
            "eventual_polynomial": str(self.eventual) if self.eventual else None,
            "symbolic_match": self.symbolic_match,
            "difference": str(self.difference)
            if self.difference is not None and not self.difference.is_zero()
            else None,
            "per_level": [
                {
                    "n": c.n,
                    "expected": rat_str(c.expected),
                    "got": rat_str(c.got),
                    "pass": c.passed,
                }
                for c in self.per_level
            ],
            "pass": self.passed,
        }


def verify_identity(
    F: AdmissibleFormula,
    conjecture: UniPoly,
    check_below_threshold: bool = False,
    sweep: Optional[Sequence[int]] = None,
) -> VerificationReport:
    """Finite-verification principle.

    Polynomial case: the eventual polynomial is compared to the
    conjecture symbolically in Q[n], which covers all n >= n_star at
    once; optionally each level 2 <= n < n_star is checked against the
    exact general-regime evaluation.  With product factors present a
    symbolic comparison is refused and an explicit per-level sweep range
    must be supplied instead.
    """
    conjecture = conjecture.with_var(NVAR)
    levels: List[LevelCheck] = []
    eventual = None
    symbolic = None
    difference = None
    if F.is_polynomial_case:
        eventual = eventual_polynomial(F)
        difference = eventual - conjecture
        symbolic = difference.is_zero()
        if check_below_threshold:
            for n in range(2, F.n_star):
                levels.append(
                    LevelCheck(n, conjecture(Fraction(n)), general_eval(F, n).value)
                )
    else:
        if sweep is None:
            raise ProductCaseError(
                "symbolic verification requires the polynomial case; "
                "supply a per-level sweep range for product formulas"
            )
        for n in sweep:
            levels.append(
                LevelCheck(n, conjecture(Fraction(n)), general_eval(F, n).value)
            )
    return VerificationReport(
        formula=F.render(),
        d=F.d,
        n_star=F.n_star,
        eventual=eventual,
        symbolic_match=symbolic,
        difference=difference,
        per_level=tuple(levels),
    )
