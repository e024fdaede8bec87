import random
from fractions import Fraction

import pytest

from cyclosum.exactcore import UniPoly
from cyclosum.symfunc import PowerSumExpr


def random_rational(rng, bound=50):
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)


def random_unipoly(rng, max_degree, var="x", bound=20):
    degree = rng.randint(0, max_degree)
    return UniPoly([random_rational(rng, bound) for _ in range(degree + 1)], var)


def random_powersum_expr(rng, d, max_terms=3, z_degree=1):
    """Random nonzero PowerSumExpr of weighted degree <= d."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        remaining = rng.randint(0, d)
        exps = []
        r = 1
        while remaining >= r:
            e = rng.randint(0, remaining // r)
            exps.append(e)
            remaining -= r * e
            r += 1
        key = tuple(exps)
        coeff = random_unipoly(rng, rng.randint(0, z_degree), "z", bound=6)
        if not coeff.is_zero():
            terms[key] = coeff
    psi = PowerSumExpr(terms)
    if psi.is_zero():
        return PowerSumExpr.gen(1)
    return psi


@pytest.fixture
def rng():
    return random.Random(20260823)
