from fractions import Fraction

import pytest
import sympy

from logcert.exact import Polynomial, RationalFunction
from logcert.sequences import build_table, quotients

n = sympy.Symbol("n")


def to_sympy(p):
    """Polynomial or RationalFunction -> sympy expression in n."""
    if isinstance(p, RationalFunction):
        return to_sympy(p.num) / to_sympy(p.den)
    return sum((sympy.Rational(c.numerator, c.denominator) * n ** i for i, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def from_sympy(expr):
    """Polynomial in n -> Polynomial (lowest degree first)."""
    coeffs = sympy.Poly(sympy.expand(expr), n).all_coeffs()[::-1]
    return Polynomial(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs)


def same_function(ours, expr):
    return sympy.simplify(to_sympy(ours) - expr) == 0


@pytest.fixture(scope="session")
def S_table():
    return build_table("S", 502)


@pytest.fixture(scope="session")
def S_quotients(S_table):
    return quotients(S_table)
