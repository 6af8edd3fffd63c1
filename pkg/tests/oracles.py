"""Independent symbolic oracles built with sympy (tests only)."""

from fractions import Fraction

import sympy as sp

X, A = sp.symbols("x a")


def _q(v):
    v = Fraction(v)
    return sp.Rational(v.numerator, v.denominator)


def _f(spec, a):
    expr = X
    for mu, m in spec.entries:
        mu = _q(mu)
        expr *= (1 + (mu + a * (1 + mu)) * X) ** m
    return expr


def F_sym(spec):
    """F(a) as a rational function of the symbol ``a``."""
    return sp.integrate(sp.expand(_f(spec, A)), (X, -1 / (1 + 2 * A), 1))


def F_exact(spec, a):
    a = _q(a)
    val = sp.integrate(sp.expand(_f(spec, a)), (X, -1 / (1 + 2 * a), 1))
    return Fraction(int(sp.numer(val)), int(sp.denom(val)))


def P_coeffs(spec):
    """Coefficients of (1+2a)^(n+2) F(a), low degree first, as Fractions."""
    expr = sp.cancel(sp.together(F_sym(spec) * (1 + 2 * A) ** (spec.n + 2)))
    poly = sp.Poly(expr, A)
    out = [Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in reversed(poly.all_coeffs())]
    while out and out[-1] == 0:
        out.pop()
    return out


def root_float(spec):
    """Unique real root of F on (-1/2, oo) from sympy's own solver."""
    expr = sp.cancel(sp.together(F_sym(spec) * (1 + 2 * A) ** (spec.n + 2)))
    roots = [r for r in sp.Poly(expr, A).real_roots() if r > sp.Rational(-1, 2)]
    assert len(roots) == 1
    return roots[0]
