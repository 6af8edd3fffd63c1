"""The Reeb parameter a_0 and the exact quantities around it.

For ``a > -1/2`` write ``mu_{k,a} = mu_k + a (1 + mu_k)`` and

    f(x; a) = x * prod_k (1 + mu_{k,a} x)
    F(a)    = integral of f(x; a) dx over [-1/(1+2a), 1]
    A_a(x)  = -integral of f(s; a) ds over [-1/(1+2a), x]

so that ``F(a) = -A_a(1)``.  ``F`` is strictly increasing and runs from
``-inf`` to ``+inf`` on ``(-1/2, inf)``; its unique zero ``a_0`` selects the
Reeb field carrying a transverse Kaehler-Einstein metric.

Everything here is exact: ``f`` is a polynomial in ``x`` with rational
coefficients whenever ``a`` is rational, so ``F`` and ``A_a`` come from an
exact antiderivative.  The root is located twice, by exact bisection on
``F`` and by Sturm isolation of the numerator ``P(a) = (1+2a)^(n+2) F(a)``,
and the two answers must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .catalog import FanoBaseSpec, spec_from_json_dict
from .errors import ReebParameterOutOfRange, SolverFailure
from .ratpoly import (
    Enclosure,
    RationalPoly,
    as_fraction,
    isolate_real_roots,
    rational_root_test,
)

DEFAULT_TOLERANCE = Fraction(1, 10**12)
SEARCH_UPPER_CAP = Fraction(10**6)
SEARCH_LOWER_GAP = Fraction(1, 10**9)
HALF = Fraction(1, 2)


def mu_shift(mu, a) -> Fraction:
    """``mu + a (1 + mu)``."""
    mu, a = as_fraction(mu), as_fraction(a)
    return mu + a * (1 + mu)


def _check_a(a) -> Fraction:
    a = as_fraction(a)
    if a <= -HALF:
        raise ReebParameterOutOfRange(f"Reeb parameter a={a} must exceed -1/2")
    return a


def lower_endpoint(a) -> Fraction:
    """Left end ``-1/(1+2a)`` of the moment interval."""
    a = _check_a(a)
    return -1 / (1 + 2 * a)


def integrand_poly(spec: FanoBaseSpec, a) -> RationalPoly:
    """``f(x; a)`` as an exact polynomial in ``x`` of degree ``n+1``."""
    a = _check_a(a)
    f = RationalPoly.x()
    for mu, mult in spec.entries:
        f = f * RationalPoly.linear(1, mu_shift(mu, a)) ** mult
    return f


def A_poly(spec: FanoBaseSpec, a) -> RationalPoly:
    """``A_a`` as a polynomial in ``x``; vanishes at ``-1/(1+2a)``."""
    a = _check_a(a)
    g = integrand_poly(spec, a).antiderivative()
    return -(g - g(lower_endpoint(a)))


def A_value(spec: FanoBaseSpec, a, x) -> Fraction:
    a = _check_a(a)
    g = integrand_poly(spec, a).antiderivative()
    return -(g(x) - g(lower_endpoint(a)))


def F_value(spec: FanoBaseSpec, a) -> Fraction:
    a = _check_a(a)
    g = integrand_poly(spec, a).antiderivative()
    return g(1) - g(lower_endpoint(a))


def _integrand_a_derivative(spec: FanoBaseSpec, a: Fraction) -> RationalPoly:
    """``d f(x; a) / da`` as a polynomial in ``x``."""
    total = RationalPoly()
    factors = [(mu, m, RationalPoly.linear(1, mu_shift(mu, a))) for mu, m in spec.entries]
    for j, (mu_j, m_j, lin_j) in enumerate(factors):
        term = RationalPoly((0, 0, m_j * (1 + mu_j))) * lin_j ** (m_j - 1)
        for k, (_, m_k, lin_k) in enumerate(factors):
            if k != j:
                term = term * lin_k**m_k
        total = total + term
    return total


def F_derivative_value(spec: FanoBaseSpec, a) -> Fraction:
    """``F'(a)`` from differentiation under the integral plus the moving-endpoint term."""
    a = _check_a(a)
    lo = lower_endpoint(a)
    g = _integrand_a_derivative(spec, a).antiderivative()
    interior = g(1) - g(lo)
    boundary = Fraction(-2) / (1 + 2 * a) ** 2 * integrand_poly(spec, a)(lo)
    return interior + boundary


def futaki_obstruction(spec: FanoBaseSpec) -> Fraction:
    """``integral over [-1, 1] of x prod (1 + mu_k x) dx``; zero iff M_W^L is Kaehler-Einstein."""
    f = RationalPoly.x()
    for mu, mult in spec.entries:
        f = f * RationalPoly.linear(1, mu) ** mult
    g = f.antiderivative()
    return g(1) - g(-1)


def exact_numerator_poly(spec: FanoBaseSpec) -> RationalPoly:
    """``P(a) = (1+2a)^(n+2) F(a)``, built with ``a`` as the indeterminate."""
    n = spec.n
    # f(x; a) = sum_j coeffs[j](a) x^j with polynomial coefficients in a
    coeffs = [RationalPoly(), RationalPoly.constant(1)]
    for mu, mult in spec.entries:
        shifted = RationalPoly.linear(mu, 1 + mu)
        for _ in range(mult):
            nxt = [RationalPoly() for _ in range(len(coeffs) + 1)]
            for j, c in enumerate(coeffs):
                nxt[j] = nxt[j] + c
                nxt[j + 1] = nxt[j + 1] + c * shifted
            coeffs = nxt
    one_plus_2a = RationalPoly.linear(1, 2)
    upper = RationalPoly()
    lower = RationalPoly()
    for j, c in enumerate(coeffs):
        if c.is_zero():
            continue
        upper = upper + c * Fraction(1, j + 1)
        # (-1/(1+2a))^(j+1)/(j+1), times (1+2a)^(n+2)
        lower = lower + c * one_plus_2a ** (n + 1 - j) * Fraction((-1) ** (j + 1), j + 1)
    return upper * one_plus_2a ** (n + 2) - lower


@dataclass(frozen=True)
class QuasiRegular:
    a0: Fraction
    name = "quasi-regular"


@dataclass(frozen=True)
class Irregular:
    name = "irregular"


Regularity = Union[QuasiRegular, Irregular]


def classify_regularity(P: RationalPoly, enclosure: Enclosure) -> Regularity:
    r = rational_root_test(P, enclosure)
    return Irregular() if r is None else QuasiRegular(r)


@dataclass(frozen=True)
class ReebSolution:
    spec: FanoBaseSpec
    tolerance: Fraction
    a0_enclosure: Enclosure
    a0_float: float
    P: RationalPoly
    isolation_enclosure: Enclosure
    regularity: Regularity
    F_residual: float
    futaki_at_zero: Fraction

    @property
    def a0_exact(self) -> Optional[Fraction]:
        if isinstance(self.regularity, QuasiRegular):
            return self.regularity.a0
        return None

    def to_json_dict(self) -> dict:
        a0 = {
            "float": self.a0_float,
            "enclosure": [str(self.a0_enclosure.lo), str(self.a0_enclosure.hi)],
            "isolation_enclosure": [
                str(self.isolation_enclosure.lo),
                str(self.isolation_enclosure.hi),
            ],
            "regularity": self.regularity.name,
            "exact": None if self.a0_exact is None else str(self.a0_exact),
        }
        return {
            "label": self.spec.label,
            "spec": self.spec.to_json_dict(),
            "tolerance": str(self.tolerance),
            "a0": a0,
            "F_residual": self.F_residual,
            "futaki": str(self.futaki_at_zero),
            "futaki_float": float(self.futaki_at_zero),
            "P_coeffs": self.P.to_strings(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ReebSolution":
        a0 = data["a0"]
        if a0["regularity"] == QuasiRegular.name:
            regularity: Regularity = QuasiRegular(Fraction(a0["exact"]))
        else:
            regularity = Irregular()
        spec = spec_from_json_dict(data["spec"])
        return cls(
            spec=spec,
            tolerance=Fraction(data["tolerance"]),
            a0_enclosure=Enclosure(*map(Fraction, a0["enclosure"])),
            a0_float=float(a0["float"]),
            P=RationalPoly(Fraction(c) for c in data["P_coeffs"]),
            isolation_enclosure=Enclosure(*map(Fraction, a0["isolation_enclosure"])),
            regularity=regularity,
            F_residual=float(data["F_residual"]),
            futaki_at_zero=Fraction(data["futaki"]),
        )


def bracket_root(spec: FanoBaseSpec) -> Enclosure:
    """Exact sign-change bracket ``[lo, hi]`` with ``F(lo) < 0 < F(hi)`` (or an exact root)."""
    f0 = F_value(spec, 0)
    if f0 == 0:
        return Enclosure(Fraction(0), Fraction(0))
    if f0 < 0:
        lo, hi = Fraction(0), Fraction(1)
        while True:
            fh = F_value(spec, hi)
            if fh == 0:
                return Enclosure(hi, hi)
            if fh > 0:
                return Enclosure(lo, hi)
            if hi >= SEARCH_UPPER_CAP:
                raise SolverFailure(f"F stays negative up to a={hi}")
            lo, hi = hi, min(2 * hi, SEARCH_UPPER_CAP)
    hi = Fraction(0)
    gap = HALF
    while True:
        lo = -HALF + gap
        fl = F_value(spec, lo)
        if fl == 0:
            return Enclosure(lo, lo)
        if fl < 0:
            return Enclosure(lo, hi)
        if gap <= SEARCH_LOWER_GAP:
            raise SolverFailure(f"F stays positive down to a={lo}")
        hi = lo
        gap = max(gap / 2, SEARCH_LOWER_GAP)


def refine_enclosure(spec: FanoBaseSpec, enc: Enclosure, width) -> Enclosure:
    """Continue exact bisection of ``F`` inside a sign-change bracket until ``width``."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = enc.lo, enc.hi
    while hi - lo > width:
        m = (lo + hi) / 2
        fm = F_value(spec, m)
        if fm == 0:
            return Enclosure(m, m)
        if fm < 0:
            lo = m
        else:
            hi = m
    return Enclosure(lo, hi)


def bisect_root(spec: FanoBaseSpec, tolerance=DEFAULT_TOLERANCE) -> Enclosure:
    """Exact bisection of ``F`` down to width ``<= tolerance``."""
    return refine_enclosure(spec, bracket_root(spec), tolerance)


def _float_inside(enc: Enclosure) -> tuple:
    lo, hi = float(enc.lo), float(enc.hi)
    if Fraction(lo) < enc.lo:
        lo = math.nextafter(lo, math.inf)
    if Fraction(hi) > enc.hi:
        hi = math.nextafter(hi, -math.inf)
    return lo, hi


def newton_polish(spec: FanoBaseSpec, enc: Enclosure, iterations: int = 4) -> float:
    """Float Newton on ``F`` started at the midpoint and clamped to ``enc``."""
    if enc.is_exact:
        return float(enc.lo)
    lo, hi = _float_inside(enc)
    x = min(max(float(enc.midpoint), lo), hi)
    best, best_res = x, abs(F_value(spec, Fraction(x)))
    for _ in range(iterations):
        fx = F_value(spec, Fraction(x))
        if fx == 0:
            return x
        d = float(F_derivative_value(spec, Fraction(x)))
        x = min(max(x - float(fx) / d, lo), hi)
        res = abs(F_value(spec, Fraction(x)))
        if res < best_res:
            best, best_res = x, res
    return best


def solve_reeb_parameter(spec: FanoBaseSpec, tolerance=DEFAULT_TOLERANCE) -> ReebSolution:
    """Find ``a_0`` by exact bisection and confirm it by isolating the roots of ``P``."""
    tolerance = as_fraction(tolerance)
    enc = bisect_root(spec, tolerance)

    P = exact_numerator_poly(spec)
    roots = isolate_real_roots(P, (-HALF, None), width=tolerance)
    if len(roots) != 1:
        raise SolverFailure(f"P(a) has {len(roots)} roots in (-1/2, inf), expected 1")
    iso = roots[0]
    if iso.hi < enc.lo - tolerance or iso.lo > enc.hi + tolerance:
        raise SolverFailure(
            f"bisection enclosure [{enc.lo}, {enc.hi}] and isolation enclosure "
            f"[{iso.lo}, {iso.hi}] disagree"
        )

    regularity = classify_regularity(P, iso)
    if isinstance(regularity, QuasiRegular):
        a0_float = float(regularity.a0)
        if not enc.contains(regularity.a0):
            raise SolverFailure("rational root of P lies outside the bisection enclosure")
    else:
        a0_float = newton_polish(spec, enc)
    residual = abs(float(F_value(spec, Fraction(a0_float))))
    return ReebSolution(
        spec=spec,
        tolerance=tolerance,
        a0_enclosure=enc,
        a0_float=a0_float,
        P=P,
        isolation_enclosure=iso,
        regularity=regularity,
        F_residual=residual,
        futaki_at_zero=futaki_obstruction(spec),
    )

