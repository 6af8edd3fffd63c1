"""Transverse Kaehler-Einstein profile at the Reeb parameter a_0.

With ``A = A_a`` from :mod:`sasaki_reeb.reeb` and ``c = 1/(1+2a)``, the map

    B(x) = integral over [0, x] of prod_k (1 + mu_{k,a} s) / A(s) ds

is a diffeomorphism of ``(-c, 1)`` onto the real line (the integrand is
``-A'(s) / (s A(s))`` with the removable point ``s = 0`` cancelled).  Its
inverse ``x(rho)`` and ``u(rho) = -log A(x(rho))`` satisfy ``u' = x`` and

    u'' * prod_k (1 + mu_{k,a} u') = exp(-u).

The integrand has simple poles at both ends of the interval, so positions
near an end cannot be resolved in ``x`` itself.  Everything is therefore
computed in the log-distance coordinate ``sigma``:

    x = 1 - exp(-sigma)          for x >= 0,
    x = -c + c * exp(-sigma)     for x <= 0,

in which the transformed integrand tends to the constants 1 and 1/c, and
``A`` is evaluated from exact Taylor expansions about the nearby endpoint.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .catalog import FanoBaseSpec
from .errors import DomainError, PositivityViolation, QuadratureFailure
from .quadrature import integrate
from .ratpoly import Enclosure, RationalPoly, as_fraction, isolate_real_roots
from .reeb import A_poly, F_value, ReebSolution, mu_shift, refine_enclosure
from .report import VerificationReport

PROFILE_PARAMETER_WIDTH = Fraction(1, 2**100)
DEFAULT_QUAD_TOL = 1e-10
CSV_COLUMNS = ("rho", "x", "u", "u_second", "ode_residual", "min_margin")


def _floats(p: RationalPoly) -> np.ndarray:
    return np.array([float(c) for c in p.coeffs] or [0.0])


class _Model:
    """Float evaluators for one ``(spec, a)``, built from exact coefficients.

    ``B`` lives on ``(bottom, top)``: normally ``(-c, 1)``, narrowed to the
    nearest zero of ``A`` when ``A(1) != 0`` puts one inside the interval.
    """

    def __init__(self, spec: FanoBaseSpec, a: Fraction):
        self.spec = spec
        self.a = a
        self.c_exact = 1 / (1 + 2 * a)
        self.c = float(self.c_exact)
        A = A_poly(spec, a)
        self.A_exact = A
        top, bottom = Fraction(1), -self.c_exact
        inner = isolate_real_roots(A, (0, 1))
        if inner:
            top = inner[0].lo if inner[0].lo > 0 else inner[0].midpoint
        inner = isolate_real_roots(A, (-self.c_exact, 0))
        if inner:
            bottom = inner[-1].hi if inner[-1].hi < 0 else inner[-1].midpoint
        self.top_exact, self.bottom_exact = top, bottom
        self.end = {1: float(top), -1: float(bottom)}
        self.A_zero = _floats(A)
        self.A_near = {1: _floats(A.shift(top)), -1: _floats(A.shift(bottom))}
        self.mu_a = np.array([float(mu_shift(mu, a)) for mu, _ in spec.entries])
        self.mult = np.array([m for _, m in spec.entries], dtype=float)
        self.A_at_zero = float(A(0))

    def prod(self, x):
        x = np.asarray(x, dtype=float)
        factors = 1.0 + self.mu_a[:, None] * x.reshape(1, -1)
        return np.prod(factors ** self.mult[:, None], axis=0).reshape(x.shape)

    def margin(self, x) -> float:
        return float(np.min(1.0 + self.mu_a * x))

    def x_of(self, side: int, sigma):
        return -self.end[side] * np.expm1(-np.asarray(sigma, dtype=float))

    def sigma_of(self, x: float) -> tuple:
        side = 1 if x >= 0 else -1
        return side, -math.log1p(-x / self.end[side])

    def A_sigma(self, side: int, sigma):
        sigma = np.asarray(sigma, dtype=float)
        e = np.exp(-sigma)
        # x - end = -end * exp(-sigma) without cancellation
        near = npoly.polyval(-self.end[side] * e, self.A_near[side])
        return np.where(e < 0.5, near, npoly.polyval(self.x_of(side, sigma), self.A_zero))

    def speed(self, side: int, sigma):
        """``|dB/dsigma|``: the B integrand times the Jacobian of the substitution."""
        sigma = np.asarray(sigma, dtype=float)
        jac = abs(self.end[side]) * np.exp(-sigma)
        return self.prod(self.x_of(side, sigma)) * jac / self.A_sigma(side, sigma)

    def B_abs(self, side: int, sigma: float, quad_tol: float) -> float:
        if sigma == 0:
            return 0.0
        value, _, _ = integrate(lambda t: self.speed(side, t), 0.0, sigma, quad_tol)
        return value


@lru_cache(maxsize=64)
def _model(spec: FanoBaseSpec, a: Fraction) -> _Model:
    return _Model(spec, a)


def _model_for(spec: FanoBaseSpec, a) -> _Model:
    a = as_fraction(a)
    if a <= Fraction(-1, 2):
        raise DomainError(f"a={a} must exceed -1/2")
    return _model(spec, a)


def profile_parameter(reeb: ReebSolution, width=PROFILE_PARAMETER_WIDTH) -> Fraction:
    """Rational midpoint of the a_0 enclosure, refined exactly to ``width`` first.

    The refinement makes ``A_a(1) = -F(a)`` negligible; at the solver's
    default width it is about 1e-12, which would move the end of ``B``'s
    range to rho of about 27.  Enclosures that do not bracket a sign change
    (deliberately perturbed ones) are used as given.
    """
    if reeb.a0_exact is not None:
        return reeb.a0_exact
    enc = reeb.a0_enclosure
    if enc.is_exact:
        return enc.lo
    spec = reeb.spec
    if F_value(spec, enc.lo) < 0 < F_value(spec, enc.hi):
        enc = refine_enclosure(spec, enc, width)
    return enc.midpoint


def B_value(spec: FanoBaseSpec, a, x: float, quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """``B_a(x)`` by adaptive quadrature with absolute error estimate ``<= quad_tol``."""
    m = _model_for(spec, a)
    fx = as_fraction(x)
    if not -m.c_exact < fx < 1:
        raise DomainError(f"x={x} outside the open interval (-{m.c_exact}, 1)")
    if not m.bottom_exact < fx < m.top_exact:
        raise DomainError(f"x={x} lies beyond a zero of A_a; B is infinite there")
    if x == 0:
        return 0.0
    side, sigma = m.sigma_of(float(x))
    return side * m.B_abs(side, sigma, quad_tol)


class ProfilePoint(NamedTuple):
    rho: float
    side: int
    sigma: float
    x: float
    A: float
    u: float
    u_second: float
    ode_residual: float
    min_margin: float


def _solve_sigma(m: _Model, side: int, target: float, tol: float, quad_tol: float, guess=None):
    """Safeguarded Newton for ``|B|(sigma) = target`` on ``sigma > 0``."""
    lo, hi = 0.0, math.inf
    # |B| grows like sigma / |end| for large sigma
    start = target * abs(m.end[side])
    sigma = guess if guess is not None and guess > 0 else start
    best = None
    for _ in range(200):
        g = m.B_abs(side, sigma, quad_tol) - target
        if best is None or abs(g) < abs(best[1]):
            best = (sigma, g)
        if g == 0:
            return sigma
        if g < 0:
            lo = sigma
        else:
            hi = sigma
        step = g / float(m.speed(side, sigma))
        if abs(g) <= tol and abs(step) <= 4e-16 * max(1.0, sigma):
            return sigma
        new = sigma - step
        if not lo < new < hi:
            new = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * sigma + 1.0
        if new == sigma or hi - lo <= 4e-16 * max(1.0, sigma):
            break
        sigma = new
    if abs(best[1]) <= tol:
        return best[0]
    raise QuadratureFailure(
        f"inversion of B at rho={target * side} stalled at |B - rho|={abs(best[1]):.3g}"
    )


def _point(m: _Model, rho: float, side: int, sigma: float) -> ProfilePoint:
    x = float(m.x_of(side, sigma))
    # far out x may round onto an end of the domain; keep it strictly inside
    while as_fraction(x) >= m.top_exact:
        x = math.nextafter(x, -math.inf)
    while as_fraction(x) <= m.bottom_exact:
        x = math.nextafter(x, math.inf)
    A = float(m.A_sigma(side, sigma)) if sigma > 0 else m.A_at_zero
    prod = float(m.prod(np.array(x)))
    # u'' = -x A / A' = A / prod since A'(x) = -x prod(x); removable at x = 0
    u = -math.log(A)
    u_second = A / prod
    residual = u_second * prod - math.exp(-u)
    return ProfilePoint(rho, side, sigma, x, A, u, u_second, residual, m.margin(x))


def profile_point(spec: FanoBaseSpec, a, rho: float, tol: float = 1e-12,
                  quad_tol: Optional[float] = None, guess: Optional[float] = None) -> ProfilePoint:
    """``x(rho)``, ``u(rho)``, ``u''(rho)`` and the ODE residual at one ``rho``."""
    m = _model_for(spec, a)
    quad_tol = tol / 10 if quad_tol is None else quad_tol
    if rho == 0:
        return _point(m, 0.0, 1, 0.0)
    side = 1 if rho > 0 else -1
    sigma = _solve_sigma(m, side, abs(rho), tol, quad_tol, guess)
    return _point(m, float(rho), side, sigma)


def invert_B(spec: FanoBaseSpec, a, rho: float, tol: float = 1e-12,
             quad_tol: Optional[float] = None) -> float:
    """The ``x`` in ``(-1/(1+2a), 1)`` with ``|B(x) - rho| <= tol``."""
    return profile_point(spec, a, rho, tol, quad_tol).x


class ProfileRow(NamedTuple):
    rho: float
    x: float
    u: float
    u_second: float
    ode_residual: float
    min_margin: float


@dataclass
class ProfileTable:
    spec: FanoBaseSpec
    a: float
    a_exact: Fraction
    rows: list
    quadrature_tolerance: float

    @property
    def lower_endpoint(self) -> Fraction:
        return -1 / (1 + 2 * self.a_exact)

    def column(self, name: str) -> np.ndarray:
        i = CSV_COLUMNS.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self, fh=None) -> Optional[str]:
        own = fh is None
        if own:
            fh = io.StringIO()
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([repr(float(v)) for v in r])
        return fh.getvalue() if own else None


def build_profile(spec: FanoBaseSpec, reeb: ReebSolution, rho_min: float = -20.0,
                  rho_max: float = 20.0, steps: int = 2001,
                  quad_tol: float = DEFAULT_QUAD_TOL) -> ProfileTable:
    """Tabulate the profile on a uniform ``rho`` grid at the solver's ``a_0``."""
    if not rho_min < rho_max:
        raise ValueError("rho_min must be below rho_max")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    a = profile_parameter(reeb)
    m = _model_for(spec, a)
    rows = []
    guess = {1: None, -1: None}
    for rho in np.linspace(rho_min, rho_max, steps):
        rho = float(rho)
        if rho == 0:
            p = _point(m, 0.0, 1, 0.0)
        else:
            side = 1 if rho > 0 else -1
            sigma = _solve_sigma(m, side, abs(rho), quad_tol, quad_tol / 10, guess[side])
            guess[side] = sigma
            p = _point(m, rho, side, sigma)
        if not p.min_margin > 0:
            raise PositivityViolation(f"1 + mu_(k,a) x <= 0 at rho={rho}, x={p.x}")
        rows.append(ProfileRow(p.rho, p.x, p.u, p.u_second, p.ode_residual, p.min_margin))
    return ProfileTable(spec, float(a), a, rows, quad_tol)


@dataclass
class ProfileTolerances:
    ode_residual: Optional[float] = None  # default: 100 * quadrature tolerance
    endpoint: float = 1e-8
    samples: int = 201


def verify_profile(table: ProfileTable, reeb: ReebSolution,
                   tolerances: Optional[ProfileTolerances] = None) -> VerificationReport:
    """Run every profile invariant; failures become report entries."""
    tol = tolerances or ProfileTolerances()
    ode_tol = tol.ode_residual if tol.ode_residual is not None else 100 * table.quadrature_tolerance
    spec, a = table.spec, table.a_exact
    enc = reeb.a0_enclosure
    report = VerificationReport(provenance={
        "label": spec.label,
        "a0_enclosure": [str(enc.lo), str(enc.hi)],
        "a": str(a),
        "a_float": float(a),
    })
    rho = table.column("rho")
    x = table.column("x")
    res = table.column("ode_residual")
    upp = table.column("u_second")
    margins = table.column("min_margin")

    sup = float(np.max(np.abs(res))) if len(res) else 0.0
    report.add("ode_residual_sup", sup <= ode_tol, sup, ode_tol)
    report.add("u_second_positive", bool(np.all(upp > 0)), float(np.min(upp)), 0.0)
    report.add("rho_strictly_increasing", bool(np.all(np.diff(rho) > 0)),
               float(np.min(np.diff(rho))), 0.0)
    report.add("x_strictly_increasing", bool(np.all(np.diff(x) > 0)),
               float(np.min(np.diff(x))), 0.0)

    lower = -1 / (1 + 2 * a)
    xs_exact = [Fraction(float(v)) for v in x]
    inside = all(lower < v < 1 for v in xs_exact)
    gap = min(min(float(v - lower), float(1 - v)) for v in xs_exact)
    report.add("x_in_open_interval", inside, gap, 0.0)
    report.add("positivity_margin", bool(np.all(margins > 0)), float(np.min(margins)), 0.0)

    A = A_poly(spec, a)
    grid = [lower + (1 - lower) * Fraction(i, tol.samples + 1) for i in range(1, tol.samples + 1)]
    samples = xs_exact + grid
    A0 = A(0)
    A_vals = [A(s) for s in samples]
    report.add("A_bounds", all(0 < v <= A0 for v in A_vals), float(min(A_vals)), 0.0,
               "0 < A(x) <= A(0) at table rows and a uniform interior grid")
    dA = A.derivative()
    ratios = [dA(s) / s for s in samples if s != 0]
    report.add("A_prime_over_x_negative", all(r < 0 for r in ratios), float(max(ratios)), 0.0)

    A1 = A(1)
    report.add("endpoint_A1_zero", abs(A1) <= tol.endpoint, float(abs(A1)), tol.endpoint,
               "A_a(1) = -F(a) must vanish for the profile to close up")
    brackets = enc.is_exact and F_value(spec, enc.lo) == 0 or (
        not enc.is_exact and F_value(spec, enc.lo) <= 0 <= F_value(spec, enc.hi)
    )
    report.add("enclosure_brackets_root", brackets, f"[{enc.lo}, {enc.hi}]")
    report.add("a_in_enclosure", enc.contains(a), str(a))
    return report


@dataclass
class MomentData:
    a: float
    interval: tuple
    samples: list = field(default_factory=list)

    @property
    def v_prime(self) -> np.ndarray:
        return np.array([s[2] for s in self.samples])


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def moment_function(a: float, x_samples) -> MomentData:
    """``v(x) = 2 log(exp(x/2) + exp(-x/(2(1+2a))))`` and its derivative."""
    a = float(a)
    if not a > -0.5:
        raise DomainError(f"a={a} must exceed -1/2")
    c = 1.0 / (1.0 + 2.0 * a)
    xs = np.asarray(x_samples, dtype=float)
    v = 2.0 * np.logaddexp(0.5 * xs, -0.5 * c * xs)
    z = 0.5 * (1.0 + c) * xs
    # v' = w * 1 + (1 - w) * (-c) with w = sigmoid(z)
    vp = _sigmoid(z) - c * _sigmoid(-z)
    return MomentData(a, (-c, 1.0), list(zip(xs.tolist(), v.tolist(), vp.tolist())))


class Chart(Enum):
    PLUS = "plus"
    MINUS = "minus"


def _log_fiber_metric(a: float, log_r: float, chart: Chart) -> float:
    k = 1.0 + 2.0 * a
    if chart is Chart.PLUS:
        # (|z|^-1 + |z|^(1/(1+2a)))^-2 / |z|^2
        return -2.0 * np.logaddexp(-log_r, log_r / k) - 2.0 * log_r
    # (1+2a)^2 (|z|^(1+2a) + |z|^-1)^-2 / |z|^2
    return 2.0 * math.log(k) - 2.0 * np.logaddexp(k * log_r, -log_r) - 2.0 * log_r


def evaluate_fiber_metric(a: float, z_modulus: float, chart: Chart) -> float:
    """Coefficient of ``|dz|^2`` in the S^1-invariant fiber metric ``G``."""
    if not z_modulus > 0:
        raise DomainError("z_modulus must be positive")
    if not float(a) > -0.5:
        raise DomainError(f"a={a} must exceed -1/2")
    return float(math.exp(_log_fiber_metric(float(a), math.log(z_modulus), Chart(chart))))


def chart_mismatch(a: float, z_minus: float) -> float:
    """Relative gap between ``G`` in the Minus chart and the Plus chart pulled back.

    ``|z+| = |z-|^-(1+2a)`` and ``|dz+/dz-| = (1+2a) |z+| / |z-|``.
    """
    k = 1.0 + 2.0 * float(a)
    z_plus = z_minus ** (-k)
    pulled = evaluate_fiber_metric(a, z_plus, Chart.PLUS) * k * k * z_plus**2 / z_minus**2
    direct = evaluate_fiber_metric(a, z_minus, Chart.MINUS)
    return abs(pulled / direct - 1.0)
