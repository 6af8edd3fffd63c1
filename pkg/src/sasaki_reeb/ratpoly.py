"""Exact univariate polynomials over the rationals.

Scalars are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms with a positive denominator).  Polynomials are dense and
immutable; index ``i`` of :attr:`RationalPoly.coeffs` is the coefficient of
``x**i``.

Besides ring arithmetic the module provides the pieces needed to certify a
real root: Sturm sequences, real-root isolation on (possibly unbounded)
open intervals, and a rational-root test that either returns the exact
rational root inside an isolating enclosure or proves there is none.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, Fraction]

DEFAULT_ROOT_WIDTH = Fraction(1, 2**64)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, floats (exactly) and ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot interpret {value!r} as a rational")


class RationalPoly:
    """Dense polynomial with :class:`Fraction` coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @classmethod
    def linear(cls, c0: Scalar, c1: Scalar) -> "RationalPoly":
        """``c0 + c1*x``."""
        return cls((c0, c1))

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == RationalPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"RationalPoly([{', '.join(str(c) for c in self._coeffs)}])"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"({c})*{mono}" if c.denominator != 1 else f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms).replace("+ -", "- ")

    def __bool__(self):
        return bool(self._coeffs)

    # ring operations

    @staticmethod
    def _lift(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly.constant(as_fraction(other))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return RationalPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            k = as_fraction(other)
            return RationalPoly(k * c for c in self._coeffs)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = RationalPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, x):
        return poly_eval(self, x)

    # calculus

    def derivative(self) -> "RationalPoly":
        return poly_derivative(self)

    def antiderivative(self) -> "RationalPoly":
        return poly_antiderivative(self)

    def shift(self, h: Scalar) -> "RationalPoly":
        """Return ``q`` with ``q(t) = self(t + h)``."""
        h = as_fraction(h)
        result = RationalPoly()
        step = RationalPoly.linear(h, 1)
        for c in reversed(self._coeffs):
            result = result * step + c
        return result

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def primitive_integer(self) -> tuple:
        """Integer coefficients with gcd 1 and positive leading term, same roots."""
        if self.is_zero():
            return ()
        den = 1
        for c in self._coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self._coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return tuple(ints)

    def to_strings(self) -> list:
        return [str(c) for c in self._coeffs]


def poly_mul(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    if p.is_zero() or q.is_zero():
        return RationalPoly()
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return RationalPoly(out)


def poly_eval(p: RationalPoly, x) -> Fraction:
    """Horner evaluation; exact for rational ``x``."""
    x = as_fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p: RationalPoly) -> RationalPoly:
    return RationalPoly(i * c for i, c in enumerate(p.coeffs) if i > 0)


def poly_antiderivative(p: RationalPoly) -> RationalPoly:
    """Antiderivative with zero constant term."""
    if p.is_zero():
        return RationalPoly()
    return RationalPoly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def poly_divmod(p: RationalPoly, d: RationalPoly) -> tuple:
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dd = d.degree
    lead = d.leading
    if len(rem) - 1 < dd:
        return RationalPoly(), p
    quot = [Fraction(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1 - dd, -1, -1):
        c = rem[k + dd] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(d.coeffs):
                rem[k + j] -= c * b
    return RationalPoly(quot), RationalPoly(rem[:dd])


def poly_gcd(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    """Monic greatest common divisor (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_part(p: RationalPoly) -> RationalPoly:
    """Monic polynomial with the same distinct roots as ``p``, all simple."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    if p.degree == 0:
        return RationalPoly.constant(1)
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: RationalPoly) -> list:
    """Sturm chain of the square-free part of ``p``."""
    f = squarefree_part(p)
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[RationalPoly], x) -> int:
    signs = [s for s in (_sign(poly_eval(q, x)) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: RationalPoly) -> Fraction:
    """Every real root of ``p`` lies strictly inside ``(-B, B)``."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval ``[lo, hi]``; ``lo == hi`` marks an exact root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.lo <= as_fraction(x) <= self.hi

    def __float__(self):
        return float(self.midpoint)


def _count(seq, a, b) -> int:
    """Number of distinct roots in the half-open ``(a, b]``."""
    return sign_variations(seq, a) - sign_variations(seq, b)


def _refine(f: RationalPoly, seq, a: Fraction, b: Fraction, width: Fraction) -> Enclosure:
    """Shrink ``(a, b]`` holding exactly one root of square-free ``f``."""
    while True:
        if f(b) == 0:
            return Enclosure(b, b)
        if b - a <= width and f(a) != 0:
            return Enclosure(a, b)
        m = (a + b) / 2
        fm = f(m)
        if fm == 0:
            return Enclosure(m, m)
        if f(a) != 0:
            # simple root: a sign change locates it
            if _sign(f(a)) != _sign(fm):
                b = m
            else:
                a = m
        elif _count(seq, a, m) == 1:
            b = m
        else:
            a = m


def isolate_real_roots(
    p: RationalPoly,
    interval: tuple = (None, None),
    width: Fraction = DEFAULT_ROOT_WIDTH,
) -> list:
    """Disjoint enclosures, one per distinct real root of ``p`` in the open interval.

    ``interval`` is ``(lo, hi)``; ``None`` stands for an infinite end.  Each
    returned enclosure has width at most ``width`` and either is a single
    exact root or the square-free part of ``p`` has opposite nonzero signs at
    its ends.  Enclosures are sorted and pairwise disjoint.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p.degree == 0:
        return []
    f = squarefree_part(p)
    seq = sturm_sequence(f)
    bound = cauchy_bound(f)
    lo, hi = interval
    lo = -bound if lo is None else max(as_fraction(lo), -bound)
    hi = bound if hi is None else min(as_fraction(hi), bound)
    if lo >= hi:
        return []

    if f(hi) == 0:
        # exclude the root at the open upper end
        step = (hi - lo) / 2
        while _count(seq, hi - step, hi) != 1:
            step /= 2
        hi -= step

    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _count(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(f, seq, a, b, width))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    out.sort(key=lambda e: e.lo)
    return out


def rational_root_test(p: RationalPoly, enclosure: Enclosure) -> Optional[Fraction]:
    """The rational root of ``p`` in ``enclosure``, or ``None`` if it is irrational.

    ``enclosure`` must isolate a single real root.  A rational root ``r/s``
    of ``p`` has ``s`` dividing the leading coefficient ``L`` of the primitive
    integer form of the square-free part.  Once the enclosure is narrower
    than ``1/(2 L**2)`` at most one fraction with denominator ``<= L`` can be
    closer to the midpoint than the root, so the best approximation with
    bounded denominator is the only candidate that has to be checked.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    f = squarefree_part(p)
    lo, hi = enclosure.lo, enclosure.hi
    for end in (lo, hi):
        if f(end) == 0:
            return end
    ints = f.primitive_integer()
    lead = abs(ints[-1])
    target = Fraction(1, 2 * lead * lead)
    slo = _sign(f(lo))
    if slo == _sign(f(hi)):
        raise ValueError("enclosure does not bracket a sign change")
    while hi - lo >= target:
        m = (lo + hi) / 2
        fm = f(m)
        if fm == 0:
            return m
        if _sign(fm) == slo:
            lo = m
        else:
            hi = m
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo <= cand <= hi and f(cand) == 0:
        return cand
    return None
