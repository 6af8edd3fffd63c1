import math
from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sasaki_reeb.ratpoly import (
    Enclosure,
    RationalPoly,
    isolate_real_roots,
    poly_antiderivative,
    poly_eval,
    poly_mul,
    rational_root_test,
    squarefree_part,
    sturm_sequence,
)

HALF = Fr(1, 2)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=50)
polys = st.lists(rationals, min_size=0, max_size=13).map(RationalPoly)


def P(*cs):
    return RationalPoly(cs)


class TestArithmetic:
    def test_difference_of_squares(self):
        assert poly_mul(P(1, 1), P(1, -1)) == P(1, 0, -1)

    def test_zero_absorbs(self):
        assert poly_mul(P(3, 4, 5), RationalPoly()).is_zero()

    def test_square_of_half_linear(self):
        assert poly_mul(P(1, HALF), P(1, HALF)) == P(1, 1, Fr(1, 4))

    def test_degree_adds(self):
        assert poly_mul(P(1, 2, 3), P(0, 0, 1)).degree == 4

    def test_normalizes_trailing_zeros(self):
        assert P(1, 2, 0, 0).degree == 1
        assert RationalPoly().degree == -1

    def test_antiderivative_power_rule(self):
        assert poly_antiderivative(P(0, 1)) == P(0, 0, HALF)
        assert poly_antiderivative(RationalPoly()).is_zero()
        assert poly_antiderivative(P(1, HALF)) == P(0, 1, Fr(1, 4))

    def test_eval(self):
        p = P(0, 0, HALF, Fr(1, 6))
        assert poly_eval(p, 1) == Fr(2, 3)
        assert poly_eval(p, -1) == Fr(1, 3)
        assert poly_eval(P(7, 3), 0) == 7

    def test_divmod_roundtrip(self):
        p, d = P(Fr(1, 3), 4, 11, Fr(34, 3), 4), P(1, 10, 12)
        q, r = divmod(p, d)
        assert r.is_zero()
        assert q * d == p

    def test_shift(self):
        p = P(1, 2, 3)
        assert p.shift(2)(Fr(5, 7)) == p(Fr(5, 7) + 2)

    def test_primitive_integer(self):
        assert P(Fr(1, 2), Fr(-3, 4)).primitive_integer() == (-2, 3)


@given(polys, polys, rationals)
def test_eval_is_multiplicative(p, q, x):
    assert poly_eval(p * q, x) == poly_eval(p, x) * poly_eval(q, x)


@given(polys)
def test_derivative_inverts_antiderivative(p):
    assert p.antiderivative().derivative() == p
    assert p.antiderivative()[0] == 0


def _quadratic_root(a, b, c):
    return (-b + math.sqrt(b * b - 4 * a * c)) / (2 * a)


class TestIsolation:
    def test_del_pezzo_quadratic(self):
        encs = isolate_real_roots(P(1, 10, 12), (-HALF, None))
        assert len(encs) == 1
        e = encs[0]
        q = P(1, 10, 12)
        assert q(e.lo) * q(e.hi) < 0
        assert abs(float(e.midpoint) - _quadratic_root(12, 10, 1)) < 1e-15
        assert e.width <= Fr(1, 2**64)

    def test_linear_root_at_zero(self):
        encs = isolate_real_roots(P(0, 1), (-HALF, None))
        assert len(encs) == 1 and encs[0].contains(0)

    def test_second_quadratic(self):
        encs = isolate_real_roots(P(-1, 6, 4), (-HALF, None))
        assert len(encs) == 1
        assert abs(float(encs[0].midpoint) - _quadratic_root(4, 6, -1)) < 1e-15

    def test_open_interval_excludes_endpoint_roots(self):
        # roots -1/2, 0, 1 ; interval (-1/2, 1) keeps only 0
        p = P(1, 2) * P(0, 1) * P(-1, 1)
        encs = isolate_real_roots(p, (-HALF, 1))
        assert len(encs) == 1 and encs[0].contains(0)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            isolate_real_roots(RationalPoly())

    def test_multiple_roots_counted_once(self):
        p = P(-1, 1) ** 3 * P(2, 1) ** 2
        encs = isolate_real_roots(p)
        assert [float(e.midpoint) for e in encs] == pytest.approx([-2, 1])

    def test_requested_width(self):
        encs = isolate_real_roots(P(-2, 0, 1), (0, None), width=Fr(1, 10**30))
        assert encs[0].width <= Fr(1, 10**30)
        assert encs[0].lo ** 2 < 2 < encs[0].hi ** 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=8))
def test_isolation_matches_numpy_roots(ints):
    p = RationalPoly(ints)
    if p.degree < 1:
        return
    encs = isolate_real_roots(p)
    # brute-force oracle: distinct real roots from the companion matrix
    raw = np.roots([float(c) for c in reversed(p.coeffs)])
    real = sorted({round(r.real, 6) for r in raw if abs(r.imag) < 1e-6})
    assert len(encs) == len(real)
    for e, r in zip(encs, real):
        assert abs(float(e.midpoint) - r) < 1e-3
    f = squarefree_part(p)
    for a, b in zip(encs, encs[1:]):
        assert a.hi < b.lo
    for e in encs:
        if e.is_exact:
            assert p(e.lo) == 0
        else:
            assert f(e.lo) * f(e.hi) < 0


def test_sturm_chain_counts():
    seq = sturm_sequence(P(-6, 11, -6, 1))  # roots 1, 2, 3
    from sasaki_reeb.ratpoly import sign_variations

    assert sign_variations(seq, 0) - sign_variations(seq, 4) == 3
    assert sign_variations(seq, Fr(3, 2)) - sign_variations(seq, Fr(5, 2)) == 1


class TestRationalRootTest:
    def test_irrational_del_pezzo(self):
        (enc,) = isolate_real_roots(P(1, 10, 12), (-HALF, None))
        assert rational_root_test(P(1, 10, 12), enc) is None

    def test_zero_root(self):
        (enc,) = isolate_real_roots(P(0, 1), (-HALF, None))
        assert rational_root_test(P(0, 1), enc) == 0

    def test_half(self):
        (enc,) = isolate_real_roots(P(-1, 2), (Fr(1, 4), None))
        assert rational_root_test(P(-1, 2), enc) == HALF

    def test_wide_enclosure_is_refined(self):
        p = P(-7, 13) * P(1, 0, 1)
        assert rational_root_test(p, Enclosure(Fr(0), Fr(1))) == Fr(7, 13)

    def test_large_denominator_root(self):
        p = P(-123457, 1000003) * P(-3, 0, 1)
        enc = Enclosure(Fr(1, 10), Fr(1, 5))
        assert rational_root_test(p, enc) == Fr(123457, 1000003)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=12), min_size=1, max_size=4),
       st.integers(-5, 5))
def test_rational_root_test_never_returns_nonroot(roots, extra):
    p = RationalPoly.constant(1)
    for r in roots:
        p = p * P(-r, 1)
    p = p * P(extra, 0, 1)  # x^2 + extra: irrational or no roots mostly
    for enc in isolate_real_roots(p):
        r = rational_root_test(p, enc)
        if r is not None:
            assert p(r) == 0
            assert enc.contains(r)
        else:
            assert all(not enc.contains(q) for q in roots)


def test_format():
    p = P(Fr(1, 3), -1, 0, 4)
    assert str(p) == "1/3 - x + 4*x^3"
    assert p.format("a") == "1/3 - a + 4*a^3"
    assert str(RationalPoly()) == "0"
    assert P(0, Fr(-2, 5)).format("t") == "(-2/5)*t"
