"""Exact scalar arithmetic: ring axioms, expansion, involutions, limits."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qmm.scalar import LimitFactor, QTSeries, ScalarRing, ScalarError, limit_at_k0

R = ScalarRing(4, [F(2)])
ONE = R.one
Q = R.q_power(1)
T = R.t_power(0, 2)
TH = R.t_power(0, 1)


def rnd_qt(rng):
    x = R.zero
    for _ in range(rng.randint(1, 3)):
        x = x + R.monomial(F(rng.randint(-3, 3), rng.randint(1, 2)),
                           qexp=F(rng.randint(-2, 2), 2),
                           thalf=[rng.randint(-2, 2)])
    d = R.zero
    while d.is_zero():
        d = R.one + R.monomial(rng.randint(-2, 2), qexp=F(rng.randint(0, 2), 2),
                               thalf=[rng.randint(-1, 1)])
    return x / d


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_ring_axioms(seed):
    rng = random.Random(seed)
    a, b, c = rnd_qt(rng), rnd_qt(rng), rnd_qt(rng)
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a + (-a) == R.zero


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_star_iota_involutions(seed):
    rng = random.Random(seed)
    a = rnd_qt(rng)
    assert a.star().star() == a
    assert a.iota().iota() == a


def test_expand_geometric():
    s = (ONE / (ONE - T * Q)).expand(3)
    expect = QTSeries(R, F(3), {0: ONE, 4: T, 8: T * T, 12: T * T * T})
    assert s.first_mismatch(expect) is None


def test_expand_telescope():
    s = ((ONE - Q * Q) / (ONE - Q)).expand(2)
    assert s.coeff(0) == ONE and s.coeff(1) == ONE and s.coeff(2).is_zero()


def test_expand_half_powers():
    x = R.monomial(1, qexp=F(1, 2), thalf=[1])
    s = x.expand(1)
    assert s.coeff(F(1, 2)) == TH


@given(st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_expand_multiplicative(seed):
    rng = random.Random(seed)
    a, b = rnd_qt(rng), rnd_qt(rng)
    lhs = (a * b).expand(2)
    rhs = a.expand(2) * b.expand(2)
    assert lhs.first_mismatch(rhs) is None


def test_expand_against_dense_oracle():
    # Independent oracle: long division of (1+q)/(1-t q - q^3) done by hand
    # recurrence c_n = t c_{n-1} + c_{n-3} with c_0 = 1, plus the numerator shift.
    den = ONE - T * Q - Q ** 3
    num = ONE + Q
    s = (num / den).expand(5)
    c = {0: ONE}
    for n in range(1, 6):
        val = T * c.get(n - 1, R.zero) + c.get(n - 3, R.zero)
        c[n] = val
    for n in range(6):
        expect = c[n] + (c[n - 1] if n >= 1 else R.zero)
        assert s.coeff(n) == expect


def test_series_inverse_roundtrip():
    s = (ONE - T * Q + Q * Q).expand(4)
    prod = s * s.inverse()
    assert prod.first_mismatch(ONE.expand(prod.N)) is None


def test_specialize_t():
    assert T.specialize_t([1]) == Q
    x = (ONE - T * Q ** 2) / (ONE - Q ** 2)
    assert x.specialize_t([2]) == (ONE - Q ** 4) / (ONE - Q ** 2)


def test_specialize_t_zero_denominator():
    x = ONE / (ONE - T)
    with pytest.raises(ScalarError):
        x.specialize_t([0])


def test_specialize_g2_short():
    # q_short = q^3 at nu = 2/3, so t_short = q^{3k}
    rg = ScalarRing(6, [F(2), F(2, 3)])
    tshort = rg.t_power(1, 2)
    assert tshort.specialize_t([0, 1]) == rg.q_power(3)


def test_star_examples():
    assert (Q * T).star() == Q.inv() * T.inv()
    assert R.const(5).star() == R.const(5)


def test_limit_pairing():
    # (1 - q^{k}) / (1 - q^{2k}) -> 1/2 as k -> 0
    val = limit_at_k0(R, [LimitFactor(0, [1])], [LimitFactor(0, [2])])
    assert val == R.const(F(1, 2))
    # (1-q)/(1-q) contributes exactly 1
    val = limit_at_k0(R, [LimitFactor(1, [1])], [LimitFactor(1, [2])])
    assert val == ONE


def test_limit_unmatched_raises():
    with pytest.raises(ScalarError):
        limit_at_k0(R, [LimitFactor(0, [1])], [])


def test_gcd_reduction_preserves_value():
    num = (ONE - T * Q) * (ONE - Q) * (ONE + Q ** 2)
    den = (ONE - Q) * (ONE - T * Q) * (ONE - T * Q ** 3)
    x = num / den
    r = x.reduced()
    assert r == x
    assert len(r.num.m) <= len(x.num.m)


def test_q_order():
    assert (Q * Q / (ONE - Q)).q_order() == 2
    assert (T / Q).q_order() == -1
