"""Jackson integrals: lattice sums over the points q^{w(xi)+c}, in formal-xi
mode (independent parameters z_i = q^{(b_i, xi)}) or at the special point
xi = -r_k, together with the Jackson counterparts of the pairing and
constant identities.

The common factor q^{(xi,xi)/2} of gamma at all lattice points is divided
out of every sum; both sides of each identity drop it consistently.  Where
the paper's Section-1 normalization (plain B-sum, W-invariant integrands)
differs from the Section-7 one (|W|^{-1} times a W x B sum), the identity
runners record which normalization they use.
"""

from __future__ import annotations

import math
from fractions import Fraction

from qmm.fourier import gauss_inv_value_series, sharp_norm_factor
from qmm.laurent import LaurentPoly, XRing
from qmm.macdonald import MacdonaldSession
from qmm.measures import mu_hat_value, product_series
from qmm.rootsys import AffineElt, Wt
from qmm.scalar import QT, QTSeries

F = Fraction


class JacksonError(ArithmeticError):
    pass


class JacksonContext:
    """xi-mode and the z-enabled session for the formal mode."""

    def __init__(self, ms: MacdonaldSession, xi_mode: str = "formal") -> None:
        if xi_mode not in ("formal", "minus_rk"):
            raise ValueError(xi_mode)
        self.xi_mode = xi_mode
        base = ms.xr
        if xi_mode == "formal" and base.sc.nz != base.rs.n:
            raise ValueError("formal mode needs a z-enabled ring")
        self.ms = ms
        self.xr = base


def _mat_apply_t(w: AffineElt, c: Wt) -> Wt:
    from qmm.rootsys import _mat_apply
    return _mat_apply(w.winv, c)


def gamma_at_point(ctx: JacksonContext, w: AffineElt, c: Wt) -> QT:
    """gamma(q^{w(xi)+c}) / q^{(xi,xi)/2} = q^{(c,c)/2} * (z or t unit)."""
    xr = ctx.xr
    rs = xr.rs
    base = xr.sc.q_power(rs.norm2(c) / 2)
    if ctx.xi_mode == "formal":
        return base * xr.sc.z_monomial(_mat_apply_t(w, c))
    # (c, w(-r_k)) = -(w^{-1}(c), r_k)
    return base * xr.t_rk_power(c, -1, w.winv)


def weight_value_series(ctx: JacksonContext, style: str, w: AffineElt, c: Wt,
                        N: F | int) -> QTSeries:
    """mu-circ or Delta-circ evaluated at q^{w(xi)+c} as a q-series to N.

    Factors with negative q-exponent are normalized through their unit parts,
    which cancel exactly between numerator and denominator (leaving pure
    t-units), so the value has q-order >= 0.
    """
    xr = ctx.xr
    rs = xr.rs
    N = F(N)
    out = QTSeries.const(xr.sc, xr.sc.one, N)
    unit = xr.sc.one
    for root in rs.positive_roots:
        qa = F(2) / root.nu
        pair = rs.pair_wt_wt(root.a, c)
        if ctx.xi_mode == "formal":
            vplus = xr.sc.z_monomial(_mat_apply_t(w, root.a)) * xr.sc.q_power(pair)
        else:
            vplus = xr.t_rk_power(root.a, -1, w.winv) * xr.sc.q_power(pair)
        vminus = vplus.star() if ctx.xi_mode == "formal" else \
            xr.t_rk_power(root.a, +1, w.winv) * xr.sc.q_power(-pair)
        tinv = xr.t_alpha(root, -2)
        if style == "mucirc":
            plan = [(vplus, 0, tinv), (vminus, 1, tinv)]
        elif style == "deltacirc":
            plan = [(vplus, 1, tinv), (vminus, 1, tinv)]
        else:  # pragma: no cover
            raise ValueError(style)
        for v, i0, tnum in plan:
            i = i0
            while True:
                e = pair if v is vplus else -pair
                e = e + qa * i
                if e > N:
                    break
                num_u = tnum * v * xr.sc.q_power(qa * i)
                den_u = v * xr.sc.q_power(qa * i)
                fnum, unum = _norm_factor(xr, num_u, N)
                fden, uden = _norm_factor(xr, den_u, N)
                unit = unit * unum / uden
                out = out * fnum
                out = out * fden.inverse()
                i += 1
    return out.scale(unit)


def _norm_factor(xr: XRing, u: QT, N: F) -> tuple[QTSeries, QT]:
    """(series, unit) with (1 - u) = unit * series and series of order >= 0."""
    e = u.q_order()
    if e < 0:
        # 1 - u = -u (1 - 1/u)
        return (xr.sc.one - u.inv()).expand(N), -u
    return (xr.sc.one - u).expand(N), xr.sc.one


def _shell_cap(supports: list[F], N: F) -> int:
    """Smallest s0 so shells s > s0 only contribute past order N: the
    summand order is at least s - sqrt(2 s) * E with E the total monomial
    norm budget of the evaluated polynomials."""
    E = sum(math.sqrt(2 * float(x)) for x in supports)
    root = (E + math.sqrt(E * E + 4 * float(N))) / 2
    return int(math.ceil(root * root)) + 1


def jackson_sum(ctx: JacksonContext, polys: list[LaurentPoly], style: str | None,
                N: F | int, w_average: bool = True) -> QTSeries:
    """|W|^{-1} sum over (w, c) [or the plain B-sum] of
    prod_i polys_i(q^{w(xi)+c}) * gamma(point) * weight(point).

    The Gaussian factor is mandatory: it provides the shell decay that makes
    the truncation certified.
    """
    xr = ctx.xr
    rs = xr.rs
    N = F(N)
    sig = [max((rs.norm2(k) for k in p.d), default=F(0)) for p in polys]
    cap = _shell_cap([F(x) for x in sig], N)
    if w_average:
        if rs.weyl_table is None:
            raise JacksonError("W-averaged Jackson sums need the Weyl table")
        welts = [rs.finite_elt(m) for m in rs.weyl_table]
    else:
        welts = [rs.id_elt]
    out = QTSeries(xr.sc, N, {})
    for c in rs.shells(cap):
        for w in welts:
            term = gamma_at_point(ctx, w, c)
            for p in polys:
                if ctx.xi_mode == "formal":
                    term = term * p.eval_jackson(w, c)
                else:
                    term = term * _eval_minus_rk(xr, p, w, c)
            ser = term.expand(N)
            if ser.is_zero():
                continue
            if style is not None:
                ser = ser * weight_value_series(ctx, style, w, c, N)
            out = out + ser
    if w_average:
        out = out.scale(xr.sc.const(F(1, rs.weyl_order)))
    return out


def _eval_minus_rk(xr: XRing, p: LaurentPoly, w: AffineElt, c: Wt) -> QT:
    """p(q^{w(-r_k)+c}) exactly in symbolic t."""
    out = xr.sc.zero
    for k, v in p.d.items():
        out = out + v * xr.q_pow_pair(k, c) * xr.t_rk_power(k, -1, w.winv)
    return out


def gamma_series(ctx: JacksonContext, N: F | int) -> QTSeries:
    """<gamma>_xi = sum over B of q^{(c+xi,c+xi)/2} / q^{(xi,xi)/2}
    (plain B-sum; the integrand is W-invariant)."""
    xr = ctx.xr
    rs = xr.rs
    N = F(N)
    out = QTSeries(xr.sc, N, {})
    cap = _shell_cap([], N)
    for c in rs.shells(cap):
        out = out + gamma_at_point(ctx, rs.id_elt, c).expand(N)
    return out


# -- mu-hat support rule and sums at xi = -r_k ------------------------------------------


def muhat_support_check(ms: MacdonaldSession, ball_norm: F | int) -> bool:
    """mu^(q^{w(-r_k)+b}) vanishes unless w = omega_b^{-1} (term-by-term)."""
    xr = ms.xr
    rs = xr.rs
    if rs.weyl_table is None:
        raise JacksonError("support check needs the Weyl table")
    for b in rs.ball(ball_norm):
        om_inv = rs.antidominant(b)[1].inv()
        for m in rs.weyl_table:
            w = rs.finite_elt(m)
            try:
                val = mu_hat_value(xr, b, w, "minus_rk")
            except ZeroDivisionError:
                return False
            if (w == om_inv) != (not val.is_zero()):
                return False
    return True


def gamma_muhat_sum(ms: MacdonaldSession, N: F | int) -> QTSeries:
    """<gamma mu^>_{-r_k} = |W|^{-1} sum_b gamma(q^{b#}) mu^(q^{b#}), using
    the support rule (only w = omega_b^{-1} survives)."""
    xr = ms.xr
    rs = xr.rs
    N = F(N)
    out = QTSeries(xr.sc, N, {})
    cap = _shell_cap_muhat(N)
    for b in rs.shells(cap):
        om = rs.antidominant(b)[1]
        pt_gamma = xr.sc.q_power(rs.norm2(b) / 2) * xr.t_rk_power(b, -1, om.w)
        val = ms.mu_hat_at_sharp(b)
        ser = (pt_gamma * val).expand(N)
        out = out + ser
    return out.scale(xr.sc.const(F(1, rs.weyl_order)))


def _shell_cap_muhat(N: F) -> int:
    return int(N) + 1  # mu^ values and the t-units have q-order >= 0


def verify_hatmu(ms: MacdonaldSession, N: F | int) -> dict:
    """<gamma mu^>_{-r_k} = |W|^{-1} <gamma>_{-r_k} prod_hatmu."""
    xr = ms.xr
    N = F(N)
    lhs = gamma_muhat_sum(ms, N)
    ctx = JacksonContext(ms, "minus_rk")
    rhs = gamma_series(ctx, N) * product_series(xr, "hatmu", N)
    rhs = rhs.scale(xr.sc.const(F(1, xr.rs.weyl_order)))
    m = lhs.first_mismatch(rhs)
    return {"match": m is None, "first_mismatch": str(m),
            "normalization": "section-7 (|W|^-1, W x B sum)"}


def verify_hatjack(ms: MacdonaldSession, b: Wt, c: Wt, N: F | int) -> dict:
    """<eps_b eps_c^* gamma mu^>_{-r_k} =
    q^{-(b#,b#)/2-(c#,c#)/2+(r_k,r_k)} eps_c(q^{b#}) <gamma mu^>_{-r_k}."""
    xr = ms.xr
    rs = xr.rs
    N = F(N)
    eb = ms.epsilon_poly(b)
    ecs = ms.epsilon_poly(c).star()
    lhs = QTSeries(xr.sc, N, {})
    cap = _shell_cap([rs.norm2(b), rs.norm2(c)], N)
    for a in rs.shells(cap):
        om = rs.antidominant(a)[1]
        val = ms.mu_hat_at_sharp(a)
        if val.is_zero():
            continue
        pt = ms.b_sharp(a)
        term = (pt.eval(eb) * pt.eval(ecs)
                * xr.sc.q_power(rs.norm2(a) / 2) * xr.t_rk_power(a, -1, om.w) * val)
        lhs = lhs + term.expand(N)
    lhs = lhs.scale(xr.sc.const(F(1, rs.weyl_order)))
    pre = (sharp_norm_factor(ms, b) * sharp_norm_factor(ms, c)).inv()
    rhs = gamma_muhat_sum(ms, N).scale(pre * ms.b_sharp(b).eval(ms.epsilon_poly(c)))
    m = lhs.first_mismatch(rhs)
    return {"match": m is None, "first_mismatch": str(m)}


def verify_eejack(ms_z: MacdonaldSession, b: Wt, c: Wt, N: F | int) -> dict:
    """Formal-xi check of the eps pairing against gamma mu-circ, plus the
    mu-circ constant (both sides share the Section-7 normalization)."""
    xr = ms_z.xr
    ctx = JacksonContext(ms_z, "formal")
    N = F(N)
    eb = ms_z.epsilon_poly(b)
    ecs = ms_z.epsilon_poly(c).star()
    lhs = jackson_sum(ctx, [eb, ecs], "mucirc", N)
    base = jackson_sum(ctx, [], "mucirc", N)
    pre = (sharp_norm_factor(ms_z, b) * sharp_norm_factor(ms_z, c)).inv()
    rhs = base.scale(pre * ms_z.b_sharp(b).eval(ms_z.epsilon_poly(c)))
    m = lhs.first_mismatch(rhs)
    return {"match": m is None, "first_mismatch": str(m)}


def verify_memujack(ms_z: MacdonaldSession, N: F | int) -> dict:
    """<gamma mu-circ>_xi = |W|^{-1} <gamma>_xi prod_memujack (formal xi)."""
    xr = ms_z.xr
    ctx = JacksonContext(ms_z, "formal")
    N = F(N)
    lhs = jackson_sum(ctx, [], "mucirc", N)
    rhs = gamma_series(ctx, N) * product_series(xr, "memujack", N)
    rhs = rhs.scale(xr.sc.const(F(1, xr.rs.weyl_order)))
    m = lhs.first_mismatch(rhs)
    return {"match": m is None, "first_mismatch": str(m)}


def verify_planjack(ms_z: MacdonaldSession, b_minus: Wt, c_minus: Wt, N: F | int) -> dict:
    """Jackson version of the symmetric pairing, in the Section-1
    normalization (plain B-sum; the integrand is W-invariant)."""
    xr = ms_z.xr
    rs = xr.rs
    ctx = JacksonContext(ms_z, "formal")
    N = F(N)
    pb = ms_z.p_poly(b_minus)
    pc_inv = LaurentPoly(xr, {tuple(-k for k in kk): v
                              for kk, v in ms_z.p_poly(c_minus).d.items()})
    lhs = jackson_sum(ctx, [pb, pc_inv], "deltacirc", N, w_average=False)
    base = jackson_sum(ctx, [], "deltacirc", N, w_average=False)
    pre = (xr.sc.q_power(-rs.norm2(b_minus) / 2 - rs.norm2(c_minus) / 2)
           * xr.t_rk_power(b_minus, +1) * xr.t_rk_power(c_minus, +1))
    val = (ms_z.p_poly(c_minus).eval_spectral(b_minus, None, -1)
           * ms_z.p_poly(b_minus).eval_spectral((0,) * rs.n, None, +1))
    rhs = base.scale(pre * val)
    m1 = lhs.first_mismatch(rhs)
    rhs2 = gamma_series(ctx, N) * product_series(xr, "mehjack", N)
    m2 = base.first_mismatch(rhs2)
    return {"match": m1 is None and m2 is None,
            "first_mismatch": str(m1 if m1 is not None else m2),
            "normalization": "section-1 (plain B-sum)"}


def verify_norm_identity(ms: MacdonaldSession, b: Wt, N: F | int) -> dict:
    """mu^(q^{b#}) = <eps_b, eps_b>_1^{-1} (exact value vs series pairing)."""
    xr = ms.xr
    nrm = ms.norm_series(b, N)
    mh = ms.mu_hat_at_sharp(b)
    prod = nrm * mh.expand(F(N))
    m = prod.first_mismatch(QTSeries.const(xr.sc, xr.sc.one, F(N)))
    return {"match": m is None, "first_mismatch": str(m), "muhat": str(mh)}


def verify_ebc(ms: MacdonaldSession, b: Wt, c: Wt, N: F | int) -> dict:
    """E_q(q^{b#}, q^{c#}) <gamma>_{r_k}^2 = eps_c(q^{b#}) |W| <gamma mu^>_{-r_k},
    transported by the Gaussian values (the opaque q^{(r_k,r_k)/2} cancels).

    Kernel coefficients are pre-truncated at N plus the maximal evaluation
    drift sqrt(2 s)(||b|| + ||c||), which cannot reach the compared orders.
    """
    from qmm.fourier import _truncate_coeffs, sharp_norm_factor as snf
    xr = ms.xr
    rs = xr.rs
    N = F(N)
    cap = _shell_cap([rs.norm2(b), rs.norm2(c)], N)
    drift = math.sqrt(2 * cap) * (math.sqrt(float(rs.norm2(b)))
                                  + math.sqrt(float(rs.norm2(c))))
    C = N + int(math.ceil(drift)) + 1
    ptb = ms.b_sharp(b)
    ptc = ms.b_sharp(c)
    g_val = QTSeries(xr.sc, N, {})
    for a in rs.shells(cap):
        eps = _truncate_coeffs(ms.epsilon_poly(a), C)
        # eps* is truncated after starring: its coefficients have their own
        # nonnegative-order q-expansions.
        eps_s = _truncate_coeffs(ms.epsilon_poly(a).star(), C)
        wgt = snf(ms, a) * ms.mu_hat_at_sharp(a)
        term = wgt * ptb.eval(eps) * ptc.eval(eps_s)
        g_val = g_val + term.expand(N)
    grk = gauss_inv_value_series(ms, (0,) * rs.n, None, +1, N)
    lhs = grk * grk * g_val
    gb = gauss_inv_value_series(ms, b, rs.antidominant(b)[1].w, -1, N)
    gc = gauss_inv_value_series(ms, c, rs.antidominant(c)[1].w, -1, N)
    val = ms.b_sharp(b).eval(ms.epsilon_poly(c)) * xr.sc.const(rs.weyl_order)
    rhs = (gb * gc * gamma_muhat_sum(ms, N)).scale(val)
    m = lhs.first_mismatch(rhs)
    return {"match": m is None, "first_mismatch": str(m)}


def normalization_consistency(ms_z: MacdonaldSession, N: F | int) -> bool:
    """|W|^{-1} (W x B)-sum equals the plain B-sum on a W-invariant integrand."""
    ctx = JacksonContext(ms_z, "formal")
    a = jackson_sum(ctx, [], None, N, w_average=True)
    b = jackson_sum(ctx, [], None, N, w_average=False)
    return a.first_mismatch(b) is None
