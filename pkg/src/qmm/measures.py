"""Weight functions and Gaussians: the symmetric weight Delta, the
asymmetric weight mu and its variants (mu~, mu-circ, Delta-circ, mu-hat
point values), Gaussian series, and the closed-form infinite products that
appear on the right-hand side of the constant-term identities.

Generic-parameter (symbolic t) expansions are computed exactly inside a
declared window by a per-root family convolution with a certified pruning
bound; integer-k weights are finite Laurent polynomials and are built
directly.  Pairings of W-invariant polynomials against Delta are routed
through mu and the Poincare polynomial W(t) via the Weyl-sum identity
sum_w w(prod (1-t_a/x_a)/(1-1/x_a)) = W(t), which is itself verified
exactly per root system before first use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from qmm.laurent import LaurentPoly, WindowedSeries, XRing
from qmm.rootsys import Root, Wt, _mat_apply
from qmm.scalar import QT, QTSeries, LimitFactor, limit_at_k0

F = Fraction


# -- Gaussians -------------------------------------------------------------------


def gaussian_poly(xr: XRing, inverse: bool, R: F | int) -> LaurentPoly:
    """Truncation of gamma~ (inverse=False) or gamma~^{-1} to (b,b)/2 <= R."""
    sign = 1 if inverse else -1
    d = {}
    for b in xr.rs.shells(R):
        d[b] = xr.sc.q_power(sign * xr.rs.norm2(b) / 2)
    return LaurentPoly(xr, d)


def gaussian_series(xr: XRing, inverse: bool, R: F | int, N: F | int) -> WindowedSeries:
    """Windowed-series form of the Gaussians; discarded monomials of
    gamma~^{-1} all carry q-order > R."""
    poly = gaussian_poly(xr, inverse, R)
    ws = WindowedSeries.from_poly(poly, F(N))
    ws.R = F(R)
    ws.discard_floor = F(R) if inverse else float("-inf")
    return ws


# -- integer-k weights (finite trigonometric polynomials) --------------------------


def _root_x(xr: XRing, root: Root, mult: int = 1) -> Wt:
    return tuple(mult * x for x in root.a)


def mu_poly(xr: XRing, kmap: Sequence[int]) -> LaurentPoly:
    """mu at t_nu = q_nu^{k_nu}: prod over alpha>0, 0<=i<k_alpha of
    (1 - x_a q_alpha^i)(1 - x_a^{-1} q_alpha^{i+1})."""
    out = xr.one
    for root in xr.rs.positive_roots:
        ka = kmap[xr.rs.nu_index[root.nu]]
        for i in range(ka):
            out = out * (xr.one - xr.x(_root_x(xr, root), xr.q_alpha(root, i)))
            out = out * (xr.one - xr.x(_root_x(xr, root, -1), xr.q_alpha(root, i + 1)))
    return out


def delta_poly(xr: XRing, kmap: Sequence[int]) -> LaurentPoly:
    out = xr.one
    for root in xr.rs.positive_roots:
        ka = kmap[xr.rs.nu_index[root.nu]]
        for i in range(ka):
            out = out * (xr.one - xr.x(_root_x(xr, root), xr.q_alpha(root, i)))
            out = out * (xr.one - xr.x(_root_x(xr, root, -1), xr.q_alpha(root, i)))
    return out


def mu_circ_poly(xr: XRing, kmap: Sequence[int]) -> LaurentPoly:
    """mu-circ at integer k: prod (1 - q_alpha^{-j} x_a^{-1})(1 - q_alpha^{-j-1} x_a)."""
    out = xr.one
    for root in xr.rs.positive_roots:
        ka = kmap[xr.rs.nu_index[root.nu]]
        for j in range(ka):
            out = out * (xr.one - xr.x(_root_x(xr, root, -1), xr.q_alpha(root, -j)))
            out = out * (xr.one - xr.x(_root_x(xr, root), xr.q_alpha(root, -j - 1)))
    return out


def mu_tilde(xr: XRing, kmap: Sequence[int]) -> LaurentPoly:
    """prod over alpha>0 and k_alpha-1 >= j >= -k_alpha of
    ((q_alpha^j x_a)^(1/2) - (q_alpha^j x_a)^(-1/2)); requires k_nu >= 0."""
    if any(k < 0 for k in kmap):
        raise ValueError("mu~ requires nonnegative integer k")
    n = xr.rs.n
    # Work on the doubled exponent lattice so half powers of x_a are monomials.
    acc: dict[Wt, QT] = {(0,) * n: xr.sc.one}
    for root in xr.rs.positive_roots:
        ka = kmap[xr.rs.nu_index[root.nu]]
        half = root.a  # doubled coordinates of a/2
        for j in range(-ka, ka):
            fac = {
                half: xr.sc.q_power(F(j) / root.nu),
                tuple(-x for x in half): -xr.sc.q_power(-F(j) / root.nu),
            }
            new: dict[Wt, QT] = {}
            for k1, c1 in acc.items():
                for k2, c2 in fac.items():
                    k = tuple(a + b for a, b in zip(k1, k2))
                    v = c1 * c2
                    new[k] = new[k] + v if k in new else v
            acc = {k: v for k, v in new.items() if not v.is_zero()}
    out = {}
    for k, v in acc.items():
        if any(x % 2 for x in k):
            raise ArithmeticError("mu~ left the doubled lattice unevenly")
        out[tuple(x // 2 for x in k)] = v
    return LaurentPoly(xr, out)


# -- generic-t windowed expansion of mu --------------------------------------------


def _family_coeffs(xr: XRing, root: Root, N: F, m_lo: int, m_hi: int,
                   style: str) -> dict[int, QTSeries]:
    """Laurent coefficients in u = x_a of one positive-root family of the
    weight, as q-series to order N.  style: 'mu' | 'mucirc' | 'deltacirc'."""
    sc = xr.sc
    qa = F(2) / root.nu
    one = QTSeries.const(sc, sc.one, N)
    out = {0: one}

    def mul_factor(side: int, qexp: F, num_unit: QT, den_unit: QT) -> None:
        # multiplies by (1 - num_unit u^side q^qexp) / (1 - den_unit u^side q^qexp)
        nonlocal out
        hi = m_hi if side > 0 else -m_lo
        ratio: dict[int, QTSeries] = {0: one}
        bm = sc.one
        for m in range(1, hi + 1):
            e = qexp * m
            if e > N and qexp > 0:
                break
            coeff = bm * (den_unit - num_unit)  # b^m - a*b^{m-1}
            bm = bm * den_unit
            ser = (sc.q_power(e) * coeff).expand(N)
            if ser.is_zero():
                continue
            ratio[side * m] = ser
        new: dict[int, QTSeries] = {}
        for m1, c1 in out.items():
            for m2, c2 in ratio.items():
                m = m1 + m2
                if m < m_lo or m > m_hi:
                    continue
                v = c1 * c2
                new[m] = new[m] + v if m in new else v
        out = {m: v for m, v in new.items() if not v.is_zero()}

    t2 = xr.t_alpha(root, 2)
    t2i = xr.t_alpha(root, -2)
    oneq = sc.one
    plans = {
        # (plus-side start i, num unit, den unit), (minus-side start i, ...)
        "mu": ((0, oneq, t2), (1, oneq, t2)),
        "mucirc": ((0, t2i, oneq), (1, t2i, oneq)),
        "deltacirc": ((1, t2i, oneq), (1, t2i, oneq)),
    }
    if style not in plans:  # pragma: no cover
        raise ValueError(style)
    (ip, nup, dup), (im, num_, dum) = plans[style]
    i = ip
    while qa * i <= N:
        mul_factor(+1, qa * i, nup, dup)
        i += 1
    i = im
    while qa * i <= N:
        mul_factor(-1, qa * i, num_, dum)
        i += 1
    return out


def mu_coeffs(xr: XRing, targets: Iterable[Wt], N: F | int,
              style: str = "mu") -> dict[Wt, QTSeries]:
    """Exact x-coefficients of the generic-t weight on a finite target set,
    as q-series to order N.

    Soundness of the pruning: a move of -1 along a coroot a costs q-order at
    least 2/nu_alpha, and (c, r) > R_lin forces that many paid moves to return
    to any target, where r = sum b_i.
    """
    N = F(N)
    rs = xr.rs
    targets = {tuple(t) for t in targets}
    if style == "delta":
        raise ValueError("generic Delta is handled via the Poincare route")
    r = rs.r_vec()
    ar = {root: rs.pair_wt_wt(root.a, r) for root in rs.positive_roots}
    kappa = min((F(2) / root.nu) / ar[root] for root in rs.positive_roots)
    delta0 = min(ar.values())
    r_lin = max((rs.pair_wt_wt(t, r) for t in targets), default=F(0))
    m_hi = int((r_lin + N / kappa) / delta0) + 1
    state: dict[Wt, QTSeries] = {(0,) * rs.n: QTSeries.const(xr.sc, xr.sc.one, N)}
    for root in rs.positive_roots:
        m_lo = -(int(N * root.nu / 2) + 1)
        fam = _family_coeffs(xr, root, N, m_lo, m_hi, style)
        new: dict[Wt, QTSeries] = {}
        for c, ser in state.items():
            for m, fs in fam.items():
                c2 = tuple(a + m * b for a, b in zip(c, root.a))
                v = ser * fs
                if v.is_zero():
                    continue
                new[c2] = new[c2] + v if c2 in new else v
        state = {}
        for c, v in new.items():
            if v.is_zero():
                continue
            ordv = F(min(v.d), xr.sc.qden)
            excess = rs.pair_wt_wt(c, r) - r_lin
            if excess > 0 and ordv + kappa * excess > N:
                continue
            state[c] = v
    return {c: state.get(c, QTSeries(xr.sc, N, {})) for c in targets}


def mu_series(xr: XRing, R: F | int, N: F | int, style: str = "mu") -> WindowedSeries:
    """Windowed-series form of the generic weight on the ball (b,b)/2 <= R."""
    targets = xr.rs.shells(R)
    coeffs = mu_coeffs(xr, targets, N, style)
    return WindowedSeries(xr, coeffs, F(R), F(N), F(0))


# -- Gaussian-weighted pairings -----------------------------------------------------


def pair_gauss_mu(xr: XRing, f: LaurentPoly, N: F | int, style: str = "mu") -> QTSeries:
    """<f * gamma~^{-1} * mu> to order N, by certified shell summation."""
    N = F(N)
    rs = xr.rs
    want: dict[Wt, list[tuple[Wt, QT]]] = {}
    for d in rs.shells(N):
        wq = xr.sc.q_power(rs.norm2(d) / 2)
        for e, fe in f.d.items():
            tgt = tuple(-a - b for a, b in zip(d, e))
            want.setdefault(tgt, []).append((d, fe * wq))
    coeffs = mu_coeffs(xr, want.keys(), N, style)
    out = QTSeries(xr.sc, N, {})
    for tgt, pieces in want.items():
        cs = coeffs[tgt]
        if cs.is_zero():
            continue
        for _, w in pieces:
            out = out + cs.scale(w)
    return out


def mu_const_term(xr: XRing, N: F | int) -> QTSeries:
    """<mu> computed directly from the windowed expansion."""
    return mu_coeffs(xr, [(0,) * xr.rs.n], N)[(0,) * xr.rs.n]


def pair_mu(xr: XRing, f: LaurentPoly, N: F | int) -> QTSeries:
    """<f * mu> to order N."""
    N = F(N)
    want = {tuple(-x for x in e): fe for e, fe in f.d.items()}
    coeffs = mu_coeffs(xr, want.keys(), N)
    out = QTSeries(xr.sc, N, {})
    for tgt, fe in want.items():
        out = out + coeffs[tgt].scale(fe)
    return out


# -- Delta via the Poincare identity --------------------------------------------------


_POINCARE_CACHE: dict = {}


def poincare_poly(xr: XRing) -> QT:
    """W(t) = sum over W of prod of t_alpha over the inversion set; verified
    against the Weyl-sum rational identity before first use."""
    key = (xr.rs.type_letter, xr.rs.n, xr.sc.nz)
    if key not in _POINCARE_CACHE:
        _POINCARE_CACHE[key] = _poincare_build(xr)
    return _POINCARE_CACHE[key]


def _poincare_build(xr: XRing) -> QT:
    rs = xr.rs
    if rs.weyl_table is None:
        raise ValueError("Poincare route needs the full Weyl table (rank <= 4)")
    wt = xr.sc.zero
    for mat in rs.weyl_table:
        fac = xr.sc.one
        for root in rs.positive_roots:
            if not rs.act_root(mat, root).positive:
                fac = fac * xr.t_alpha(root, 2)
        wt = wt + fac
    _verify_weyl_sum(xr, wt)
    return wt


def _verify_weyl_sum(xr: XRing, wt: QT) -> None:
    """Exact check of sum_w w(prod_a (1 - t_a x_a^{-1})/(1 - x_a^{-1})) = W(t),
    done on polynomials after clearing the common denominator
    prod_a (1 - x_a^{-1})(1 - x_a)."""
    rs = xr.rs
    neg = {root.a: xr.one - xr.x(_root_x(xr, root, -1)) for root in rs.positive_roots}
    pos = {root.a: xr.one - xr.x(_root_x(xr, root)) for root in rs.positive_roots}
    common = xr.one
    for root in rs.positive_roots:
        common = common * neg[root.a] * pos[root.a]
    lhs = xr.zero
    for mat in rs.weyl_table:
        numer = xr.one
        used = set()
        for root in rs.positive_roots:
            im = rs.act_root(mat, root)
            numer = numer * (xr.one - xr.x(_root_x(xr, im, -1), xr.t_alpha(root, 2)))
            used.add(im.a)
        cof = xr.one
        for root in rs.positive_roots:
            if root.a not in used:
                cof = cof * neg[root.a]
            if tuple(-a for a in root.a) not in used:
                cof = cof * pos[root.a]
        lhs = lhs + numer * cof
    if lhs != common.scale(wt):
        raise ArithmeticError("Weyl-sum Poincare identity failed")


def pair_gauss_delta(xr: XRing, f: LaurentPoly, N: F | int) -> QTSeries:
    """<f * gamma~^{-1} * Delta> for W-invariant f: (|W|/W(t)) <f gamma~^{-1} mu>."""
    wt = poincare_poly(xr)
    base = pair_gauss_mu(xr, f, N)
    return base.scale(xr.sc.const(xr.rs.weyl_order) * wt.inv())


def pair_delta(xr: XRing, f: LaurentPoly, N: F | int) -> QTSeries:
    """<f * Delta> for W-invariant f."""
    wt = poincare_poly(xr)
    return pair_mu(xr, f, N).scale(xr.sc.const(xr.rs.weyl_order) * wt.inv())


# -- mu-hat point values ----------------------------------------------------------------


def mu_hat_value(xr: XRing, b: Wt, w, xi_mode: str = "minus_rk") -> QT:
    """mu^(q^{w(xi)+b}) as the finite product over Lambda(b w).

    ``w`` is a finite AffineElt; xi_mode 'minus_rk' keeps t symbolic with
    xi = -r_k, 'formal' uses the z-variables (requires a z-enabled ring).
    """
    rs = xr.rs
    elt = rs.translation(b) * w
    out = xr.sc.one
    for root, j in elt.lambda_set():
        tp = xr.t_alpha(root, 1)
        tm = xr.t_alpha(root, -1)
        if xi_mode == "minus_rk":
            qpart = xr.tau_alpha(root, -1) * xr.q_alpha(root, j)
        elif xi_mode == "formal":
            qpart = xr.sc.z_monomial(root.a) * xr.q_alpha(root, j)
        else:  # pragma: no cover
            raise ValueError(xi_mode)
        den = tp - tm * qpart
        if den.is_zero():
            raise ZeroDivisionError(
                f"mu^ singular at [alpha,j]=({root.alpha},{j})")
        out = out * (tm - tp * qpart) / den
        if out.is_zero():
            return xr.sc.zero
    return out


# -- closed-form right-hand-side products -------------------------------------------------


def _ratio_series(xr: XRing, num_unit: QT, den_unit: QT, qexp: F, N: F) -> QTSeries:
    """(1 - num_unit q^qexp) / (1 - den_unit q^qexp) as a series to N."""
    one = xr.sc.one
    num = (one - num_unit * xr.sc.q_power(qexp)).expand(N)
    den = (one - den_unit * xr.sc.q_power(qexp)).expand(N)
    return num * den.inverse()


def product_series(xr: XRing, which: str, N: F | int) -> QTSeries:
    """Expansion of a named RHS product to order N (symbolic t).

    which: 'mehtamu' | 'mehta' | 'consterm' | 'hatmu' | 'memujack' | 'mehjack'
    """
    N = F(N)
    out = QTSeries.const(xr.sc, xr.sc.one, N)
    for root in xr.rs.positive_roots:
        qa = F(2) / root.nu
        tau = xr.tau_alpha(root)
        taui = xr.tau_alpha(root, -1)
        t2 = xr.t_alpha(root, 2)
        t2i = xr.t_alpha(root, -2)
        j0, num_u, den_u = {
            "mehtamu": (1, tau, t2 * tau),
            "mehta": (0, tau, t2 * tau),
            "hatmu": (1, tau, t2i * tau),
            "memujack": (0, t2i * taui, taui),
            "mehjack": (1, t2i * taui, taui),
        }.get(which, (None, None, None))
        if which == "consterm":
            j = 1
            while qa * j <= N:
                base = xr.tau_alpha(root) * xr.q_alpha(root, j)
                num = (xr.sc.one - base).expand(N)
                out = out * num * num
                out = out * (xr.sc.one - t2 * base).expand(N).inverse()
                out = out * (xr.sc.one - t2i * base).expand(N).inverse()
                j += 1
            continue
        if j0 is None:
            raise ValueError(f"unknown product {which!r}")
        j = j0
        while qa * j <= N:
            out = out * _ratio_series(xr, num_u, den_u, qa * j, N)
            j += 1
    if which == "mehta":
        out = out.scale(xr.sc.const(xr.rs.weyl_order))
    return out


def product_closed_int(xr: XRing, which: str, kmap: Sequence[int]) -> QT:
    """Exact closed value of a named RHS product at integer k."""
    rs = xr.rs
    rk = rs.r_k(kmap)
    out = xr.sc.one
    for root in rs.positive_roots:
        ka = kmap[rs.nu_index[root.nu]]
        e = root.pair_weight(rk)
        if which == "mehtamu":
            for j in range(1, ka + 1):
                out = out * (xr.sc.one - xr.q_alpha(root, e + j))
        elif which == "mehta":
            for j in range(ka):
                out = out * (xr.sc.one - xr.q_alpha(root, e + j))
        elif which == "consterm":
            for i in range(1, ka + 1):
                out = out * (xr.sc.one - xr.q_alpha(root, e + i))
                out = out / (xr.sc.one - xr.q_alpha(root, e - ka + i))
        elif which == "tmuga":
            for j in range(1, ka + 1):
                out = out * (xr.q_alpha(root, F(e + 1, 2))
                             - xr.q_alpha(root, F(1 - e, 2) - j))
        else:
            raise ValueError(f"no closed integer-k form for {which!r}")
    if which == "mehta":
        out = out * xr.sc.const(rs.weyl_order)
    if which == "tmuga":
        out = out * xr.sc.q_power(rs.norm2(rk))
    return out


def mehta_limit_k0(xr: XRing, which: str = "mehta") -> QT:
    """k -> 0 limit of the Mehta right-hand side via paired factor limits.

    Only the j = 0 factors vanish at k = 0; the numerator exponent linearizes
    to sum_nu (2/nu) hts_nu(alpha) k_nu and the denominator adds the t_alpha
    slope (2/nu_alpha) k_{nu_alpha}.
    """
    rs = xr.rs
    if which == "mehtamu":
        # Every factor has j >= 1, hence a plain limit of 1.
        return xr.sc.one
    nnu = len(rs.nus_present)
    num, den = [], []
    for root in rs.positive_roots:
        qa = F(2) / root.nu
        slopes = [F(2) / rs.nus_present[i] * root.hts[i] for i in range(nnu)]
        tslope = [qa if rs.nus_present[i] == root.nu else F(0) for i in range(nnu)]
        num.append(LimitFactor(0, slopes))
        den.append(LimitFactor(0, [a + b for a, b in zip(slopes, tslope)]))
    val = limit_at_k0(xr.sc, num, den)
    if which == "mehta":
        val = val * xr.sc.const(rs.weyl_order)
    return val
