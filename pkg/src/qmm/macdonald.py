"""Nonsymmetric Macdonald polynomials e_b as joint eigenvectors of the
commuting Y-operators, the spectrally renormalized eps_b, the symmetric p_b,
spectral points b#, evaluation and duality formulas, and norms.

The primary construction is spectral and fully exact: the Y-operators act
triangularly on the monomials ordered compatibly with the orbit order, so the
coefficients of e_b come out of a back-substitution whose only divisions are
by differences of distinct monomial eigenvalues.  Truncated Gram-Schmidt
against the constant-term pairing is provided as an independent validation
route.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from qmm.hecke import YOps, is_t_symmetric, symmetrize
from qmm.laurent import LaurentPoly, XRing, monomial_sym
from qmm.measures import mu_coeffs, mu_const_term, mu_hat_value, pair_delta
from qmm.rootsys import AffineElt, Wt
from qmm.scalar import QT, QTSeries

F = Fraction


class DegenerateSpectrumError(ArithmeticError):
    """The joint Y-spectrum does not separate the span at these parameters."""


def _peel(u: QT, factors: list) -> QT:
    """Cancel known binomial factors shared by numerator and denominator.

    The triangular solves only ever introduce denominators that are products
    of eigenvalue-difference binomials, so peeling those keeps coefficients
    fully reduced without a general multivariate gcd.
    """
    from qmm.scalar import Poly, _try_div
    num, den = u.num, u.den
    changed = True
    while changed:
        changed = False
        for f in factors:
            while True:
                qn = _try_div(num, f)
                if qn is None:
                    break
                qd = _try_div(den, f)
                if qd is None:
                    break
                num, den, changed = qn, qd, True
    if changed or num is not u.num:
        return QT(u.ring, num, den)
    return u


def _binomial_part(u: QT):
    """The normalized polynomial factor of an eigenvalue difference."""
    from qmm.scalar import Poly
    p = u.num
    shift = p.min_exponents()
    return Poly.normalized(p.ring, Fraction(1), p.shift(tuple(-x for x in shift)).m)


@dataclass(frozen=True)
class SpectralPoint:
    """q^{b#} with b# = b - omega_b^{-1}(r_k); evaluation is exact in q, t."""

    b: Wt
    omega: AffineElt

    def eval(self, f: LaurentPoly, minus: bool = False) -> QT:
        """f(q^{b#}), or f(q^{-b#}) when minus is set."""
        if minus:
            return f.eval_spectral(tuple(-x for x in self.b), self.omega.w, +1)
        return f.eval_spectral(self.b, self.omega.w, -1)


class MacdonaldSession:
    """Per-root-system cache of e/eps/p polynomials (thread-safe, symbolic t)."""

    def __init__(self, xr: XRing) -> None:
        self.xr = xr
        self.Y = YOps(xr)
        self._lock = threading.Lock()
        self._e: dict[Wt, LaurentPoly] = {}
        self._p: dict[Wt, LaurentPoly] = {}

    # -- spectral data ------------------------------------------------------------

    def b_sharp(self, b: Wt) -> SpectralPoint:
        return SpectralPoint(tuple(b), self.xr.rs.antidominant(b)[1])

    def eigenvalue(self, i: int, c: Wt) -> QT:
        """Y_i-eigenvalue on e_c: x_{b_i}(q^{-c#})."""
        return self.b_sharp(c).eval(self.xr.x_i(i), minus=True)

    # -- nonsymmetric e_b -----------------------------------------------------------

    def span(self, b: Wt) -> list[Wt]:
        rs = self.xr.rs
        cands = [c for c in rs.ball(rs.norm2(b)) if rs.preceq(b, c)]
        cands.sort(key=rs.sort_key)
        assert cands and cands[0] == tuple(b)
        return cands

    def e_poly(self, b: Wt) -> LaurentPoly:
        b = tuple(b)
        with self._lock:
            if b in self._e:
                return self._e[b]
        xr = self.xr
        rs = xr.rs
        span = self.span(b)
        index = {c: i for i, c in enumerate(span)}
        n = rs.n
        # Columns of Y_i on the span; saturation failure is a hard error.
        cols: list[dict[Wt, LaurentPoly]] = []
        for i in range(n):
            col = {}
            for c in span:
                img = self.Y.apply_Yi(i, xr.x(c))
                for d in img.d:
                    if d not in index:
                        raise ArithmeticError(
                            f"span of {b} not Y-stable: {c} -> {d}")
                    if not rs.preceq(c, d):
                        raise ArithmeticError("Y-action broke triangularity")
                col[c] = img
            cols.append(col)
        lam_b = [self.eigenvalue(i, b) for i in range(n)]
        coeffs: dict[Wt, QT] = {b: xr.sc.one}
        binoms: list = []
        for c in span[1:]:
            i_sep = None
            for i in range(n):
                if self.eigenvalue(i, c) != lam_b[i]:
                    i_sep = i
                    break
            if i_sep is None:
                raise DegenerateSpectrumError(
                    f"spectrum degenerate between {b} and {c}")
            rhs = xr.sc.zero
            for d, u in coeffs.items():
                if d == c:
                    continue
                rhs = rhs + cols[i_sep][d].coeff(c) * u
            diag = cols[i_sep][c].coeff(c)
            diff = lam_b[i_sep] - diag
            binoms.append(_binomial_part(diff))
            coeffs[c] = _peel(rhs / diff, binoms)
        e = LaurentPoly(xr, coeffs)
        for i in range(n):
            if self.Y.apply_Yi(i, e) != e.scale(lam_b[i]):
                raise ArithmeticError(f"e_{b} failed the Y_{i+1} eigen-equation")
        with self._lock:
            self._e[b] = e
        return e

    # -- renormalized eps_b ------------------------------------------------------------

    def e_at_minus_rk(self, b: Wt) -> QT:
        return self.e_poly(b).eval_spectral((0,) * self.xr.rs.n, None, -1)

    def epsilon_poly(self, b: Wt) -> LaurentPoly:
        v = self.e_at_minus_rk(b)
        if v.is_zero():
            raise ZeroDivisionError(f"e_{b}(q^(-r_k)) vanishes")
        return self.e_poly(b).scale(v.inv())

    def epsilon_norm_closed(self, b: Wt) -> QT:
        """Closed form of 1/e_b(q^{-r_k}) from the Lambda_b product."""
        xr = self.xr
        rs = xr.rs
        bm = rs.antidominant(b)[0]
        out = xr.t_rk_power(bm, -1)  # q^{-(r_k, b_-)}
        for root, j in rs.lambda_b(b):
            base = xr.tau_alpha(root) * xr.q_alpha(root, j)
            out = out * (xr.sc.one - base) / (xr.sc.one - xr.t_alpha(root, 2) * base)
        return out

    # -- symmetric p_b --------------------------------------------------------------------

    def p_span(self, b_minus: Wt) -> list[Wt]:
        rs = self.xr.rs
        out = [c for c in rs.ball(rs.norm2(b_minus))
               if all(x <= 0 for x in c) and rs.le(b_minus, c)]
        out.sort(key=rs.sort_key)
        assert out and out[0] == tuple(b_minus)
        return out

    def _sym_eigenvalue(self, i: int, c_minus: Wt) -> QT:
        """Eigenvalue of L_{m_i} on p_c: m_{(b_i)_-}(q^{-c+r_k})."""
        xr = self.xr
        morb = monomial_sym(xr, xr.rs.antidominant(xr.rs.fundamental_coweight(i))[0])
        return morb.eval_spectral(tuple(-x for x in c_minus), None, +1)

    def p_poly(self, b_minus: Wt) -> LaurentPoly:
        """Spectral construction in the m-basis: p_b is the joint eigenvector
        of the W-invariant operators L_{m_i} = sum over W((b_i)_-) of Y_c,
        normalized to unit m_b coefficient."""
        b_minus = tuple(b_minus)
        with self._lock:
            if b_minus in self._p:
                return self._p[b_minus]
        if any(x > 0 for x in b_minus):
            raise ValueError("p_b requires an antidominant index")
        xr = self.xr
        rs = xr.rs
        span = self.p_span(b_minus)
        n = rs.n
        orbits = [rs.orbit(rs.antidominant(rs.fundamental_coweight(i))[0])
                  for i in range(n)]
        cols: list[dict[Wt, LaurentPoly]] = []
        for i in range(n):
            col = {}
            for c in span:
                img = xr.zero
                mc = monomial_sym(xr, c)
                for d in orbits[i]:
                    img = img + self.Y.apply_Y(d, mc)
                for w in img.d:
                    wm = rs.antidominant(w)[0]
                    if wm not in set(span):
                        raise ArithmeticError(
                            f"p-span of {b_minus} not stable: {c} -> {wm}")
                col[c] = img
            cols.append(col)
        lam_b = [self._sym_eigenvalue(i, b_minus) for i in range(n)]
        coeffs: dict[Wt, QT] = {b_minus: xr.sc.one}
        binoms: list = []
        for c in span[1:]:
            i_sep = None
            for i in range(n):
                if self._sym_eigenvalue(i, c) != lam_b[i]:
                    i_sep = i
                    break
            if i_sep is None:
                raise DegenerateSpectrumError(
                    f"symmetric spectrum degenerate between {b_minus} and {c}")
            rhs = xr.sc.zero
            for d, u in coeffs.items():
                if d == c:
                    continue
                rhs = rhs + cols[i_sep][d].coeff(c) * u
            diag = cols[i_sep][c].coeff(c)
            diff = lam_b[i_sep] - diag
            binoms.append(_binomial_part(diff))
            coeffs[c] = _peel(rhs / diff, binoms)
        p = xr.zero
        for c, u in coeffs.items():
            p = p + monomial_sym(xr, c).scale(u.reduced())
        for i in range(n):
            img = xr.zero
            for d in orbits[i]:
                img = img + self.Y.apply_Y(d, p)
            if img != p.scale(lam_b[i]):
                raise ArithmeticError(f"p_{b_minus} failed the L_{i+1} eigen-equation")
        with self._lock:
            self._p[b_minus] = p
        return p

    def p_via_symmetrizer(self, b_minus: Wt) -> LaurentPoly:
        """Independent route: P_b^t e_b rescaled to unit m_b coefficient."""
        b_minus = tuple(b_minus)
        xr = self.xr
        sym = symmetrize(xr, b_minus, self.e_poly(b_minus))
        lead = sym.coeff(b_minus)
        if lead.is_zero():
            raise ArithmeticError("symmetrization lost the leading monomial")
        p = sym.scale(lead.inv())
        p = LaurentPoly(xr, {k: v.reduced() for k, v in p.d.items()})
        if not is_t_symmetric(xr, p):
            raise ArithmeticError(f"p_{b_minus} is not T-symmetric")
        return p

    # -- evaluation and duality ----------------------------------------------------------------

    def evaluation_formula(self, b_minus: Wt) -> QT:
        """Closed form of p_b(q^{r_k}):
        q^{(r_k,b)} prod_{alpha>0} prod_{j=1}^{-(alpha,b)}
        (1 - t_alpha q_alpha^{(r_k,alpha)+j-1}) / (1 - q_alpha^{(r_k,alpha)+j-1})."""
        xr = self.xr
        rs = xr.rs
        out = xr.t_rk_power(b_minus, +1)
        for root in rs.positive_roots:
            m = -root.pair_weight(b_minus)
            for j in range(1, m + 1):
                base = xr.tau_alpha(root) * xr.q_alpha(root, j - 1)
                out = out * (xr.sc.one - xr.t_alpha(root, 2) * base)
                out = out / (xr.sc.one - base)
        return out

    def p_at_rk(self, b_minus: Wt) -> QT:
        return self.p_poly(b_minus).eval_spectral((0,) * self.xr.rs.n, None, +1)

    def duality_check(self, b: Wt, c: Wt) -> tuple[bool, QT, QT]:
        eb = self.epsilon_poly(b)
        ec = self.epsilon_poly(c)
        lhs = self.b_sharp(c).eval(eb)
        rhs = self.b_sharp(b).eval(ec)
        return lhs == rhs, lhs, rhs

    # -- norms ------------------------------------------------------------------------------------

    def mu_hat_at_sharp(self, b: Wt) -> QT:
        """mu^(q^{b#}) as the finite Lambda(pi_b) product (exact)."""
        om = self.xr.rs.antidominant(b)[1]
        return mu_hat_value(self.xr, tuple(b), om.inv(), "minus_rk")

    def norm_series(self, b: Wt, N: F | int) -> QTSeries:
        """<eps_b, eps_b>_1 = <mu eps_b eps_b*> / <mu> to order N."""
        eps = self.epsilon_poly(b)
        prod = eps * eps.star()
        num = _pair_mu_series(self.xr, prod, N)
        den = mu_const_term(self.xr, N)
        return num * den.inverse()


def _pair_mu_series(xr: XRing, f: LaurentPoly, N: F | int) -> QTSeries:
    want: dict[Wt, QT] = {}
    for e, fe in f.d.items():
        tgt = tuple(-x for x in e)
        want[tgt] = want[tgt] + fe if tgt in want else fe
    coeffs = mu_coeffs(xr, want.keys(), N)
    out = QTSeries(xr.sc, F(N), {})
    for tgt, fe in want.items():
        out = out + coeffs[tgt].scale(fe)
    return out


def inner1_series(xr: XRing, f: LaurentPoly, g: LaurentPoly, N: F | int) -> QTSeries:
    """<f, g>_1 = <mu_1 f g*> to order N."""
    num = _pair_mu_series(xr, f * g.star(), N)
    return num * mu_const_term(xr, N).inverse()


# -- independent Gram-Schmidt validation routes -------------------------------------------


def _solve_series(rows: list[list[QTSeries]], rhs: list[QTSeries]) -> list[QTSeries]:
    """Gaussian elimination over truncated q-series (exact t-coefficients)."""
    m = len(rows)
    A = [row[:] for row in rows]
    y = rhs[:]
    perm = list(range(m))
    for col in range(m):
        piv = None
        best = None
        for r in range(col, m):
            s = A[r][col]
            if s.is_zero():
                continue
            o = min(s.d)
            if best is None or o < best:
                best, piv = o, r
        if piv is None:
            raise ArithmeticError("singular series system")
        A[col], A[piv] = A[piv], A[col]
        y[col], y[piv] = y[piv], y[col]
        inv = A[col][col].inverse()
        A[col] = [s * inv for s in A[col]]
        y[col] = y[col] * inv
        for r in range(m):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
                y[r] = y[r] - f * y[col]
    return y


def e_via_gram_schmidt(ms: MacdonaldSession, b: Wt, N: F | int) -> dict[Wt, QTSeries]:
    """Coefficients of e_b from <e_b, x_c>_1 = 0 for all c succ b, as series."""
    xr = ms.xr
    span = ms.span(b)
    others = span[1:]
    if not others:
        return {}
    pairs: dict[tuple[Wt, Wt], QTSeries] = {}
    targets = set()
    for c in span:
        for d in others:
            targets.add(tuple(y - x for x, y in zip(c, d)))
    coeffs = mu_coeffs(xr, targets, N)
    denom = mu_const_term(xr, N).inverse()

    def pairing(c: Wt, d: Wt) -> QTSeries:
        # <x_c, x_d>_1 = mu-coefficient at d - c over <mu>
        return coeffs[tuple(y - x for x, y in zip(c, d))] * denom

    rows = [[pairing(c, d) for c in others] for d in others]
    rhs = [pairing(tuple(b), d).neg() for d in others]
    sol = _solve_series(rows, rhs)
    return dict(zip(others, sol))


def p_via_gram_schmidt(ms: MacdonaldSession, b_minus: Wt, N: F | int) -> dict[Wt, QTSeries]:
    """Coefficients of p_b over the m_c basis from <p m_c Delta> = 0, c > b."""
    xr = ms.xr
    rs = xr.rs
    b_minus = tuple(b_minus)
    higher = [c for c in rs.ball(rs.norm2(b_minus))
              if all(x <= 0 for x in c) and c != b_minus and rs.le(b_minus, c)]
    higher.sort(key=rs.sort_key)
    if not higher:
        return {}
    basis = {c: monomial_sym(xr, c) for c in [b_minus] + higher}
    rows = [[pair_delta(xr, basis[c] * basis[d], N) for c in higher] for d in higher]
    rhs = [pair_delta(xr, basis[b_minus] * basis[d], N).neg() for d in higher]
    sol = _solve_series(rows, rhs)
    return dict(zip(higher, sol))
