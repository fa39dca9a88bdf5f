"""Laurent polynomials and windowed Laurent series over the q,t-scalars,
with the extended affine Weyl action on monomials, constant terms, Gaussian
pairings, evaluations at spectral points, and the star/iota involutions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from qmm.rootsys import AffineElt, Mat, Root, RootSystem, Wt, _mat_apply
from qmm.scalar import QT, QTSeries, ScalarRing

F = Fraction


class XRing:
    """A root-system session bound to its scalar ring (optionally with the
    formal z-variables of the Jackson pairing)."""

    def __init__(self, rs: RootSystem, nz: int = 0) -> None:
        self.rs = rs
        self.sc = ScalarRing(rs.qden, rs.nus_present, nz)
        self.one = LaurentPoly(self, {(0,) * rs.n: self.sc.one})
        self.zero = LaurentPoly(self, {})

    def x(self, wt: Wt, coeff: QT | None = None) -> "LaurentPoly":
        return LaurentPoly(self, {tuple(wt): coeff if coeff is not None else self.sc.one})

    def x_i(self, i: int, power: int = 1) -> "LaurentPoly":
        wt = tuple(power if j == i else 0 for j in range(self.rs.n))
        return self.x(wt)

    def const(self, c: QT) -> "LaurentPoly":
        return LaurentPoly(self, {(0,) * self.rs.n: c})

    # -- per-root scalar helpers ------------------------------------------------

    def t_alpha(self, root: Root, halfexp: int = 2) -> QT:
        """t_alpha^(halfexp/2)."""
        th = [0] * len(self.rs.nus_present)
        th[self.rs.nu_index[root.nu]] = halfexp
        return self.sc.t_monomial(th)

    def q_alpha(self, root: Root, j: F | int = 1) -> QT:
        """q_alpha^j = q^(2j/nu_alpha)."""
        return self.sc.q_power(F(2) * F(j) / root.nu)

    def tau_alpha(self, root: Root, mult: int = 1) -> QT:
        """q_alpha^{(r_k, alpha)} as a t-monomial, raised to ``mult``."""
        th = [2 * h * mult for h in root.hts]
        return self.sc.t_monomial(th)

    def t_monomial(self, halfexps: Sequence[int]) -> QT:
        return self.sc.t_monomial(halfexps)

    def t_node(self, j: int, halfexp: int = 1) -> QT:
        """t_j^(halfexp/2) for an affine node j (node 0 carries nu_theta)."""
        nu = self.rs.theta.nu if j == 0 else self.rs.nu_i[j - 1]
        th = [0] * len(self.rs.nus_present)
        th[self.rs.nu_index[nu]] = halfexp
        return self.sc.t_monomial(th)

    def q_pow_pair(self, a: Wt, b: Wt) -> QT:
        return self.sc.q_power(self.rs.pair_wt_wt(a, b))

    def t_rk_power(self, c: Wt, sign: int = 1, w: Mat | None = None) -> QT:
        """q^{sign*(w(c), r_k)} as a t-monomial: prod_nu t_nu^{sign*(w(c), rho_nu)}."""
        rs = self.rs
        cc = _mat_apply(w, c) if w is not None else c
        th = []
        for nu in rs.nus_present:
            e = 2 * rs.pair_wt_wt(cc, rs.r_nu(nu)) * nu / 2  # = 2*(cc, rho_nu)
            if e.denominator != 1:
                raise ValueError("non half-integral rho pairing")
            th.append(sign * int(e))
        return self.sc.t_monomial(th)


class LaurentPoly:
    """Finitely supported map from B to exact scalars."""

    __slots__ = ("xr", "d")

    def __init__(self, xr: XRing, d: Mapping[Wt, QT]) -> None:
        self.xr = xr
        self.d = {k: v for k, v in d.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.d

    def support(self) -> list[Wt]:
        return sorted(self.d)

    def coeff(self, wt: Wt) -> QT:
        return self.d.get(tuple(wt), self.xr.sc.zero)

    def constant_term(self) -> QT:
        return self.coeff((0,) * self.xr.rs.n)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.d)
        for k, v in other.d.items():
            out[k] = out[k] + v if k in out else v
        return LaurentPoly(self.xr, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.neg()

    def neg(self) -> "LaurentPoly":
        return LaurentPoly(self.xr, {k: -v for k, v in self.d.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[Wt, QT] = {}
        for ka, ca in self.d.items():
            for kb, cb in other.d.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                v = ca * cb
                out[k] = out[k] + v if k in out else v
        return LaurentPoly(self.xr, out)

    def scale(self, c: QT) -> "LaurentPoly":
        if c.is_zero():
            return self.xr.zero
        return LaurentPoly(self.xr, {k: v * c for k, v in self.d.items()})

    def shift(self, wt: Wt) -> "LaurentPoly":
        return LaurentPoly(self.xr, {tuple(a + b for a, b in zip(k, wt)): v
                                     for k, v in self.d.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if set(self.d) != set(other.d):
            return False
        return all(self.d[k] == other.d[k] for k in self.d)

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("LaurentPoly is unhashable")

    # -- involutions --------------------------------------------------------------

    def star(self) -> "LaurentPoly":
        return LaurentPoly(self.xr, {tuple(-x for x in k): v.star()
                                     for k, v in self.d.items()})

    def iota(self) -> "LaurentPoly":
        return LaurentPoly(self.xr, {k: v.iota() for k, v in self.d.items()})

    # -- affine Weyl action ---------------------------------------------------------

    def act(self, elt: AffineElt, gauss_sign: int = 0) -> "LaurentPoly":
        """Apply an extended affine Weyl element to the monomials.

        With ``gauss_sign`` +1 or -1 the action is conjugated by the Gaussian
        series gamma~^{-1} or gamma~: a translation part b_t additionally
        multiplies by q^{-s(b_t,b_t)/2} x_{s*w(b_t)} for s = gauss_sign, which
        is exactly the commutation rule the Gaussians satisfy.
        """
        rs = self.xr.rs
        sc = self.xr.sc
        out: dict[Wt, QT] = {}
        for k, v in self.d.items():
            k2, lvl = elt.act_weight(k)
            c = v * sc.q_power(lvl) if lvl else v
            out[k2] = out[k2] + c if k2 in out else c
        res = LaurentPoly(self.xr, out)
        if gauss_sign:
            bt = elt.t
            if any(bt):
                wbt = _mat_apply(elt.w, bt)
                fac = sc.q_power(-gauss_sign * rs.norm2(bt) / 2)
                mono = tuple(gauss_sign * x for x in wbt)
                res = res.shift(mono).scale(fac)
        return res

    # -- evaluations -------------------------------------------------------------------

    def eval_q_point(self, z: Sequence[F | int]) -> QT:
        """Value at q^z for an explicit rational vector z: x_c -> q^{(c,z)}."""
        rs, sc = self.xr.rs, self.xr.sc
        out = sc.zero
        for k, v in self.d.items():
            e = sum(F(z[j]) * rs.pair_wt_wt(k, rs.fundamental_coweight(j))
                    for j in range(rs.n))
            out = out + v * sc.q_power(e)
        return out

    def eval_spectral(self, base: Wt, w: Mat | None = None, sign: int = 1) -> QT:
        """Value at q^{base + sign*w^{-1}(r_k)} with symbolic k:
        x_c -> q^{(c,base)} * prod_nu t_nu^{sign*(w(c), rho_nu)}."""
        xr = self.xr
        out = xr.sc.zero
        for k, v in self.d.items():
            out = out + v * xr.q_pow_pair(k, base) * xr.t_rk_power(k, sign, w)
        return out

    def eval_jackson(self, w: AffineElt, d: Wt) -> QT:
        """Value at the lattice point q^{w(xi) + d} with formal z_i = q^{(b_i, xi)}."""
        xr = self.xr
        if xr.sc.nz != xr.rs.n:
            raise ValueError("ring has no z-variables")
        out = xr.sc.zero
        for k, v in self.d.items():
            zv = _mat_apply(w.winv, k)
            out = out + v * xr.q_pow_pair(k, d) * xr.sc.z_monomial(zv)
        return out

    # -- pairings ------------------------------------------------------------------------

    def gauss_pair(self, sign: int = 1) -> QT:
        """<f * gamma~^{-sign}> = sum_c q^{sign*(c,c)/2} f_c, exact."""
        rs, sc = self.xr.rs, self.xr.sc
        out = sc.zero
        for k, v in self.d.items():
            out = out + v * sc.q_power(sign * rs.norm2(k) / 2)
        return out

    # -- exact division --------------------------------------------------------------------

    def div_binomial(self, direction: Wt, mcoeff: QT) -> "LaurentPoly":
        """Exact division by (mcoeff * x_direction - 1); raises if inexact."""
        v = tuple(direction)
        i0 = next(i for i, x in enumerate(v) if x)
        fibers: dict[Wt, dict[int, tuple[Wt, QT]]] = {}
        for k, c in self.d.items():
            m = k[i0] // v[i0]
            rep = tuple(a - m * b for a, b in zip(k, v))
            fibers.setdefault(rep, {})[m] = (k, c)
        sc = self.xr.sc
        out: dict[Wt, QT] = {}
        for rep, fib in fibers.items():
            lo = min(fib)
            hi = max(fib)
            h_prev = sc.zero
            for m in range(lo, hi + 1):
                f_m = fib.get(m, (None, sc.zero))[1]
                h_m = mcoeff * h_prev - f_m
                if not h_m.is_zero():
                    out[tuple(a + m * b for a, b in zip(rep, v))] = h_m
                h_prev = h_m
            if not h_prev.is_zero():
                raise ArithmeticError("inexact binomial division")
        return LaurentPoly(self.xr, out)

    def div_exact(self, g: "LaurentPoly") -> "LaurentPoly":
        """Exact division by a general Laurent polynomial; raises if inexact."""
        if g.is_zero():
            raise ZeroDivisionError
        rem = dict(self.d)
        out: dict[Wt, QT] = {}
        glead = max(g.d)
        gc = g.d[glead]
        guard = 8 * (len(self.d) + len(g.d)) ** 2 + 64
        while rem:
            guard -= 1
            if guard < 0:
                raise ArithmeticError("inexact polynomial division")
            lead = max(rem)
            q = rem[lead] / gc
            kq = tuple(a - b for a, b in zip(lead, glead))
            out[kq] = out.get(kq, self.xr.sc.zero) + q
            for kg, cg in g.d.items():
                k = tuple(a + b for a, b in zip(kg, kq))
                v = rem.get(k, self.xr.sc.zero) - q * cg
                if v.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return LaurentPoly(self.xr, out)

    # -- presentation --------------------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Wt, QT]]:
        return [(k, self.d[k]) for k in
                sorted(self.d, key=self.xr.rs.sort_key)]

    def to_json(self) -> list[dict]:
        return [{"weight": list(k), "coeff": str(v)} for k, v in self.sorted_terms()]

    def __str__(self) -> str:
        if not self.d:
            return "0"
        parts = []
        for k, v in self.sorted_terms():
            mono = "*".join(f"x{i+1}^{e}" for i, e in enumerate(k) if e) or "1"
            parts.append(f"({v})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def monomial_sym(xr: XRing, b_minus: Wt) -> LaurentPoly:
    """Monomial symmetric function m_b = sum of the orbit of b."""
    return LaurentPoly(xr, {c: xr.sc.one for c in xr.rs.orbit(b_minus)})


class WindowedSeries:
    """x-support-bounded, q-order-capped Laurent series.

    Contract: ``d`` equals the true series after discarding (i) monomials
    with (b,b)/2 > R and (ii) q-exponents > N.  ``discard_floor`` is a
    certified lower bound on the q-order carried by every discarded
    x-monomial (None means nothing was discarded).
    """

    __slots__ = ("xr", "d", "R", "N", "discard_floor")

    def __init__(self, xr: XRing, d: Mapping[Wt, QTSeries], R: F, N: F,
                 discard_floor: F | None) -> None:
        self.xr = xr
        self.d = {k: v for k, v in d.items() if not v.is_zero()}
        self.R = F(R)
        self.N = F(N)
        self.discard_floor = discard_floor

    @staticmethod
    def from_poly(f: LaurentPoly, N: F | int) -> "WindowedSeries":
        rs = f.xr.rs
        R = max((rs.norm2(k) / 2 for k in f.d), default=F(0))
        return WindowedSeries(f.xr, {k: v.expand(F(N)) for k, v in f.d.items()},
                              R, F(N), None)

    def coeff(self, wt: Wt) -> QTSeries:
        return self.d.get(tuple(wt), QTSeries(self.xr.sc, self.N, {}))

    def constant_term(self) -> QTSeries:
        return self.coeff((0,) * self.xr.rs.n)

    def min_order(self) -> F:
        vals = [F(min(s.d), self.xr.sc.qden) for s in self.d.values() if s.d]
        return min(vals) if vals else F(0)

    def __add__(self, other: "WindowedSeries") -> "WindowedSeries":
        out = dict(self.d)
        for k, v in other.d.items():
            out[k] = out[k] + v if k in out else v
        floors = [x for x in (self.discard_floor, other.discard_floor) if x is not None]
        return WindowedSeries(self.xr, out, min(self.R, other.R),
                              min(self.N, other.N), min(floors) if floors else None)

    def scale(self, c: QT) -> "WindowedSeries":
        return WindowedSeries(self.xr, {k: v.scale(c) for k, v in self.d.items()},
                              self.R, self.N, self.discard_floor)

    def mul(self, other: "WindowedSeries") -> "WindowedSeries":
        """Windowed product with the conservative certified order.

        The result is exact modulo q-orders above
        min(N_f, N_g, df_f + ord(g), df_g + ord(f)); an error is raised when
        that bound is not positive-infinite but the caller demanded more via
        the factor caps (detected as a shrunken N).
        """
        bound = min(self.N, other.N)
        if self.discard_floor is not None:
            bound = min(bound, self.discard_floor + other.min_order())
        if other.discard_floor is not None:
            bound = min(bound, other.discard_floor + self.min_order())
        out: dict[Wt, QTSeries] = {}
        for ka, va in self.d.items():
            for kb, vb in other.d.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                v = va * vb
                out[k] = out[k] + v if k in out else v
        R = max(self.R, other.R)
        res: dict[Wt, QTSeries] = {}
        dropped = False
        for k, v in out.items():
            if self.xr.rs.norm2(k) / 2 <= R:
                res[k] = QTSeries(v.ring, bound, v.d)
            else:
                dropped = True
        floor = bound if dropped else None
        for df in (self.discard_floor, other.discard_floor):
            if df is not None:
                floor = df if floor is None else min(floor, df)
        return WindowedSeries(self.xr, res, R, bound, floor)

    def required_window(self, N: F | int) -> F:
        """Smallest ball radius R with every discarded Gaussian shell above N."""
        return F(N)

    def first_mismatch(self, other: "WindowedSeries") -> tuple[Wt, F] | None:
        keys = set(self.d) | set(other.d)
        best: tuple[Wt, F] | None = None
        for k in sorted(keys):
            m = self.coeff(k).first_mismatch(other.coeff(k))
            if m is not None and (best is None or m < best[1]):
                best = (k, m)
        return best

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WindowedSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("WindowedSeries is unhashable")

    def to_json(self) -> list[dict]:
        return [{"weight": list(k), "series": str(self.d[k])}
                for k in sorted(self.d, key=self.xr.rs.sort_key)]
