"""Exact coefficient arithmetic for the q,t-algebra.

Scalars live in the fraction field of Laurent polynomials in

* ``q^(1/D)``   -- q-exponents are rationals with denominator dividing the
  session denominator D, stored as integer multiples of 1/D,
* ``t_nu^(1/2)`` -- one generator per root length nu present,
* optional formal ``z_i`` -- used by the Jackson pairing where
  ``z_i = q^((b_i, xi))`` for a formal spectral shift xi.

A monomial is a flat int tuple ``(qe, *t_half_exps, *z_exps)``.  A ``Poly``
keeps integer coefficients plus one rational content factor; a ``QT`` value
is a reduced-on-demand fraction of two ``Poly``.  ``QTSeries`` is the
truncated q-adic layer: a sparse map from q-exponent to a q-free ``QT``.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Mapping, Sequence

from qmm.kernels import dict_addmul, dict_content, dict_mul, dict_scale_exact

F = Fraction

# Beyond this many term-pairs, QT arithmetic attempts a full multivariate gcd.
# Kept effectively off: reductions are explicit (reduced()) or structural
# (the known-binomial peeling in the spectral solvers).
_GCD_THRESHOLD = 10 ** 9


class ScalarError(ArithmeticError):
    pass


class ExpansionError(ScalarError):
    """Raised when a value is not q-adically expandable."""


class SpecializationError(ScalarError):
    """Raised when a t-specialization hits a vanishing denominator."""

    def __init__(self, msg: str, factor: str = "") -> None:
        super().__init__(msg)
        self.factor = factor


class ScalarRing:
    """Descriptor of one scalar ring: q-denominator, root lengths, z-arity."""

    def __init__(self, qden: int, tnus: Sequence[F], nz: int = 0) -> None:
        self.qden = int(qden)
        self.tnus = tuple(tnus)          # lengths nu, long first
        self.nz = int(nz)
        self.width = 1 + len(self.tnus) + self.nz
        if len(self.tnus) == 1:
            self.tnames = ("t",)
        else:
            self.tnames = ("tl", "ts")
        self.znames = tuple(f"z{i+1}" for i in range(self.nz))
        self._zero = Poly(self, F(0), {})
        self._onep = Poly(self, F(1), {(0,) * self.width: 1})
        self.zero = QT(self, self._zero, self._onep)
        self.one = QT(self, self._onep, self._onep)

    def __repr__(self) -> str:
        return f"ScalarRing(D={self.qden}, tnus={self.tnus}, nz={self.nz})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ScalarRing)
                and (self.qden, self.tnus, self.nz) == (other.qden, other.tnus, other.nz))

    def __hash__(self) -> int:
        return hash((self.qden, self.tnus, self.nz))

    def key(self, qexp: F | int = 0, thalf: Sequence[int] = (), z: Sequence[int] = ()) -> tuple:
        qe = F(qexp) * self.qden
        if qe.denominator != 1:
            raise ScalarError(f"q-exponent {qexp} outside (1/{self.qden})Z")
        th = tuple(thalf) + (0,) * (len(self.tnus) - len(thalf))
        zz = tuple(z) + (0,) * (self.nz - len(z))
        return (int(qe),) + th + zz

    def monomial(self, coeff: F | int = 1, qexp: F | int = 0,
                 thalf: Sequence[int] = (), z: Sequence[int] = ()) -> QT:
        c = F(coeff)
        if c == 0:
            return self.zero
        return QT(self, Poly(self, c, {self.key(qexp, thalf, z): 1}), self._onep)

    def const(self, c: F | int) -> QT:
        return self.monomial(F(c))

    def q_power(self, e: F | int) -> QT:
        return self.monomial(1, qexp=e)

    def t_power(self, nu_index: int, halfexp: int) -> QT:
        th = [0] * len(self.tnus)
        th[nu_index] = halfexp
        return self.monomial(1, thalf=th)

    def t_monomial(self, halfexps: Sequence[int]) -> QT:
        return self.monomial(1, thalf=halfexps)

    def z_monomial(self, zexps: Sequence[int]) -> QT:
        return self.monomial(1, z=zexps)

    def poly(self, terms: Mapping[tuple, F]) -> QT:
        """Build a QT from {key: Fraction coefficient} with ring-width keys."""
        den = 1
        for c in terms.values():
            den = den * F(c).denominator // gcd(den, F(c).denominator)
        m = {}
        for k, c in terms.items():
            v = int(F(c) * den)
            if v:
                m[tuple(k)] = v
        return QT(self, Poly(self, F(1, den), m), self._onep)


class Poly:
    """Sparse Laurent polynomial: rational content times a gcd-1 int dict."""

    __slots__ = ("ring", "c", "m")

    def __init__(self, ring: ScalarRing, c: F, m: dict) -> None:
        self.ring = ring
        self.c = c
        self.m = m

    @staticmethod
    def normalized(ring: ScalarRing, c: F, m: dict) -> "Poly":
        if not m or c == 0:
            return Poly(ring, F(0), {})
        g = dict_content(m)
        if m[min(m)] < 0:
            g = -g
        if g != 1:
            m = {k: v // g for k, v in m.items()}
            c = c * g
        return Poly(ring, c, m)

    def is_zero(self) -> bool:
        return not self.m

    def is_one(self) -> bool:
        return self.c == 1 and self.m == {(0,) * self.ring.width: 1}

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Poly) and self.c == other.c and self.m == other.m)

    def __hash__(self) -> int:
        return hash((self.c, frozenset(self.m.items())))

    def add(self, other: "Poly") -> "Poly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        ca, cb = self.c, other.c
        g = F(gcd(ca.numerator * cb.denominator, cb.numerator * ca.denominator),
              ca.denominator * cb.denominator)
        ma = int(ca / g)
        mb = int(cb / g)
        out = {k: v * ma for k, v in self.m.items()}
        dict_addmul(out, other.m, mb)
        return Poly.normalized(self.ring, g, out)

    def neg(self) -> "Poly":
        return Poly(self.ring, -self.c, self.m)

    def mul(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return self.ring._zero
        return Poly(self.ring, self.c * other.c, dict_mul(self.m, other.m))

    def mul_scalar(self, c: F) -> "Poly":
        if c == 0 or self.is_zero():
            return self.ring._zero
        return Poly(self.ring, self.c * c, self.m)

    def shift(self, key: tuple) -> "Poly":
        """Multiply by the monomial with exponent ``key``."""
        if self.is_zero() or not any(key):
            return self
        return Poly(self.ring, self.c,
                    {tuple(a + b for a, b in zip(k, key)): v for k, v in self.m.items()})

    def map_keys(self, fn) -> "Poly":
        out: dict = {}
        for k, v in self.m.items():
            k2 = fn(k)
            out[k2] = out.get(k2, 0) + v
        out = {k: v for k, v in out.items() if v}
        return Poly.normalized(self.ring, self.c, out)

    def min_exponents(self) -> tuple:
        return tuple(min(k[i] for k in self.m) for i in range(self.ring.width))

    def q_slices(self) -> dict[int, "Poly"]:
        """Split into {q-exponent-units: q-free Poly}."""
        out: dict[int, dict] = {}
        for k, v in self.m.items():
            out.setdefault(k[0], {})[(0,) + k[1:]] = v
        return {qe: Poly(self.ring, self.c, m) for qe, m in sorted(out.items())}

    def terms_str(self) -> str:
        return _poly_str(self)

    def __repr__(self) -> str:
        return f"Poly({self.terms_str()})"


def _mono_str(ring: ScalarRing, key: tuple) -> str:
    parts = []
    if key[0]:
        parts.append(f"q^({F(key[0], ring.qden)})")
    for i, name in enumerate(ring.tnames):
        e = key[1 + i]
        if e:
            parts.append(f"{name}^({F(e, 2)})")
    for j, name in enumerate(ring.znames):
        e = key[1 + len(ring.tnames) + j]
        if e:
            parts.append(f"{name}^{e}")
    return " * ".join(parts)


def _poly_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in sorted(p.m):
        c = p.c * p.m[k]
        mono = _mono_str(p.ring, k)
        if mono:
            parts.append(f"{c} * {mono}" if c != 1 else mono)
        else:
            parts.append(str(c))
    return " + ".join(parts)


class QT:
    """Exact rational function in q^(1/D), t_nu^(1/2) and optional z_i."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: ScalarRing, num: Poly, den: Poly) -> None:
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num = Poly.normalized(ring, num.c, num.m)
        den = Poly.normalized(ring, den.c, den.m)
        # Normalize: shift den to exponent corner 0, fold den content into num.
        if not num.is_zero():
            v = den.min_exponents()
            if any(v):
                nv = tuple(-x for x in v)
                num = num.shift(nv)
                den = den.shift(nv)
        else:
            den = ring._onep
        if den.c != 1:
            num = num.mul_scalar(F(1) / den.c)
            den = Poly(ring, F(1), den.m)
        self.ring = ring
        self.num = num
        self.den = den

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def frac(num: Poly, den: Poly) -> "QT":
        return QT(num.ring, num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "QT") -> "QT":
        if self.den == other.den:
            return QT(self.ring, self.num.add(other.num), self.den)
        # Divisibility fast paths keep accumulated denominators at their lcm.
        q = _try_div(other.den, self.den)
        if q is not None:
            return QT(self.ring, self.num.mul(q).add(other.num), other.den)
        q = _try_div(self.den, other.den)
        if q is not None:
            return QT(self.ring, self.num.add(other.num.mul(q)), self.den)
        num = self.num.mul(other.den).add(other.num.mul(self.den))
        return QT(self.ring, num, self.den.mul(other.den))._auto_reduced()

    def __sub__(self, other: "QT") -> "QT":
        return self + (-other)

    def __neg__(self) -> "QT":
        return QT(self.ring, self.num.neg(), self.den)

    def __mul__(self, other: "QT") -> "QT":
        if self.is_zero() or other.is_zero():
            return self.ring.zero
        return QT(self.ring, self.num.mul(other.num),
                  self.den.mul(other.den))._auto_reduced()

    def __truediv__(self, other: "QT") -> "QT":
        if other.is_zero():
            raise ZeroDivisionError("division by zero QT")
        if self.is_zero():
            return self.ring.zero
        return QT(self.ring, self.num.mul(other.den),
                  self.den.mul(other.num))._auto_reduced()

    def inv(self) -> "QT":
        return self.ring.one / self

    def __pow__(self, n: int) -> "QT":
        if n < 0:
            return self.inv() ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QT):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num.mul(other.den) == other.num.mul(self.den)

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.num, r.den))

    # -- reduction -----------------------------------------------------------

    def _auto_reduced(self) -> "QT":
        if len(self.num.m) * len(self.den.m) > _GCD_THRESHOLD:
            return self.reduced()
        return self

    def reduced(self) -> "QT":
        """Cancel the full multivariate gcd of numerator and denominator."""
        if self.den.is_one() or self.num.is_zero():
            return self
        g = _gcd_md(self.num.m, self.den.m, self.ring.width)
        if len(g) == 1 and 1 in g.values() and not any(next(iter(g))):
            return self
        num = Poly.normalized(self.ring, self.num.c, _divexact(self.num.m, g))
        den = Poly.normalized(self.ring, self.den.c, _divexact(self.den.m, g))
        return QT(self.ring, num, den)

    # -- involutions and substitutions ----------------------------------------

    def star(self) -> "QT":
        """q -> 1/q, t -> 1/t, z -> 1/z (trivial conjugation of xi)."""
        return QT(self.ring, self.num.map_keys(lambda k: tuple(-x for x in k)),
                  self.den.map_keys(lambda k: tuple(-x for x in k)))

    def iota(self) -> "QT":
        """q -> 1/q and t -> 1/t with x (and z) untouched."""
        nt = 1 + len(self.ring.tnus)
        if self.ring.nz and any(any(k[nt:]) for k in
                                list(self.num.m) + list(self.den.m)):
            raise ScalarError("iota is not defined on z-carrying scalars")
        fn = lambda k: tuple(-x for x in k[:nt]) + k[nt:]
        return QT(self.ring, self.num.map_keys(fn), self.den.map_keys(fn))

    def specialize_t(self, kmap: Sequence[F | int]) -> "QT":
        """Substitute t_nu = q_nu^{k_nu}; errors on a vanishing denominator."""
        den = _spec_t(self.den, kmap)
        if den.is_zero():
            raise SpecializationError(
                "denominator vanishes under t-specialization",
                factor=self.den.terms_str())
        return QT(self.ring, _spec_t(self.num, kmap), den)

    def subs_z(self, zvals: Sequence["QT"]) -> "QT":
        """Substitute QT values for the formal z-variables."""
        num = _subs_z(self.num, zvals)
        den = _subs_z(self.den, zvals)
        return num / den

    # -- inspection ------------------------------------------------------------

    def q_order(self) -> F:
        """Least q-exponent of the q-adic expansion (num minus den order)."""
        if self.is_zero():
            raise ScalarError("q_order of zero")
        no = min(k[0] for k in self.num.m)
        return F(no - min(k[0] for k in self.den.m), self.ring.qden)

    def is_q_free(self) -> bool:
        return all(k[0] == 0 for k in self.num.m) and all(k[0] == 0 for k in self.den.m)

    def as_fraction(self) -> F:
        """Value as a plain rational; requires a constant scalar."""
        zed = (0,) * self.ring.width
        if not self.num.m:
            return F(0)
        if set(self.num.m) != {zed} or set(self.den.m) != {zed}:
            r = self.reduced()
            if set(r.num.m) != {zed} or set(r.den.m) != {zed}:
                raise ScalarError("not a constant scalar")
            return r.as_fraction()
        return self.num.c * self.num.m[zed] / (self.den.c * self.den.m[zed])

    def __repr__(self) -> str:
        return f"QT({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return self.num.terms_str()
        return f"({self.num.terms_str()}) / ({self.den.terms_str()})"

    # -- q-adic expansion -------------------------------------------------------

    def expand(self, N: F | int) -> "QTSeries":
        """q-adic expansion, exact modulo q-exponents > N."""
        N = F(N)
        ring = self.ring
        if self.is_zero():
            return QTSeries(ring, N, {})
        Nu = _floor_units(N, ring.qden)
        num_sl = self.num.q_slices()
        den_sl = self.den.q_slices()
        d0 = min(den_sl)
        B0 = QT(ring, den_sl[d0], ring._onep)
        if B0.is_zero():
            raise ExpansionError("not q-adically expandable")
        rest = [(qe - d0, QT(ring, p, ring._onep)) for qe, p in den_sl.items() if qe != d0]
        inv0 = B0.inv()
        # 1/den = q^{-d0} * inv0 * sum_i (-E*inv0)^i  with E of positive q-order
        ie_cap = Nu - min(num_sl) + d0
        terms: dict[int, QT] = {0: inv0}
        frontier: dict[int, QT] = {0: inv0}
        while rest and frontier:
            nxt: dict[int, QT] = {}
            for qe, c in frontier.items():
                for de, dc in rest:
                    e2 = qe + de
                    if e2 > ie_cap:
                        continue
                    v = -(c * dc * inv0)
                    if e2 in nxt:
                        nxt[e2] = nxt[e2] + v
                    else:
                        nxt[e2] = v
            nxt = {e: v for e, v in nxt.items() if not v.is_zero()}
            for e, v in nxt.items():
                terms[e] = terms[e] + v if e in terms else v
            frontier = nxt
        out: dict[int, QT] = {}
        for ne, np_ in num_sl.items():
            nqt = QT(ring, np_, ring._onep)
            for ie, iv in terms.items():
                e = ne - d0 + ie
                if e > Nu:
                    continue
                v = nqt * iv
                out[e] = out[e] + v if e in out else v
        out = {e: v for e, v in out.items() if not v.is_zero()}
        return QTSeries(ring, N, out)


def _spec_t(p: Poly, kmap: Sequence[F | int]) -> Poly:
    ring = p.ring
    nt = len(ring.tnus)
    out: dict = {}
    for k, v in p.m.items():
        qe = F(k[0], ring.qden)
        for i in range(nt):
            # t_nu^(1/2) = q^(k_nu / nu)
            qe += k[1 + i] * F(kmap[i]) / ring.tnus[i]
        qu = qe * ring.qden
        if qu.denominator != 1:
            raise ScalarError("t-specialization leaves the q-exponent lattice")
        k2 = (int(qu),) + (0,) * nt + k[1 + nt:]
        out[k2] = out.get(k2, 0) + v
    out = {k: v for k, v in out.items() if v}
    return Poly.normalized(ring, p.c, out)


def _subs_z(p: Poly, zvals: Sequence[QT]) -> QT:
    ring = p.ring
    nt = len(ring.tnus)
    out = ring.zero
    for k, v in p.m.items():
        term = QT(ring, Poly(ring, p.c * v, {k[:1 + nt] + (0,) * ring.nz: 1}), ring._onep)
        for j in range(ring.nz):
            e = k[1 + nt + j]
            if e:
                term = term * zvals[j] ** e
        out = out + term
    return out


# -- multivariate gcd (primitive PRS) -----------------------------------------


def _try_div(a: Poly, b: Poly) -> Poly | None:
    """a / b when b divides a exactly, else None (cheap screens first)."""
    if b.is_one():
        return a
    if len(a.m) < len(b.m) or a.is_zero():
        return None
    la, lb = max(a.m), max(b.m)
    ma, mb = min(a.m), min(b.m)
    if any(x - y < u - v for x, y, u, v in zip(la, ma, lb, mb)):
        return None
    if a.m[la] % b.m[lb] or a.m[ma] % b.m[mb]:
        return None
    try:
        if len(b.m) == 2:
            q = _divexact_binomial(a.m, b.m)
        else:
            q = _divexact(a.m, b.m)
    except ArithmeticError:
        return None
    return Poly.normalized(a.ring, a.c / b.c, q)


def _divexact_binomial(a: dict, b: dict) -> dict:
    """Exact division by a two-term divisor, linear time per fiber."""
    (k0, c0), (k1, c1) = sorted(b.items())
    v = tuple(x - y for x, y in zip(k1, k0))
    i0 = next(i for i, x in enumerate(v) if x)
    fibers: dict[tuple, dict[int, int]] = {}
    for k, c in a.items():
        m = k[i0] // v[i0]
        rep = tuple(x - m * y - z for x, y, z in zip(k, v, k0))
        fibers.setdefault(rep, {})[m] = c
    out: dict = {}
    for rep, fib in fibers.items():
        lo, hi = min(fib), max(fib)
        h_prev = 0
        # solve h*(c0 + c1 x^v) = fiber, ascending in the fiber parameter
        for m in range(lo, hi + 1):
            num = fib.get(m, 0) - c1 * h_prev
            q, r = divmod(num, c0)
            if r:
                raise ArithmeticError("inexact binomial division")
            if q:
                out[tuple(x + m * y for x, y in zip(rep, v))] = q
            h_prev = q
        if h_prev:
            raise ArithmeticError("inexact binomial division")
    return out


def _divexact(a: dict, b: dict) -> dict:
    """Exact division of int-dicts; raises ArithmeticError if inexact."""
    if not a:
        return {}
    if len(b) == 1:
        (kb, cb), = b.items()
        out = {}
        for k, v in a.items():
            q, r = divmod(v, cb)
            if r:
                raise ArithmeticError("inexact division")
            out[tuple(x - y for x, y in zip(k, kb))] = q
        return out
    rem = dict(a)
    out: dict = {}
    lb = max(b)
    cb = b[lb]
    guard = 4 * (len(a) + len(b)) ** 2 + 64
    while rem:
        guard -= 1
        if guard < 0:
            raise ArithmeticError("inexact division")
        la = max(rem)
        q, r = divmod(rem[la], cb)
        if r:
            raise ArithmeticError("inexact division")
        kq = tuple(x - y for x, y in zip(la, lb))
        out[kq] = out.get(kq, 0) + q
        dict_addmul(rem, {tuple(x + y for x, y in zip(kb, kq)): v for kb, v in b.items()}, -q)
    return {k: v for k, v in out.items() if v}


def _shift_nonneg(a: dict, width: int) -> tuple[dict, tuple]:
    v = tuple(min(k[i] for k in a) for i in range(width))
    if not any(v):
        return a, v
    return {tuple(x - y for x, y in zip(k, v)): c for k, c in a.items()}, v


def _gcd_md(a: dict, b: dict, width: int) -> dict:
    """Monic-content gcd of two int-dicts (Laurent monomial factors included)."""
    a, va = _shift_nonneg(a, width)
    b, vb = _shift_nonneg(b, width)
    g = _gcd_poly(a, b, width)
    g, _ = _shift_nonneg(g, width)
    return g


def _gcd_poly(a: dict, b: dict, width: int) -> dict:
    one = {(0,) * width: 1}
    if not a or not b:
        return dict(a or b) or one
    ca, cb = dict_content(a), dict_content(b)
    cg = gcd(ca, cb)
    a = {k: v // ca for k, v in a.items()}
    b = {k: v // cb for k, v in b.items()}
    spread = [max(max(k[i] for k in d) - min(k[i] for k in d) for d in (a, b))
              for i in range(width)]
    active = [i for i, s in enumerate(spread) if s > 0]
    if not active:
        return {(0,) * width: cg}
    if len(active) > 3 or len(a) == 1 or len(b) == 1:
        # Monomial / too-many-variable fallback: componentwise-min monomial.
        mk = tuple(min(min(k[i] for k in a), min(k[i] for k in b)) for i in range(width))
        return {mk: cg}
    v = max(active, key=lambda i: spread[i])
    g = _gcd_prs(a, b, width, v)
    return {k: c * cg for k, c in dict_mul(g, one).items()}


def _poly_view(a: dict, v: int) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for k, c in a.items():
        k2 = k[:v] + (0,) + k[v + 1:]
        out.setdefault(k[v], {})[k2] = c
    return out


def _view_poly(view: dict[int, dict], v: int) -> dict:
    out: dict = {}
    for d, coeff in view.items():
        for k, c in coeff.items():
            out[k[:v] + (d,) + k[v + 1:]] = c
    return out


def _content_wrt(a: dict, width: int, v: int) -> dict:
    view = _poly_view(a, v)
    it = iter(view.values())
    g = dict(next(it))
    for coeff in it:
        g = _gcd_poly(g, coeff, width)
        if len(g) == 1 and g.get((0,) * width) == 1:
            break
    return g


def _pseudo_rem(a: dict, b: dict, width: int, v: int) -> dict:
    va, vb = _poly_view(a, v), _poly_view(b, v)
    db = max(vb)
    lb = vb[db]
    r = dict(a)
    guard = 16 * (len(a) + len(b) + 8) ** 2
    while r:
        vr = _poly_view(r, v)
        dr = max(vr)
        if dr < db:
            break
        guard -= 1
        if guard < 0:
            raise ArithmeticError("pseudo-division runaway")
        lr = vr[dr]
        shift = (0,) * v + (dr - db,) + (0,) * (width - v - 1)
        r = dict_mul(r, lb)
        sub = dict_mul(dict_mul(lr, b), {shift: 1})
        dict_addmul(r, sub, -1)
    return r


def _gcd_prs(a: dict, b: dict, width: int, v: int) -> dict:
    ca = _content_wrt(a, width, v)
    cb = _content_wrt(b, width, v)
    cont = _gcd_poly(ca, cb, width)
    a = _divexact(a, ca)
    b = _divexact(b, cb)
    if max(_poly_view(a, v)) < max(_poly_view(b, v)):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, width, v)
        if not r:
            break
        view = _poly_view(r, v)
        if max(view) == 0:
            return cont
        cr = _content_wrt(r, width, v)
        a, b = b, _divexact(r, cr)
    pb = _divexact(b, _content_wrt(b, width, v)) if len(b) > 1 else b
    return dict_mul(cont, pb)


# -- truncated q-series --------------------------------------------------------


def _floor_units(N: F, qden: int) -> int:
    return floor(N * qden)


class QTSeries:
    """Sparse q-series with q-free QT coefficients, exact modulo q^(>N)."""

    __slots__ = ("ring", "N", "d")

    def __init__(self, ring: ScalarRing, N: F, d: dict[int, QT]) -> None:
        self.ring = ring
        self.N = F(N)
        cap = _floor_units(self.N, ring.qden)
        self.d = {e: c for e, c in d.items() if e <= cap and not c.is_zero()}

    @staticmethod
    def const(ring: ScalarRing, c: QT, N: F | int) -> "QTSeries":
        return QTSeries(ring, F(N), {} if c.is_zero() else {0: c})

    def cap_units(self) -> int:
        return _floor_units(self.N, self.ring.qden)

    def coeff(self, qexp: F | int) -> QT:
        e = F(qexp) * self.ring.qden
        if e.denominator != 1:
            return self.ring.zero
        return self.d.get(int(e), self.ring.zero)

    def truncate(self, N: F | int) -> "QTSeries":
        N = F(N)
        if N > self.N:
            raise ScalarError(f"cannot extend a series truncated at {self.N} to {N}")
        return QTSeries(self.ring, N, self.d)

    def __add__(self, other: "QTSeries") -> "QTSeries":
        N = min(self.N, other.N)
        out = dict(self.d)
        for e, c in other.d.items():
            out[e] = out[e] + c if e in out else c
        return QTSeries(self.ring, N, out)

    def __sub__(self, other: "QTSeries") -> "QTSeries":
        return self + other.neg()

    def neg(self) -> "QTSeries":
        return QTSeries(self.ring, self.N, {e: -c for e, c in self.d.items()})

    def __mul__(self, other: "QTSeries") -> "QTSeries":
        # Error from truncated tails: a_err*b has order > N_a + ord(b), and
        # symmetrically; the certified order degrades accordingly.
        qd = self.ring.qden
        oa = F(min(self.d), qd) if self.d else self.N
        ob = F(min(other.d), qd) if other.d else other.N
        N = min(self.N + ob, other.N + oa)
        cap = _floor_units(N, qd)
        out: dict[int, QT] = {}
        for e1, c1 in self.d.items():
            for e2, c2 in other.d.items():
                e = e1 + e2
                if e > cap:
                    continue
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return QTSeries(self.ring, N, out)

    def scale(self, c: QT) -> "QTSeries":
        if not c.is_q_free():
            return self * c.expand(self.N)
        return QTSeries(self.ring, self.N, {e: v * c for e, v in self.d.items()})

    def shift_q(self, qexp: F | int) -> "QTSeries":
        e0 = F(qexp) * self.ring.qden
        if e0.denominator != 1:
            raise ScalarError("shift outside exponent lattice")
        return QTSeries(self.ring, self.N + F(qexp), {e + int(e0): c for e, c in self.d.items()})

    def inverse(self) -> "QTSeries":
        """Reciprocal to the same order; lowest term must be invertible."""
        if not self.d:
            raise ExpansionError("cannot invert the zero series")
        e0 = min(self.d)
        c0 = self.d[e0]
        inv0 = c0.inv()
        cap = self.cap_units() - e0
        rest = {e - e0: c for e, c in self.d.items() if e != e0}
        out: dict[int, QT] = {0: inv0}
        frontier: dict[int, QT] = {0: inv0}
        while rest and frontier:
            nxt: dict[int, QT] = {}
            for qe, c in frontier.items():
                for de, dc in rest.items():
                    e2 = qe + de
                    if e2 > cap:
                        continue
                    v = -(c * dc * inv0)
                    nxt[e2] = nxt[e2] + v if e2 in nxt else v
            nxt = {e: v for e, v in nxt.items() if not v.is_zero()}
            for e, v in nxt.items():
                out[e] = out[e] + v if e in out else v
            frontier = nxt
        return QTSeries(self.ring, self.N - F(2 * e0, self.ring.qden),
                        {e - e0: c for e, c in out.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QTSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("QTSeries is unhashable")

    def first_mismatch(self, other: "QTSeries") -> F | None:
        """Least q-exponent (up to the common cap) where coefficients differ."""
        cap = min(self.cap_units(), other.cap_units())
        for e in sorted(set(self.d) | set(other.d)):
            if e > cap:
                break
            if self.d.get(e, self.ring.zero) != other.d.get(e, self.ring.zero):
                return F(e, self.ring.qden)
        return None

    def is_zero(self) -> bool:
        return not self.d

    def __str__(self) -> str:
        if not self.d:
            return f"0 + O(q^{self.N})"
        parts = []
        for e in sorted(self.d):
            c = self.d[e]
            cs = str(c)
            if e == 0:
                parts.append(cs)
            else:
                parts.append(f"({cs}) * q^({F(e, self.ring.qden)})")
        return " + ".join(parts) + f" + O(q^>{self.N})"

    def __repr__(self) -> str:
        return f"QTSeries({self})"


# -- paired-limit facility -----------------------------------------------------


class LimitFactor:
    """One factor 1 - q^(c0 + sum_nu cs[nu]*k_nu) of a limit expression."""

    __slots__ = ("c0", "cs")

    def __init__(self, c0: F | int, cs: Sequence[F | int]) -> None:
        self.c0 = F(c0)
        self.cs = tuple(F(c) for c in cs)


def limit_at_k0(ring: ScalarRing, num: Iterable[LimitFactor],
                den: Iterable[LimitFactor]) -> QT:
    """Limit of prod(num)/prod(den) as all k_nu -> 0 along k_nu = s.

    Vanishing factors (c0 == 0) are paired between numerator and denominator
    and replaced by the ratio of their exponent linearizations; an unmatched
    vanishing factor raises ``ScalarError``.
    """
    out = ring.one
    ratio = F(1)
    n_vanish = d_vanish = 0
    for f in num:
        if f.c0 == 0:
            slope = sum(f.cs, F(0))
            if slope == 0:
                raise ScalarError("identically-one factor in limit numerator")
            ratio *= slope
            n_vanish += 1
        else:
            out = out * (ring.one - ring.q_power(f.c0))
    for f in den:
        if f.c0 == 0:
            slope = sum(f.cs, F(0))
            if slope == 0:
                raise ScalarError("identically-one factor in limit denominator")
            ratio /= slope
            d_vanish += 1
        else:
            out = out / (ring.one - ring.q_power(f.c0))
    if n_vanish != d_vanish:
        raise ScalarError("pole at specialization: unmatched vanishing factor")
    return out * ring.const(ratio)
