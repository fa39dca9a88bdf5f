"""Reduced irreducible root systems, normalized so the highest root has
squared length 2, together with the coweight lattices, the (extended) affine
Weyl group as pairs (finite part, translation), length and reduced-word
machinery, and the dominance and orbit partial orders on the coweight
lattice B.

Weights are int tuples of coordinates in the basis b_1..b_n dual to the
simple roots; finite roots are kept both in simple-root coordinates (for
integral pairings with B) and as coroot coordinates in B (for the Weyl
action).  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

F = Fraction

Wt = tuple  # weight in b-coordinates
Mat = tuple  # Weyl element as a row-major int matrix acting on b-coordinates

_WEYL_ORDER = {
    "A": lambda n: _fact(n + 1),
    "B": lambda n: 2 ** n * _fact(n),
    "C": lambda n: 2 ** n * _fact(n),
    "D": lambda n: 2 ** (n - 1) * _fact(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}

_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


class RootSystemError(ValueError):
    pass


def _inner_table(type_letter: str, n: int) -> tuple[list[list[F]], list[F]]:
    """Symmetric table (alpha_i, alpha_j) and squared lengths nu_i, with
    the normalization (theta, theta) = 2."""
    t = type_letter
    if t == "A" and n >= 1:
        nus = [F(2)] * n
        adj = [(i, i + 1, F(-1)) for i in range(n - 1)]
    elif t == "B" and n >= 2:
        nus = [F(2)] * (n - 1) + [F(1)]
        adj = [(i, i + 1, F(-1)) for i in range(n - 1)]
    elif t == "C" and n >= 2:
        nus = [F(1)] * (n - 1) + [F(2)]
        adj = [(i, i + 1, F(-1, 2)) for i in range(n - 2)] + [(n - 2, n - 1, F(-1))]
    elif t == "D" and n >= 3:
        nus = [F(2)] * n
        adj = [(i, i + 1, F(-1)) for i in range(n - 2)] + [(n - 3, n - 1, F(-1))]
    elif t == "E" and n in (6, 7, 8):
        nus = [F(2)] * n
        # Bourbaki: chain 1-3-4-5-...-n with node 2 attached to node 4.
        chain = [(0, 2), (2, 3), (3, 4), (4, 5)] + [(i, i + 1) for i in range(5, n - 1)]
        adj = [(i, j, F(-1)) for i, j in chain] + [(1, 3, F(-1))]
    elif t == "F" and n == 4:
        nus = [F(2), F(2), F(1), F(1)]
        adj = [(0, 1, F(-1)), (1, 2, F(-1)), (2, 3, F(-1, 2))]
    elif t == "G" and n == 2:
        nus = [F(2), F(2, 3)]
        adj = [(0, 1, F(-1))]
    else:
        raise RootSystemError(f"invalid root system type ({type_letter},{n})")
    S = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        S[i][i] = nus[i]
    for i, j, v in adj:
        S[i][j] = S[j][i] = v
    return S, nus


def _m_index(type_letter: str, n: int, npi: int) -> int:
    if type_letter == "B":
        return 1
    if type_letter == "C":
        return 2 if n % 2 == 1 else 1
    if type_letter == "D":
        return 2 if n % 2 == 0 else 4
    if type_letter == "A" and n == 1:
        return 2  # A1 = C1
    return npi


def _mat_inv(C: Sequence[Sequence[F]]) -> list[list[F]]:
    n = len(C)
    a = [[F(C[i][j]) for j in range(n)] + [F(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pc = a[col][col]
        a[col] = [x / pc for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _mat_mul(A: Mat, B: Mat) -> Mat:
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _mat_apply(A: Mat, v: Wt) -> Wt:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in A)


@dataclass(frozen=True)
class Root:
    """A finite root: simple-root coordinates, coroot B-coordinates, length."""

    alpha: tuple          # coordinates in the alpha_i basis
    a: Wt                 # coroot alpha^vee in b-coordinates
    nu: F                 # (alpha, alpha)
    positive: bool
    hts: tuple            # per-length partial coroot heights (rho_nu, alpha^vee)

    def pair_weight(self, wt: Wt) -> int:
        """(alpha, b) for b in B; always an integer."""
        return sum(m * l for m, l in zip(self.alpha, wt))

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.alpha), tuple(-x for x in self.a),
                    self.nu, not self.positive, tuple(-h for h in self.hts))


AffRoot = tuple  # (Root, level j)


class AffineElt:
    """Element of the extended affine Weyl group as (finite w, translation b).

    The pair (w, b) acts on an x-exponent [c, zeta] by
    [c, zeta] -> [w(c), zeta - (c, b)] and on an affine root [alpha, j] by
    [alpha, j] -> [w(alpha), j - (b, alpha)].
    """

    __slots__ = ("rs", "w", "winv", "t", "_hash")

    def __init__(self, rs: "RootSystem", w: Mat, winv: Mat, t: Wt) -> None:
        self.rs = rs
        self.w = w
        self.winv = winv
        self.t = t
        self._hash = hash((w, t))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, AffineElt) and self.w == other.w
                and self.t == other.t)

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        w = _mat_mul(self.w, other.w)
        winv = _mat_mul(other.winv, self.winv)
        t = tuple(x + y for x, y in zip(other.t, _mat_apply(other.winv, self.t)))
        return AffineElt(self.rs, w, winv, t)

    def inv(self) -> "AffineElt":
        return AffineElt(self.rs, self.winv, self.w,
                         tuple(-x for x in _mat_apply(self.w, self.t)))

    def is_identity(self) -> bool:
        return self == self.rs.id_elt

    def act_weight(self, c: Wt) -> tuple[Wt, F]:
        """Image of the exponent [c, 0]: returns (w(c), affine level -(c,b))."""
        lvl = -self.rs.pair_wt_wt(c, self.t)
        return _mat_apply(self.w, c), lvl

    def act_aff_root(self, ar: AffRoot) -> AffRoot:
        root, j = ar
        return (self.rs.act_root(self.w, root), j - root.pair_weight(self.t))

    def length(self) -> int:
        return sum(self._count_root(r)[0] for r in self.rs.all_roots)

    def length_nu(self) -> dict[F, int]:
        out = {nu: 0 for nu in self.rs.nus_present}
        for r in self.rs.all_roots:
            out[r.nu] += self._count_root(r)[0]
        return out

    def _count_root(self, root: Root) -> tuple[int, int]:
        """(#Lambda-levels for this root, lowest level j0)."""
        j0 = 0 if root.positive else 1
        s = root.pair_weight(self.t)
        n = max(0, s - j0)
        wneg = not self.rs.act_root(self.w, root).positive
        if wneg and s >= j0:
            n += 1
        return n, j0

    def lambda_set(self) -> list[AffRoot]:
        """Lambda(w) = R+^a intersect w^{-1}(R-^a); its size is the length."""
        out = []
        for root in self.rs.all_roots:
            j0 = 0 if root.positive else 1
            s = root.pair_weight(self.t)
            hi = s - 1
            if not self.rs.act_root(self.w, root).positive:
                hi = s
            for j in range(j0, hi + 1):
                out.append((root, j))
        return out

    def descent(self) -> int | None:
        """A simple affine index j with w(alpha_j) negative, if any."""
        for j in range(self.rs.n + 1):
            root, lvl = self.act_aff_root(self.rs.simple_aff_root(j))
            if lvl < 0 or (lvl == 0 and not root.positive):
                return j
        return None

    def pi_word(self) -> tuple[int, list[int]]:
        """Decompose as pi_r * s_{j_1} ... s_{j_l} with a reduced word."""
        cur = self
        word: list[int] = []
        while True:
            j = cur.descent()
            if j is None:
                break
            word.append(j)
            cur = cur * self.rs.s_aff(j)
        word.reverse()
        r = self.rs.pi_index.get((cur.w, cur.t))
        if r is None:
            raise RootSystemError("length-zero remainder is not in Pi")
        return r, word

    def __repr__(self) -> str:
        return f"AffineElt(w={self.w}, t={self.t})"


class RootSystem:
    """Immutable root-system session; see the module docstring."""

    def __init__(self, type_letter: str, rank: int) -> None:
        if type_letter not in "ABCDEFG" or rank < 1 or rank > 8:
            raise RootSystemError(f"invalid root system type ({type_letter},{rank})")
        S, nus = _inner_table(type_letter, rank)
        self.type_letter = type_letter
        self.n = rank
        self.S = S
        self.nu_i = nus
        self.nus_present = tuple(sorted(set(nus), reverse=True))  # long first
        self.nu_index = {nu: i for i, nu in enumerate(self.nus_present)}
        # Cartan matrix C[i][j] = (alpha_i, alpha_j^vee); coroot a_j has
        # b-coordinates given by column j.
        self.cartan = [[2 * S[i][j] / S[j][j] for j in range(rank)] for i in range(rank)]
        if any(x.denominator != 1 for row in self.cartan for x in row):
            raise RootSystemError("non-integral Cartan matrix")
        self.cartan = [[int(x) for x in row] for row in self.cartan]
        cinv = _mat_inv(self.cartan)
        # Gram matrix of the b-basis: (b_i, b_j).
        self.gram = [[F(2, 1) / nus[i] * cinv[i][j] for j in range(rank)]
                     for i in range(rank)]
        for i in range(rank):
            for j in range(rank):
                assert self.gram[i][j] == self.gram[j][i]
        self._build_roots()
        self._build_weyl()
        self._build_pi()
        self.m = _m_index(type_letter, rank, self.npi)
        self.qden = self._session_denominator()
        self.weyl_order = _WEYL_ORDER[type_letter](rank)

    # -- construction ---------------------------------------------------------

    def _build_roots(self) -> None:
        n = self.n
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = list(simple)
        while queue:
            al = queue.pop()
            for i in range(n):
                im = self._s_alpha_coords(i, al)
                if im not in seen:
                    seen.add(im)
                    queue.append(im)
        roots = []
        for al in seen:
            nu = self._alpha_norm(al)
            acoords = self._coroot_bcoords(al, nu)
            pos = self._alpha_positive(al)
            hts = self._partial_heights(al, nu)
            roots.append(Root(al, acoords, nu, pos, hts))
        roots.sort(key=lambda r: (not r.positive, sorted(r.alpha), r.alpha))
        self.all_roots = tuple(roots)
        self.positive_roots = tuple(r for r in roots if r.positive)
        expected = _ROOT_COUNT[self.type_letter](self.n)
        if len(self.all_roots) != expected:
            raise RootSystemError("root closure produced a wrong count")
        self.root_by_a = {r.a: r for r in self.all_roots}
        theta = [r for r in self.positive_roots if r.nu == 2 and self._is_dominant_root(r)]
        assert len(theta) == 1
        self.theta = theta[0]
        assert self._alpha_norm(self.theta.alpha) == 2
        self.simple_roots = tuple(self.root_by_a[tuple(self.cartan[i][j] for i in range(n))]
                                  for j in range(n))

    def _s_alpha_coords(self, i: int, al: tuple) -> tuple:
        pair = sum(al[k] * self.cartan[k][i] for k in range(self.n))
        out = list(al)
        out[i] -= pair
        return tuple(out)

    def _alpha_norm(self, al: tuple) -> F:
        return sum(al[i] * al[j] * self.S[i][j]
                   for i in range(self.n) for j in range(self.n))

    def _alpha_positive(self, al: tuple) -> bool:
        return any(x > 0 for x in al) and all(x >= 0 for x in al)

    def _coroot_bcoords(self, al: tuple, nu: F) -> Wt:
        out = []
        for i in range(self.n):
            v = sum(F(2) / nu * al[j] * self.S[j][i] for j in range(self.n))
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    def _partial_heights(self, al: tuple, nu: F) -> tuple:
        # (rho_nu', alpha^vee) = sum over nu'-nodes of the a-basis coordinates
        # of alpha^vee; these are integers for every root.
        out = []
        for nup in self.nus_present:
            h = sum(al[j] * self.nu_i[j] / nu for j in range(self.n)
                    if self.nu_i[j] == nup)
            assert h.denominator == 1
            out.append(int(h))
        return tuple(out)

    def _is_dominant_root(self, r: Root) -> bool:
        return all(r.pair_weight(s.a) >= 0 for s in self.simple_root_candidates())

    def simple_root_candidates(self) -> Iterator[Root]:
        n = self.n
        for j in range(n):
            al = tuple(int(i == j) for i in range(n))
            nu = self.nu_i[j]
            yield Root(al, self._coroot_bcoords(al, nu), nu, True,
                       self._partial_heights(al, nu))

    def _build_weyl(self) -> None:
        n = self.n
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.id_mat = ident
        self.s_mats = []
        for i in range(n):
            ai = tuple(self.cartan[r][i] for r in range(n))
            self.s_mats.append(tuple(tuple(int(r == c) - (ai[r] if c == i else 0)
                                           for c in range(n)) for r in range(n)))
        self.id_elt = AffineElt(self, ident, ident, (0,) * n)
        self.weyl_table: dict[Mat, tuple] | None = None
        if n <= 4:
            table = {ident: ()}
            queue = [ident]
            while queue:
                m = queue.pop()
                for i in range(n):
                    m2 = _mat_mul(m, self.s_mats[i])
                    if m2 not in table:
                        table[m2] = table[m] + (i,)
                        queue.append(m2)
            self.weyl_table = table
        w0 = self.antidominant(tuple(1 for _ in range(n)))[1]
        self.w0 = w0
        assert w0.length() == len(self.positive_roots)

    def _build_pi(self) -> None:
        self.o_star = tuple(i for i in range(self.n) if self.theta.alpha[i] == 1)
        self.pi_elts: dict[int, AffineElt] = {0: self.id_elt}
        for r in self.o_star:
            br = self.fundamental_coweight(r)
            _, om, pi = self.antidominant(br)
            assert pi.length() == 0
            self.pi_elts[r + 1] = pi
        self.npi = len(self.pi_elts)
        det = _det_int(self.cartan)
        assert self.npi == det, (self.npi, det)
        self.pi_index = {(p.w, p.t): r for r, p in self.pi_elts.items()}

    def _session_denominator(self) -> int:
        d = 2 * self.m
        for i in range(self.n):
            for j in range(self.n):
                d = _lcm(d, (self.gram[i][j] / 2).denominator)
                d = _lcm(d, self.gram[i][j].denominator)
        for nu in self.nus_present:
            d = _lcm(d, (F(1) / nu).denominator)
            d = _lcm(d, (nu / 2).denominator)
        return d

    # -- basic geometry ---------------------------------------------------------

    def fundamental_coweight(self, i: int) -> Wt:
        return tuple(int(i == j) for j in range(self.n))

    def pair_wt_wt(self, a: Wt, b: Wt) -> F:
        return sum(a[i] * b[j] * self.gram[i][j]
                   for i in range(self.n) for j in range(self.n))

    def norm2(self, b: Wt) -> F:
        return self.pair_wt_wt(b, b)

    def act_root(self, w: Mat, root: Root) -> Root:
        return self.root_by_a[_mat_apply(w, root.a)]

    def weyl_act(self, w: Mat, b: Wt) -> Wt:
        return _mat_apply(w, b)

    def simple_aff_root(self, j: int) -> AffRoot:
        if j == 0:
            return (-self.theta, 1)
        return (self.simple_roots[j - 1], 0)

    def aff_root_positive(self, ar: AffRoot) -> bool:
        root, j = ar
        return j > 0 or (j == 0 and root.positive)

    # -- affine group elements ----------------------------------------------------

    def finite_elt(self, w: Mat, winv: Mat | None = None) -> AffineElt:
        if winv is None:
            winv = _mat_int_inv(w)
        return AffineElt(self, w, winv, (0,) * self.n)

    def translation(self, b: Wt) -> AffineElt:
        return AffineElt(self, self.id_mat, self.id_mat, tuple(b))

    def s_fin(self, i: int) -> AffineElt:
        m = self.s_mats[i]
        return AffineElt(self, m, m, (0,) * self.n)

    def s_aff(self, j: int) -> AffineElt:
        """Simple affine reflection; s_0 = translation(theta^vee) * s_theta."""
        if j >= 1:
            return self.s_fin(j - 1)
        th = self.theta
        sref = self._refl_mat(th)
        return AffineElt(self, sref, sref, tuple(-x for x in th.a))

    def _refl_mat(self, root: Root) -> Mat:
        n = self.n
        cols = []
        for j in range(n):
            e = tuple(int(i == j) for i in range(n))
            pair = root.pair_weight(e)
            cols.append(tuple(e[i] - pair * root.a[i] for i in range(n)))
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def s_root(self, root: Root) -> AffineElt:
        m = self._refl_mat(root)
        return AffineElt(self, m, m, (0,) * self.n)

    def word_elt(self, r: int, word: Sequence[int]) -> AffineElt:
        out = self.pi_elts[r]
        for j in word:
            out = out * self.s_aff(j)
        return out

    # -- antidominant decomposition -----------------------------------------------

    def antidominant(self, b: Wt) -> tuple[Wt, AffineElt, AffineElt]:
        """(b_-, omega_b, pi_b) with omega_b(b) = b_- of minimal length and
        pi_b = translation(b) * omega_b^{-1}."""
        c = tuple(b)
        word = []
        while True:
            i = next((i for i in range(self.n) if c[i] > 0), None)
            if i is None:
                break
            word.append(i)
            c = _mat_apply(self.s_mats[i], c)
        om = self.id_elt
        for i in word:
            om = self.s_fin(i) * om
        pi = self.translation(b) * om.inv()
        return c, om, pi

    def orbit(self, b: Wt) -> list[Wt]:
        seen = {tuple(b)}
        queue = [tuple(b)]
        while queue:
            c = queue.pop()
            for m in self.s_mats:
                c2 = _mat_apply(m, c)
                if c2 not in seen:
                    seen.add(c2)
                    queue.append(c2)
        return sorted(seen)

    # -- orders ---------------------------------------------------------------------

    def le(self, b: Wt, c: Wt) -> bool:
        """b <= c in the dominance order: c - b in A_+."""
        diff = tuple(y - x for x, y in zip(b, c))
        x = self._ainv_coords(diff)
        return x is not None and all(v >= 0 for v in x)

    def _ainv_coords(self, b: Wt) -> list[int] | None:
        x = [sum(self._cinv[i][j] * b[j] for j in range(self.n)) for i in range(self.n)]
        if any(v.denominator != 1 for v in x):
            return None
        return [int(v) for v in x]

    @property
    def _cinv(self) -> list[list[F]]:
        if not hasattr(self, "_cinv_cache"):
            self._cinv_cache = _mat_inv(self.cartan)
        return self._cinv_cache

    def preceq(self, b: Wt, c: Wt) -> bool:
        if b == c:
            return True
        bm = self.antidominant(b)[0]
        cm = self.antidominant(c)[0]
        if bm == cm:
            return self.le(b, c)
        return self.le(bm, cm)

    def compare(self, b: Wt, c: Wt) -> str:
        """One of: equal, b<c, c<b, b≺c, c≺b, incomparable-≤, incomparable-⪯.

        ``b<c`` subsumes the orbit comparison; ``b≺c`` is reported when only
        the orbit order applies (so the pair is ≤-incomparable);
        ``incomparable-≤`` when the pair is ⪯-comparable both ways is
        impossible, hence the two terminal labels.
        """
        if tuple(b) == tuple(c):
            return "equal"
        if self.le(b, c):
            return "b<c"
        if self.le(c, b):
            return "c<b"
        if self.preceq(b, c):
            return "b≺c"
        if self.preceq(c, b):
            return "c≺b"
        bm = self.antidominant(b)[0]
        cm = self.antidominant(c)[0]
        if bm == cm:
            return "incomparable-≤"
        return "incomparable-⪯"

    def sort_key(self, b: Wt):
        """Deterministic total order refining the orbit order prec."""
        bm = self.antidominant(b)[0]
        ht = self._ainv_coords(tuple(x - y for x, y in zip(b, bm)))
        assert ht is not None
        return (-self.norm2(bm), bm, sum(ht), self.antidominant(b)[1].length(), b)

    # -- derived vectors ---------------------------------------------------------

    def r_nu(self, nu: F) -> Wt:
        return tuple(1 if self.nu_i[i] == nu else 0 for i in range(self.n))

    def r_vec(self) -> Wt:
        return tuple(1 for _ in range(self.n))

    def r_k(self, kmap: Sequence[int]) -> Wt:
        out = [0] * self.n
        for idx, nu in enumerate(self.nus_present):
            for i in range(self.n):
                if self.nu_i[i] == nu:
                    out[i] += kmap[idx]
        return tuple(out)

    def rho_nu(self, nu: F) -> tuple:
        return tuple(nu / 2 if self.nu_i[i] == nu else F(0) for i in range(self.n))

    # -- Lambda_b of the spectral-normalization product ----------------------------

    def lambda_b(self, b: Wt) -> list[AffRoot]:
        """Pairs [alpha, j] entering the e -> epsilon normalization product."""
        bm = self.antidominant(b)[0]
        out = []
        for root in self.positive_roots:
            pb = root.pair_weight(b)
            pbm = root.pair_weight(bm)
            if pb > 0:
                rng = range(1, -pbm)
            elif pb < 0:
                rng = range(1, -pbm + 1)
            else:
                rng = range(0)
            for j in rng:
                out.append((root, j))
        return out

    # -- lattice enumeration -------------------------------------------------------

    def ball(self, max_norm2: F | int) -> list[Wt]:
        """All b in B with (b, b) <= max_norm2."""
        n = self.n
        bounds = []
        for i in range(n):
            # |l_i| = |(b, alpha_i)| <= sqrt((b,b) * nu_i)
            target = F(max_norm2) * self.nu_i[i]
            hi = 0
            while F((hi + 1) ** 2) <= target:
                hi += 1
            bounds.append(hi)
        out = []

        def rec(i: int, cur: list[int]):
            if i == n:
                w = tuple(cur)
                if self.norm2(w) <= max_norm2:
                    out.append(w)
                return
            for v in range(-bounds[i], bounds[i] + 1):
                cur.append(v)
                rec(i + 1, cur)
                cur.pop()

        rec(0, [])
        out.sort()
        return out

    def shells(self, max_half_norm: F | int) -> list[Wt]:
        """All b with (b, b)/2 <= max_half_norm."""
        return self.ball(2 * F(max_half_norm))

    # -- serialization ----------------------------------------------------------------

    def describe(self) -> dict:
        return {
            "type": self.type_letter,
            "rank": self.n,
            "positive_roots": [
                {"alpha": list(r.alpha), "coroot": list(r.a), "nu": str(r.nu)}
                for r in self.positive_roots
            ],
            "theta": list(self.theta.alpha),
            "gram": [[str(x) for x in row] for row in self.gram],
            "weyl_order": self.weyl_order,
            "m": self.m,
            "session_denominator": self.qden,
            "minuscule_nodes": [i + 1 for i in self.o_star],
            "index_B_over_A": self.npi,
        }

    def __repr__(self) -> str:
        return f"RootSystem({self.type_letter}{self.n})"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _det_int(C: Sequence[Sequence[int]]) -> int:
    n = len(C)
    a = [[F(x) for x in row] for row in C]
    det = F(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        pc = a[col][col]
        a[col] = [x / pc for x in a[col]]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return abs(int(det))


def _mat_int_inv(m: Mat) -> Mat:
    inv = _mat_inv([[F(x) for x in row] for row in m])
    assert all(v.denominator == 1 for row in inv for v in row)
    return tuple(tuple(int(v) for v in row) for row in inv)


def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Public constructor; validates the (type, rank) pair."""
    return RootSystem(type_letter, rank)
