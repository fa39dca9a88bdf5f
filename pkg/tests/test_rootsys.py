"""Root systems, lattices, affine Weyl machinery, orders."""

import itertools
from fractions import Fraction as F

import pytest

from qmm.rootsys import RootSystemError, build_root_system


def test_a1_data(a1):
    assert len(a1.positive_roots) == 1
    assert a1.theta.alpha == (1,)
    assert a1.weyl_order == 2
    assert a1.m == 2
    assert a1.npi == 2  # |B/A|


def test_g2_data(g2):
    assert len(g2.positive_roots) == 6
    shorts = [r for r in g2.positive_roots if r.nu == F(2, 3)]
    assert len(shorts) == 3
    # q_short = q^{2/nu} = q^3
    assert F(2) / shorts[0].nu == 3
    assert g2.m == 1


def test_b2_data(b2):
    nus = sorted({r.nu for r in b2.positive_roots})
    assert nus == [1, 2]
    assert b2.m == 1


def test_theta_norm_all_types():
    for t, n in [("A", 1), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4),
                 ("F", 4), ("G", 2)]:
        rs = build_root_system(t, n)
        assert rs.norm2(rs.theta.a) == 2  # theta long: a = theta
        for r in rs.positive_roots:
            assert F(2) / r.nu in (1, 2, 3)


def test_coweight_pairing_identity(b2):
    for i in range(2):
        for j in range(2):
            bi = b2.fundamental_coweight(i)
            assert b2.simple_roots[j].pair_weight(bi) == int(i == j)


def test_invalid_type():
    with pytest.raises(RootSystemError):
        build_root_system("G", 3)
    with pytest.raises(RootSystemError):
        build_root_system("H", 2)


def test_antidominant_a1(a1):
    bm, om, pi = a1.antidominant((0,))
    assert bm == (0,) and om.is_identity() and pi.is_identity()
    bm, om, pi = a1.antidominant((1,))
    assert bm == (-1,) and om.length() == 1 and pi.length() == 0


def test_antidominant_oracle_a2(a2):
    # Oracle: exhaustive orbit search over the full Weyl table.
    for b in a2.ball(6):
        bm, om, _ = a2.antidominant(b)
        best = min(a2.orbit(b))
        # the antidominant representative is the unique orbit member with
        # all coordinates <= 0
        anti = [c for c in a2.orbit(b) if all(x <= 0 for x in c)]
        assert anti == [bm]
        lengths = [a2.finite_elt(m).length() for m in a2.weyl_table
                   if a2.weyl_act(m, b) == bm]
        assert om.length() == min(lengths)


def test_antidominant_idempotent(a2):
    for b in a2.ball(4):
        bm, _, _ = a2.antidominant(b)
        bm2, om2, _ = a2.antidominant(bm)
        assert bm2 == bm and om2.is_identity()


def test_orders_a1(a1):
    assert a1.compare((-2,), (0,)) == "b<c"
    assert a1.compare((-1,), (1,)) == "b<c"  # same orbit, a_1 = 2 b_1 apart
    assert a1.preceq((-1,), (1,))
    assert a1.compare((0,), (-1,)) == "incomparable-⪯"


def test_order_strictness(a1, a2):
    for rs in (a1, a2):
        ball = rs.ball(4)
        for b in ball:
            assert rs.preceq(b, b)
            for c in ball:
                if b != c and rs.preceq(b, c):
                    assert not rs.preceq(c, b)
        # transitivity on a sample
        for b, c, d in itertools.islice(itertools.product(ball, repeat=3), 4000):
            if rs.preceq(b, c) and rs.preceq(c, d):
                assert rs.preceq(b, d)


def test_orbit_norm_monotonicity(a2, b2):
    for rs in (a2, b2):
        ball = rs.ball(6)
        for b in ball:
            for c in ball:
                bm = rs.antidominant(b)[0]
                cm = rs.antidominant(c)[0]
                if bm != cm and rs.le(bm, cm):
                    assert rs.norm2(cm) < rs.norm2(bm)


def test_sort_key_refines_preceq(a2):
    ball = a2.ball(4)
    for b in ball:
        for c in ball:
            if b != c and a2.preceq(b, c):
                assert a2.sort_key(b) < a2.sort_key(c)


def test_translation_length_a1(a1):
    assert a1.translation((1,)).length() == 1
    assert a1.translation((2,)).length() == 2
    r, word = a1.translation((1,)).pi_word()
    assert r == 1 and word == [1]
    r, word = a1.translation((2,)).pi_word()
    assert (r, word) == (0, [0, 1])


def test_word_reduction_a1(a1):
    s0, s1 = a1.s_aff(0), a1.s_aff(1)
    w = s0 * s1 * s0 * s0
    assert w.length() == 2
    r, word = w.pi_word()
    assert a1.word_elt(r, word) == w
    assert len(word) == 2


def test_identity_word(a1):
    assert a1.id_elt.pi_word() == (0, [])
    assert a1.id_elt.length() == 0


def test_lambda_set_matches_length(a2):
    elts = [a2.s_aff(0), a2.s_aff(1) * a2.s_aff(0), a2.translation((1, 0)),
            a2.translation((1, 1)), a2.pi_elts[1] * a2.s_aff(2)]
    for w in elts:
        assert len(w.lambda_set()) == w.length()


def test_lambda_set_image_tracking_oracle(a1):
    # Oracle: direct image tracking along a reduced word.
    tr = a1.translation((2,))
    lam = set()
    r, word = tr.pi_word()
    cur = a1.id_elt
    for j in reversed(word):
        ar = cur.act_aff_root(a1.simple_aff_root(j))
        lam.add((ar[0].alpha, ar[0].positive, ar[1]))
        cur = a1.s_aff(j) * cur
    got = {(r.alpha, r.positive, j) for r, j in tr.lambda_set()}
    assert got == lam


def test_lambda_b(a1):
    assert a1.lambda_b((0,)) == []
    lb = a1.lambda_b((-1,))
    assert [(r.alpha, j) for r, j in lb] == [((1,), 1)]
    assert a1.lambda_b((1,)) == []


def test_r_vectors(a1, a2, b2):
    assert a1.r_vec() == (1,)
    assert a1.r_k([3]) == (3,)
    assert a2.r_k([2]) == (2, 2)
    # B2: long nodes first in nus_present
    rk = b2.r_k([1, 2])
    long_nodes = [i for i in range(2) if b2.nu_i[i] == 2]
    short_nodes = [i for i in range(2) if b2.nu_i[i] == 1]
    for i in long_nodes:
        assert rk[i] == 1
    for i in short_nodes:
        assert rk[i] == 2
    # rho_nu = (nu/2) r_nu
    assert b2.rho_nu(F(2)) == tuple(F(x) for x in b2.r_nu(F(2)))


def test_reflection_conjugation(a2):
    # s_{w(alpha)} = w s_alpha w^{-1}
    for m in list(a2.weyl_table)[:6]:
        w = a2.finite_elt(m)
        for root in a2.positive_roots:
            im = a2.act_root(m, root)
            lhs = a2.s_root(im if im.positive else -im)
            rhs = w * a2.s_root(root) * w.inv()
            assert lhs == rhs


def test_length_subadditive(a2):
    elts = [a2.s_aff(j) for j in range(3)] + [a2.translation((1, 0))]
    for x in elts:
        for y in elts:
            assert (x * y).length() <= x.length() + y.length()


def test_pi_permutes_simple_affine_roots(a2):
    for r, pi in a2.pi_elts.items():
        if r == 0:
            continue
        images = set()
        for j in range(3):
            root, lvl = pi.act_aff_root(a2.simple_aff_root(j))
            assert (lvl in (0, 1))
            images.add((root.alpha, lvl))
        assert len(images) == 3


def test_ball_enumeration(a1, a2):
    assert set(a1.ball(2)) == {(-2,), (-1,), (0,), (1,), (2,)}
    for b in a2.ball(4):
        assert a2.norm2(b) <= 4


def test_describe_json(b2):
    doc = b2.describe()
    assert doc["weyl_order"] == 8
    assert doc["index_B_over_A"] == 2
    assert len(doc["positive_roots"]) == 4
