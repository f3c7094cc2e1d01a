import itertools
from fractions import Fraction

import pytest

import oracle
from lrtwist.algebra import check_algebra
from lrtwist.catalog import (bicharacter_cocycle, flip_pair, gauge_cocycle, h4_cocycle,
                             h4_gauge_cocycle, hit_bimodule, sweedler_h4, truncated_poly,
                             twist_instance)
from lrtwist.exactfield import QQ, Matrix
from lrtwist.hopf import check_bialgebra, check_bimodule_algebra
from lrtwist.invariance import (Cocycle, TwistData, build_bullet_algebra, build_twisted_pair,
                                check_cocycle, check_invundtw, check_pregat, drinfeld_twist,
                                invariance_iso, invariance_suite, smash_invariance_iso,
                                specialize_from_hopf, twist_bimodule_algebra, twisted_pair_unchecked)
from lrtwist.report import PreconditionError


@pytest.fixture(scope="module")
def bichar():
    m, c = twist_instance("bichar")
    return m, c, specialize_from_hopf(m, c)


@pytest.fixture(scope="module")
def onesided():
    m, c = twist_instance("bichar-onesided")
    return m, c, specialize_from_hopf(m, c)


def dual_numbers_data():
    """Trivial data on the flip pair of two copies of k[x]/(x^2), acting through the augmentation."""
    a, b = truncated_poly(2, QQ, "A"), truncated_poly(2, QQ, "B")
    return TwistData.trivial(flip_pair(a, b), [1, 0])


def r_tilde_oracle(d: TwistData):
    """``b⊗a ↦ a_(0)_R_[0]⊗a_(0)_R_[1] b_R a_(1)`` as an explicit product of Kronecker factors."""
    na, nb = d.a.dim, d.b.dim
    ia, ib = oracle.identity(na), oracle.identity(nb)
    mb = oracle.mat(d.b.mult)
    steps = [
        oracle.kron(ib, oracle.mat(d.rho_r)),                          # b a -> b a b
        oracle.kron(oracle.mat(d.pair.r.map), ib),                     # -> a b b
        oracle.kron(oracle.mat(d.lambda_r), oracle.identity(nb * nb)),  # -> a b b b
        oracle.kron(ia, oracle.kron(mb, ib)),                           # -> a b b
        oracle.kron(ia, mb),                                            # -> a b
    ]
    out = steps[0]
    for s in steps[1:]:
        out = oracle.matmul(s, out)
    return out


# -- cocycles and the Drinfeld twist -------------------------------------------------


def test_trivial_cocycle_passes():
    assert check_cocycle(Cocycle.trivial(sweedler_h4())).ok


def test_bicharacter_cocycle_passes():
    _, c = bicharacter_cocycle()
    rep = check_cocycle(c)
    assert rep.ok and rep.failed == []


def test_scaled_cocycle_fails_counit():
    h = sweedler_h4()
    one = Cocycle.trivial(h).f
    bad = Cocycle(h.bialg, tuple(2 * x for x in one), tuple(x / 2 for x in one))
    rep = check_cocycle(bad)
    assert rep.failed == ["counit"]
    assert rep.get("counit").witness == "(counit) fails: lhs = 2*h0, rhs = h0"


def test_uninverted_cocycle_fails_inverse():
    h, c = h4_cocycle()
    assert "inverse" in check_cocycle(Cocycle(c.h, c.f, c.f)).failed


def test_trivial_twist_leaves_comultiplication():
    h = sweedler_h4()
    assert drinfeld_twist(h, Cocycle.trivial(h)).comult == h.bialg.comult


def _conjugated_comult(h, c):
    ch, _, p = oracle.lists(h.alg)
    hh = oracle.tensor_table(ch, ch)
    delta = oracle.mat(h.bialg.comult)
    d = h.dim
    cols = []
    for k in range(d):
        col = [delta[r][k] for r in range(d * d)]
        cols.append(oracle.mul_vec(hh, oracle.mul_vec(hh, list(c.f), col), list(c.f_inv)))
    return [[cols[k][r] for k in range(d)] for r in range(d * d)], p


@pytest.mark.parametrize("make", [bicharacter_cocycle, h4_cocycle, h4_gauge_cocycle],
                         ids=["bichar", "H4", "H4-gauge"])
def test_drinfeld_twist_matches_conjugation(make):
    h, c = make()
    hf = drinfeld_twist(h, c)
    assert check_bialgebra(hf).ok
    want, p = _conjugated_comult(h, c)
    assert oracle.mats_equal(oracle.mat(hf.comult), want, p)


def test_which_twists_change_the_comultiplication():
    # k^(C2×C2) is commutative, so conjugation by F is invisible there
    h, c = bicharacter_cocycle()
    assert drinfeld_twist(h, c).comult == h.bialg.comult
    # 1⊗1 + gx⊗x commutes with Δ(g) and Δ(x) because x^2 = 0
    h, c = h4_cocycle()
    assert drinfeld_twist(h, c).comult == h.bialg.comult
    h, c = h4_gauge_cocycle()
    assert drinfeld_twist(h, c).comult != h.bialg.comult


def test_gauge_cocycle_needs_unit_counit():
    h = sweedler_h4()
    # (ε⊗id)(u⊗u)Δ(u^-1) = ε(u)·1, so u = 2 breaks the counit condition only
    c = gauge_cocycle(h, (2, 0, 0, 0), (Fraction(1, 2), 0, 0, 0))
    assert check_cocycle(c).failed == ["counit"]
    with pytest.raises(ValueError, match="inverse"):
        gauge_cocycle(h, (1, 0, 1, 0), (1, 0, 1, 0))


# -- twisted bimodule algebras and the smash invariance map ---------------------------


def test_trivial_cocycle_keeps_multiplication():
    m = hit_bimodule(sweedler_h4())
    assert twist_bimodule_algebra(m, Cocycle.trivial(m.h)).alg.mult == m.alg.mult


@pytest.mark.parametrize("which", ["bichar", "bichar-onesided", "H4", "H4-gauge"])
def test_bullet_table_against_oracle(which):
    m, c = twist_instance(which)
    tm = twist_bimodule_algebra(m, c)
    assert check_algebra(tm.alg).ok
    assert check_bimodule_algebra(tm).ok
    cp, _, p = oracle.lists(m.alg)
    want = oracle.bullet_table(cp, oracle.mat(m.left_action), oracle.mat(m.right_action),
                               list(c.f), list(c.f_inv), m.h.dim)
    got, _, _ = oracle.lists(tm.alg)
    assert oracle.tables_equal(got, want, p)


def test_which_hit_twists_change_the_product():
    # on a group algebra the two-sided hit twist multiplies by χ(g,g')^-1 χ(g,g') = 1
    m, c = twist_instance("bichar")
    assert twist_bimodule_algebra(m, c).alg.mult == m.alg.mult
    m, c = twist_instance("bichar-onesided")
    assert twist_bimodule_algebra(m, c).alg.mult != m.alg.mult


def test_smash_iso_trivial_cocycle_is_identity():
    m = hit_bimodule(sweedler_h4())
    iso, rep = smash_invariance_iso(m, Cocycle.trivial(m.h))
    assert rep.ok
    assert iso.matrix.is_identity()


@pytest.mark.parametrize("which", ["bichar", "H4", "H4-gauge"])
def test_smash_iso(which):
    m, c = twist_instance(which)
    iso, rep = smash_invariance_iso(m, c)
    assert rep.ok
    assert rep.get("multiplicative").checked == 16 * 16


def test_uninverted_smash_iso_breaks_multiplicativity():
    m, c = twist_instance("H4")
    _, rep = smash_invariance_iso(m, c, inverse=c.f)
    assert "multiplicative" in rep.failed
    assert rep.get("multiplicative").witness.startswith("(multiplicative) fails at x=e8, y=e9")


# -- general twist data ----------------------------------------------------------------


def test_trivial_data_collapses():
    d = dual_numbers_data()
    assert check_pregat(d).ok and check_invundtw(d).ok
    assert build_bullet_algebra(d).mult == d.a.mult
    pair, rep = build_twisted_pair(d)
    assert rep.ok
    assert pair.r.map == d.pair.r.map and pair.q.map == d.pair.q.map
    iso, iso_rep = invariance_iso(d)
    assert iso_rep.ok and iso.matrix.is_identity()


def test_twist_data_shapes_are_validated():
    d = dual_numbers_data()
    with pytest.raises(Exception, match="rho_r"):
        d.replace(rho_r=Matrix.identity(QQ, 2))


def test_broken_sup4():
    d = dual_numbers_data()
    rho_r = d.rho_r.to_lists()
    rho_l = d.rho_l.to_lists()
    rho_r[1][1] = 1  # ρ_r(x) = x⊗1 + 1⊗y
    rho_l[3][1] = 1  # ρ_l(x) = 1⊗x + y⊗x
    rep = check_pregat(d.replace(rho_r=Matrix(QQ, rho_r), rho_l=Matrix(QQ, rho_l)))
    assert rep.failed == ["sup2", "sup4"]
    # (ρ_l⊗id)ρ_r(x) = 1⊗1⊗y + 1⊗x⊗1 + y⊗x⊗1, (id⊗ρ_r)ρ_l(x) adds y⊗1⊗y
    assert rep.get("sup4").witness == ("(sup4) fails at a=e1: lhs = f0⊗e0⊗f1 + f0⊗e1⊗f0 + f1⊗e1⊗f0, "
                                       "rhs = f0⊗e0⊗f1 + f0⊗e1⊗f0 + f1⊗e0⊗f1 + f1⊗e1⊗f0")


def test_bullet_algebra_refuses_broken_data():
    d = dual_numbers_data()
    rho_l = d.rho_l.to_lists()
    rho_l[3][1] = 1
    rho_r = d.rho_r.to_lists()
    rho_r[1][1] = 1
    bad = d.replace(rho_r=Matrix(QQ, rho_r), rho_l=Matrix(QQ, rho_l))
    with pytest.raises(PreconditionError, match="sup2") as err:
        build_bullet_algebra(bad)
    assert err.value.report.failed == ["sup2", "sup4"]
    assert "FORCED" in build_bullet_algebra(bad, force=True).label


def test_specialization_passes(bichar):
    m, c, d = bichar
    assert check_pregat(d).ok
    rep = check_invundtw(d)
    assert rep.ok
    assert len(rep.results) == 18


def test_specialization_bullet_equals_twisted_bimodule(bichar):
    m, c, d = bichar
    assert build_bullet_algebra(d).mult == twist_bimodule_algebra(m, c).alg.mult


def test_lambda_l_from_lambda_r_fails_extra2(bichar):
    _, _, d = bichar
    swapped = Matrix.flip(QQ, d.a.dim, d.b.dim) @ d.lambda_r
    rep = check_invundtw(d.replace(lambda_l=swapped))
    assert "extra2" in rep.failed
    assert rep.get("lr-rr").passed and rep.get("rr-lr").passed


@pytest.mark.parametrize("name", ["bichar", "onesided"])
def test_r_tilde_against_oracle(name, bichar, onesided):
    _, _, d = bichar if name == "bichar" else onesided
    pair = twisted_pair_unchecked(d)
    assert oracle.mats_equal(oracle.mat(pair.r.map), r_tilde_oracle(d), None)


def test_classical_case_keeps_q_identity(onesided):
    m, c, d = onesided
    assert d.pair.q.map.is_identity()
    assert d.rho_l == d.lambda_l
    pair, rep = build_twisted_pair(d)
    assert rep.ok
    assert pair.q.map.is_identity()
    # with a trivial right action the ∙ product is (G^1·a)(G^2·a')
    cp, _, p = oracle.lists(m.alg)
    n, dh = m.alg.dim, m.h.dim
    left = oracle.mat(m.left_action)
    want = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        for a, b in itertools.product(range(dh), repeat=2):
            g = c.f_inv[a * dh + b]
            if g == 0:
                continue
            x = [left[y][a * n + i] for y in range(n)]
            y_ = [left[y][b * n + j] for y in range(n)]
            for k, v in enumerate(oracle.mul_vec(cp, x, y_)):
                want[i][j][k] += g * v
    got, _, _ = oracle.lists(pair.a)
    assert oracle.tables_equal(got, want, p)


@pytest.mark.parametrize("which", ["bichar", "H4", "H4-gauge"])
def test_invariance_iso_agrees_with_smash_iso(which):
    m, c = twist_instance(which)
    d = specialize_from_hopf(m, c)
    iso, rep = invariance_iso(d)
    assert rep.ok and rep.get("inverse").passed
    smash_iso, _ = smash_invariance_iso(m, c)
    assert iso.matrix == smash_iso.matrix


def test_trivial_cocycle_specializes_to_trivial_legs():
    m = hit_bimodule(sweedler_h4())
    d = specialize_from_hopf(m, Cocycle.trivial(m.h))
    n = m.alg.dim
    one_h = Matrix(QQ, [[u] for u in m.h.alg.unit])
    ident = Matrix.identity(QQ, n)
    assert d.rho_r == d.lambda_r == ident.kron(one_h)
    assert d.rho_l == d.lambda_l == one_h.kron(ident)
    assert check_pregat(d).ok and check_invundtw(d).ok


def test_full_pipeline():
    m, c = twist_instance("bichar")
    rep = invariance_suite(m, c)
    assert rep.ok, str(rep)
    assert "iso=smash-iso" in rep
