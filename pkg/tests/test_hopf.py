import pytest

import oracle
from lrtwist.algebra import check_algebra, tensor_algebra
from lrtwist.catalog import (dual_group_algebra, group_algebra, hit_bimodule, sign_algebra,
                             sign_bimodule, swap_ydl_candidate, sweedler_h4, ydl_instance, ydl_trivial)
from lrtwist.exactfield import QQ, Matrix
from lrtwist.hopf import (Bialgebra, BicomoduleAlgebra, BimoduleAlgebra, HopfAlgebra, YDLAlgebra,
                          build_lr_smash, check_bialgebra, check_bicomodule_algebra,
                          check_bimodule_algebra, check_hopf, check_ydl, diagonal_crossed,
                          iterated_smash, iterated_tables, regular_bicomodule, smash_maps,
                          smash_report)
from lrtwist.report import PreconditionError
from lrtwist.twisted import check_lr_suite


def smash_oracle(m: BimoduleAlgebra, h: HopfAlgebra):
    cp, _, p = oracle.lists(m.alg)
    ch, _, _ = oracle.lists(h.alg)
    return oracle.hopf_smash_table(cp, oracle.mat(m.left_action), oracle.mat(m.right_action), ch,
                                   oracle.mat(h.bialg.comult)), p


def test_group_bialgebra():
    assert check_hopf(group_algebra(2)).ok


def test_sweedler():
    h = sweedler_h4()
    rep = check_hopf(h)
    assert rep.ok and rep.get("assoc").checked == 64
    # S has order 4 on H4
    assert h.antipode @ h.antipode != Matrix.identity(QQ, 4)
    assert (h.antipode @ h.antipode) @ (h.antipode @ h.antipode) == Matrix.identity(QQ, 4)


def test_dual_group_algebra_is_hopf():
    assert check_hopf(dual_group_algebra((2, 2))).ok


def test_zero_counit_fails():
    kc2 = group_algebra(2).bialg
    rep = check_bialgebra(Bialgebra(kc2.alg, kc2.comult, (0, 0)))
    assert "counit" in rep.failed and "counit-unit" in rep.failed


def test_trivial_and_sign_bimodules():
    h = group_algebra(2)
    assert check_bimodule_algebra(BimoduleAlgebra.trivial(h, sign_algebra())).ok
    assert check_bimodule_algebra(sign_bimodule(right=False)).ok
    assert check_bimodule_algebra(sign_bimodule()).ok
    assert check_bicomodule_algebra(regular_bicomodule(h)).ok
    assert check_bicomodule_algebra(regular_bicomodule(sweedler_h4())).ok


def test_hit_bimodule_of_sweedler():
    assert check_bimodule_algebra(hit_bimodule(sweedler_h4())).ok


def test_one_sided_smash_has_identity_q():
    h = group_algebra(2)
    pair = smash_maps(sign_bimodule(right=False), regular_bicomodule(h))
    assert pair.q.map.is_identity()
    assert not pair.r.map.is_identity()
    assert check_lr_suite(pair).ok


@pytest.mark.parametrize("make", [lambda: (sign_bimodule(), group_algebra(2)),
                                  lambda: (hit_bimodule(sweedler_h4(), "H4^*"), sweedler_h4())],
                         ids=["kC2", "H4"])
def test_smash_against_direct_formula(make):
    m, h = make()
    reg = regular_bicomodule(h)
    rep = smash_report(m, reg)
    assert rep.ok
    got, _, _ = oracle.lists(build_lr_smash(m, reg))
    want, p = smash_oracle(m, h)
    assert oracle.tables_equal(got, want, p)


def test_trivial_structures_give_tensor_algebra():
    h = group_algebra(2)
    a, u = sign_algebra(), sign_algebra(label="U")
    prod = build_lr_smash(BimoduleAlgebra.trivial(h, a), BicomoduleAlgebra.trivial(h, u))
    assert prod.mult == tensor_algebra(a, u).mult


def test_ydl_examples():
    assert check_ydl(ydl_trivial()).ok
    y, _ = ydl_instance()
    assert check_ydl(y).ok
    assert check_ydl(swap_ydl_candidate()).ok
    rep = check_ydl(swap_ydl_candidate(graded=False))
    assert rep.failed == ["ydl1"]


def test_iterated_smash_trivial():
    h = group_algebra(2)
    a_cal = BimoduleAlgebra.trivial(h, sign_algebra(label="P"))
    y = ydl_trivial()
    assert iterated_smash(a_cal, y).ok
    left, right = iterated_tables(a_cal, y)
    triple = tensor_algebra(tensor_algebra(a_cal.alg, y.alg), h.alg)
    assert left.mult == right.mult == triple.mult


def test_iterated_smash_instance():
    y, a_cal = ydl_instance()
    rep = iterated_smash(a_cal, y)
    assert rep.ok
    assert rep.get("(iii)").checked == 64


def _right_swap_ydl():
    """Mirror image of the swap candidate with x graded on the right: only (ydl3) fails."""
    base = swap_ydl_candidate()
    h, alg = base.h, base.alg
    swap = {0: 0, 1: 2, 2: 1, 3: 3}
    right = Matrix.from_sparse(QQ, 4, 8, {((swap[u] if g else u), u * 2 + g): 1
                                          for g in range(2) for u in range(4)})
    rho = Matrix.from_sparse(QQ, 8, 4, {(u * 2 + (u % 2), u): 1 for u in range(4)})
    triv_m, triv_c = BimoduleAlgebra.trivial(h, alg), BicomoduleAlgebra.trivial(h, alg)
    return YDLAlgebra(h, BimoduleAlgebra(h, alg, triv_m.left_action, right),
                      BicomoduleAlgebra(h, alg, triv_c.left_coaction, rho))


def test_broken_ydl3_breaks_the_bicomodule_of_the_smash():
    y = _right_swap_ydl()
    assert check_bimodule_algebra(y.bimod).ok and check_bicomodule_algebra(y.bicomod).ok
    assert check_ydl(y).failed == ["ydl3"]
    a_cal = sign_bimodule()
    with pytest.raises(PreconditionError, match="ydl3"):
        iterated_smash(a_cal, y)
    rep = iterated_smash(a_cal, y, force=True)
    assert any(label.startswith("(ii):") for label in rep.failed)


def test_diagonal_crossed_trivial_actions():
    h = group_algebra(2)
    m = BimoduleAlgebra.trivial(h, sign_algebra())
    p, bowtie, iso, rep = diagonal_crossed(m, h)
    assert rep.ok
    assert p.map == Matrix.flip(QQ, 2, 2)


@pytest.mark.parametrize("make", [lambda: (sign_bimodule(), group_algebra(2)),
                                  lambda: (hit_bimodule(sweedler_h4()), sweedler_h4())], ids=["kC2", "H4"])
def test_diagonal_crossed_iso(make):
    m, h = make()
    p, bowtie, iso, rep = diagonal_crossed(m, h)
    assert rep.ok
    assert check_algebra(bowtie).ok


def test_diagonal_crossed_needs_inverse_antipode():
    h = sweedler_h4()
    bare = HopfAlgebra(h.bialg, h.antipode, None)
    with pytest.raises(ValueError, match="S\\^-1"):
        diagonal_crossed(hit_bimodule(h), bare)
