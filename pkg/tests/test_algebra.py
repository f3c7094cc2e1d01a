import pytest
from hypothesis import given, strategies as st

import oracle
from lrtwist.algebra import (Algebra, AlgebraMorphism, base_algebra, check_algebra, check_morphism,
                             is_isomorphism, multiplication_table, multiply, opposite, tensor_algebra,
                             unit_vector)
from lrtwist.catalog import broken_unit_algebra, group_algebra, sign_algebra, sweedler_h4, truncated_poly
from lrtwist.exactfield import GF, QQ, Matrix, ShapeError


def upper_triangular(field=QQ):
    """Basis E11, E12, E22 of the upper triangular 2x2 matrices."""
    units = [(0, 0), (0, 1), (1, 1)]
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i, (a, b) in enumerate(units):
        for j, (x, y) in enumerate(units):
            if b == x:
                c[i][j][units.index((a, y))] = 1
    return Algebra.from_tensor(field, c, [1, 0, 1], "T2")


ALGEBRAS = [group_algebra(2).alg, group_algebra(3).alg, truncated_poly(3), sign_algebra(),
            sweedler_h4().alg, upper_triangular(), group_algebra(4, GF(5)).alg]


def test_kc2_passes():
    assert check_algebra(group_algebra(2).alg).ok


def test_broken_unit_witness():
    rep = check_algebra(broken_unit_algebra())
    assert rep.failed == ["unit"]
    assert rep.get("unit").witness.startswith("(unit) fails at j=e1")


def test_truncated_cubic_agrees_with_bruteforce():
    a = truncated_poly(3)
    c, u, p = oracle.lists(a)
    assert oracle.associativity_failures(c, p) == [] and oracle.unit_failures(c, u, p) == []
    rep = check_algebra(a)
    assert rep.ok and rep.get("assoc").checked == 27


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label)
def test_checker_matches_oracle(alg):
    c, u, p = oracle.lists(alg)
    assert check_algebra(alg).ok == (not oracle.associativity_failures(c, p) and not oracle.unit_failures(c, u, p))


def test_multiply_examples():
    kc2 = group_algebra(2).alg
    assert multiply(kc2, unit_vector(kc2, 1), unit_vector(kc2, 1)) == unit_vector(kc2, 0)
    t2 = truncated_poly(2)
    assert multiply(t2, t2.unit, unit_vector(t2, 1)) == unit_vector(t2, 1)
    assert multiply(t2, unit_vector(t2, 1), unit_vector(t2, 1)) == (0, 0)


def test_opposite():
    t3 = truncated_poly(3)
    assert opposite(t3).mult == t3.mult
    h4 = sweedler_h4().alg
    assert opposite(opposite(h4)) == h4
    t = upper_triangular()
    op = opposite(t)
    assert check_algebra(op).ok
    c, cop = t.tensor(), op.tensor()
    assert all(cop[i][j] == c[j][i] for i in range(3) for j in range(3))
    assert op != t


def test_tensor_examples():
    kc2 = group_algebra(2).alg
    t = tensor_algebra(kc2, kc2)
    assert t.dim == 4 and check_algebra(t).ok
    h4 = sweedler_h4().alg
    assert tensor_algebra(h4, base_algebra(QQ)).mult == h4.mult
    tx, ty = truncated_poly(2), truncated_poly(2)
    xy = tensor_algebra(tx, ty)
    x1, y1 = unit_vector(xy, 2), unit_vector(xy, 1)
    assert multiply(xy, x1, y1) == multiply(xy, y1, x1) == unit_vector(xy, 3)


@given(st.sampled_from(ALGEBRAS[:6]), st.sampled_from(ALGEBRAS[:6]))
def test_tensor_matches_oracle(a, b):
    ca, _, p = oracle.lists(a)
    cb, _, _ = oracle.lists(b)
    got, _, _ = oracle.lists(tensor_algebra(a, b))
    assert oracle.tables_equal(got, oracle.tensor_table(ca, cb), p)


def test_morphisms():
    t2 = truncated_poly(2)
    ident = AlgebraMorphism.identity(t2)
    assert check_morphism(ident).ok and is_isomorphism(ident)
    zero = AlgebraMorphism(t2, t2, Matrix.zeros(QQ, 2, 2), "0")
    assert "unital" in check_morphism(zero).failed
    sign = AlgebraMorphism(t2, t2, Matrix(QQ, [[1, 0], [0, -1]]), "x↦-x")
    assert check_morphism(sign).ok and is_isomorphism(sign)
    assert check_morphism(sign).get("multiplicative").checked == 4


@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_random_endomorphisms_of_dual_numbers(v):
    # f(1) = 1, f(x) = a + b x is multiplicative iff f(x)^2 = 0, i.e. a = 0
    t2 = truncated_poly(2)
    a, b, _ = v
    f = AlgebraMorphism(t2, t2, Matrix(QQ, [[1, a], [0, b]]), "f")
    assert check_morphism(f).ok == (a == 0)


def test_shape_errors():
    with pytest.raises(ShapeError):
        Algebra(QQ, Matrix.zeros(QQ, 2, 3), [1, 0])
    with pytest.raises(ShapeError):
        Algebra.from_tensor(QQ, [[[1, 0]], [[0, 1]]], [1, 0])


def test_table_formatter_is_aligned():
    lines = multiplication_table(sweedler_h4().alg).splitlines()
    assert len(lines) == 6 and len({len(line) for line in lines}) == 1
