from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrtwist.exactfield import (GF, QQ, FieldError, FieldMismatchError, Matrix, Scalar,
                                SingularMatrixError, field_from_tag)

PRIMES = [2, 3, 5, 7, 97]
fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


def test_rational_sum():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_gf5_inverse():
    assert GF(5).inv(2) == 3


@pytest.mark.parametrize("fld", [QQ, GF(5)])
def test_zero_has_no_inverse(fld):
    with pytest.raises(ZeroDivisionError):
        fld.inv(0)


def test_field_tags():
    assert field_from_tag("Q") is QQ or field_from_tag("Q") == QQ
    assert field_from_tag("F7") == GF(7)
    with pytest.raises(FieldError):
        field_from_tag("F4")
    with pytest.raises(FieldError):
        field_from_tag("R")


def test_scalar_field_mismatch():
    with pytest.raises(FieldMismatchError):
        GF(5)(Scalar(3, GF(7)))


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_gf_ring_axioms(p, a, b, c):
    f = GF(p)
    a, b, c = f(a), f(b), f(c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == f.zero
    if a:
        assert f.mul(a, f.inv(a)) == f.one


@given(fractions, fractions)
def test_rational_division(a, b):
    if b:
        assert QQ.mul(QQ.div(a, b), b) == a


def test_kron_of_identities():
    assert Matrix.identity(QQ, 2).kron(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)


def test_unipotent_inverse():
    assert Matrix(QQ, [[1, 1], [0, 1]]).inverse() == Matrix(QQ, [[1, -1], [0, 1]])


def test_rank_of_zero():
    assert Matrix.zeros(QQ, 2, 2).rank() == 0


def test_singular_inverse_reports_rank():
    with pytest.raises(SingularMatrixError, match="rank 1"):
        Matrix(QQ, [[1, 2], [2, 4]]).inverse()


@given(st.sampled_from([None, 3, 5]), st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_inverse_roundtrip(p, entries):
    f = QQ if p is None else GF(p)
    m = Matrix(f, [entries[0:3], entries[3:6], entries[6:9]])
    if m.rank() < 3:
        with pytest.raises(SingularMatrixError):
            m.inverse()
        return
    assert m @ m.inverse() == Matrix.identity(f, 3)
    assert m.inverse() @ m == Matrix.identity(f, 3)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_kron_mixed_product(x, y):
    a = Matrix(QQ, [x[:2], x[2:]])
    b = Matrix(QQ, [y[:2], y[2:]])
    assert a.kron(b) @ b.kron(a) == (a @ b).kron(b @ a)
    assert a.kron(b).transpose() == a.transpose().kron(b.transpose())


def test_flip_is_an_involution_on_squares():
    f = Matrix.flip(QQ, 2, 3)
    assert f.shape == (6, 6)
    assert Matrix.flip(QQ, 3, 2) @ f == Matrix.identity(QQ, 6)


def test_solve():
    a = Matrix(GF(7), [[2, 1], [1, 3]])
    rhs = Matrix(GF(7), [[1], [0]])
    x = a.solve(rhs)
    assert a @ x == rhs
