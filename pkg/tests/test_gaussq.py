from fractions import Fraction

import pytest

from flagcr.gaussq import (
    C_I,
    C_ONE,
    CMatrix,
    CNum,
    RMatrix,
    complexify_vector,
    realify_vector,
    solve_linear,
)


def test_cnum_arithmetic():
    a = CNum(Fraction(1), Fraction(2))
    b = CNum(Fraction(3), Fraction(-1))
    assert a + b == CNum(Fraction(4), Fraction(1))
    assert a * b == CNum(Fraction(5), Fraction(5))
    assert (a / b) * b == a
    assert a.conj() == CNum(Fraction(1), Fraction(-2))
    assert str(CNum(Fraction(1, 2))) == "1/2"
    with pytest.raises(ZeroDivisionError):
        a / CNum()


def test_realify_roundtrip():
    v = (CNum(Fraction(1), Fraction(2)), CNum(Fraction(-3), Fraction(0)))
    assert complexify_vector(realify_vector(v)) == v


def test_rmatrix_ops():
    a = RMatrix([[1, 0, 1], [0, 1, 1]])
    b = RMatrix([[1, 1, 2], [1, -1, 0]])
    assert a == b
    c = RMatrix([[1, 0, 0]])
    assert a.sum(c).rank() == 3
    inter = a.intersect(RMatrix([[1, 0, 1], [0, 0, 1]]))
    assert inter.rank() == 1
    assert inter.contains([1, 0, 1])
    assert not a.contains([1, 0, 0])
    assert a.contains_space(RMatrix([[1, 1, 2]]))


def test_cmatrix_complex_spans():
    v = (C_ONE, C_I)
    a = CMatrix([v])
    assert a.contains((C_I, -C_ONE))  # i * v
    assert not a.contains((C_ONE, -C_I))
    b = CMatrix([(C_ONE, -C_I)])
    assert a.intersect(b).rank() == 0


def test_solve_linear():
    rows = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]
    x = solve_linear(rows, [Fraction(5), Fraction(6)], Fraction)
    assert x == [Fraction(3, 2), Fraction(2)]
    assert solve_linear([[Fraction(1)], [Fraction(1)]], [Fraction(1), Fraction(2)], Fraction) is None
