import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from formalcr import DivisionByZero, GaussianRational, I, ONE, ZERO, linalg
from helpers import gaussians


def to_sympy(matrix):
    return sympy.Matrix([[sympy.Rational(int(c.re.numerator), int(c.re.denominator))
                          + sympy.I * sympy.Rational(int(c.im.numerator), int(c.im.denominator))
                          for c in row] for row in matrix])


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    sparse = st.one_of(st.just(ZERO), gaussians)
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(sparse, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


@settings(max_examples=80)
@given(matrices())
def test_rank_matches_sympy(m):
    r, rows, cols = linalg.rank_profile(m)
    assert r == to_sympy(m).rank()
    for k in range(1, r + 1):
        sub = [[m[i][j] for j in cols[:k]] for i in rows[:k]]
        assert linalg.determinant(sub) != ZERO


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: matrices(st.just(n), st.just(n))))
def test_determinant_and_inverse(m):
    det = linalg.determinant(m)
    assert to_sympy([[det]])[0] == sympy.simplify(to_sympy(m).det())
    if det:
        inv = linalg.inverse(m)
        n = len(m)
        for i in range(n):
            for j in range(n):
                s = ZERO
                for k in range(n):
                    s = s + m[i][k] * inv[k][j]
                assert s == (ONE if i == j else ZERO)
    else:
        with pytest.raises(DivisionByZero):
            linalg.inverse(m)


def test_gaussian_pivot():
    assert linalg.rank([[I, ONE], [ONE, -I]]) == 1
    assert linalg.rank([[GaussianRational(0), ZERO]]) == 0


rational_rows = st.lists(st.lists(st.fractions(-4, 4, max_denominator=3), min_size=4, max_size=4),
                         min_size=1, max_size=4)


@given(rational_rows)
def test_nullspace(rows):
    basis = linalg.nullspace(rows, 4)
    assert len(basis) == 4 - linalg.rational_rank(rows, 4)
    for v in basis:
        for row in rows:
            assert sum(mpq(a) * b for a, b in zip(row, v)) == 0
    assert linalg.rational_rank(basis, 4) == len(basis)
    assert linalg.rational_rank(rows, 4) == sympy.Matrix(rows).rank()
