"""Exact dense linear algebra over Q(i) and Q.

Matrices are lists of rows.  Entries are :class:`GaussianRational` for the
complex routines and ``gmpy2.mpq`` (or anything coercible to it) for the real
ones.
"""

from __future__ import annotations

from math import lcm

from gmpy2 import mpq, mpz

from .errors import DivisionByZero
from .scalars import ONE, ZERO, GaussianRational

__all__ = [
    "rank_profile",
    "rank",
    "inverse",
    "determinant",
    "nullspace",
    "rref",
    "rational_rank",
]


# -- Gaussian integers as (re, im) pairs of mpz --------------------------------

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gdiv_exact(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    if re % n or im % n:
        raise ArithmeticError("inexact division in Bareiss step")
    return (re // n, im // n)


def _integral_rows(matrix) -> list:
    out = []
    for row in matrix:
        den = 1
        for c in row:
            den = lcm(den, int(c.re.denominator), int(c.im.denominator))
        out.append([(mpz(c.re * den), mpz(c.im * den)) for c in row])
    return out


def rank_profile(matrix) -> tuple:
    """Fraction-free (Bareiss) elimination with complete pivoting.

    Returns ``(r, rows, cols)`` where ``r`` is the rank and ``rows``/``cols``
    list original indices such that for every ``k <= r`` the submatrix on
    ``rows[:k]`` x ``cols[:k]`` is nonsingular.  Pivots are searched column by
    column, top to bottom, which makes the result deterministic.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = _integral_rows(matrix)
    rperm = list(range(m))
    cperm = list(range(n))
    prev = (mpz(1), mpz(0))
    r = 0
    for k in range(min(m, n)):
        pivot = None
        for j in range(k, n):
            for i in range(k, m):
                if a[i][j] != (0, 0):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        a[k], a[i] = a[i], a[k]
        rperm[k], rperm[i] = rperm[i], rperm[k]
        if j != k:
            for row in a:
                row[k], row[j] = row[j], row[k]
            cperm[k], cperm[j] = cperm[j], cperm[k]
        p = a[k][k]
        for i in range(k + 1, m):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = _gdiv_exact(_gsub(_gmul(p, a[i][j]), _gmul(aik, a[k][j])), prev)
            a[i][k] = (mpz(0), mpz(0))
        prev = p
        r = k + 1
    return r, rperm[:r], cperm[:r]


def rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return rank_profile(matrix)[0]


def determinant(matrix) -> GaussianRational:
    """Determinant of a square matrix over Q(i) by Gaussian elimination."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    det = ONE
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        p = a[k][k]
        det = det * p
        inv = p.inverse()
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def inverse(matrix) -> list:
    """Inverse of a square matrix over Q(i) by Gauss-Jordan elimination."""
    n = len(matrix)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise DivisionByZero("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inverse()
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def rref(rows, ncols: int) -> tuple:
    """Reduced row echelon form over Q; returns ``(nonzero rows, pivot columns)``."""
    a = [[mpq(x) for x in row] for row in rows if any(row)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rational_rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x in Q^ncols : A x = 0}``.

    Each basis vector has a 1 in one free column and zeros in the other free
    columns, so the basis is canonical for a given column order.
    """
    a, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivot_set):
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(v)
    return basis
