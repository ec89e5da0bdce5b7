"""Dense exact linear algebra over the rationals.

Matrices are numpy object arrays with ``fractions.Fraction`` (or int)
entries; numpy supplies the shape plumbing and ``@`` while the pivoting
lives here so every determinant, solve and inverse is exact.  The
determinant uses fraction-free (Bareiss) elimination, which keeps
intermediate numerators and denominators from exploding.  Everything is
sized for the small systems of the elimination machinery (m <= 8), not
for large n.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import SingularMatrixError


def fraction_matrix(rows) -> np.ndarray:
    """Object array with every entry coerced to ``Fraction``."""
    data = [[Fraction(x) for x in row] for row in rows]
    out = np.empty((len(data), len(data[0])), dtype=object)
    for i, row in enumerate(data):
        if len(row) != len(data[0]):
            raise ValueError("ragged rows")
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def fraction_vector(entries) -> np.ndarray:
    out = np.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        out[i] = Fraction(x)
    return out


def identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(i == j)
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).flat)


def mat_pow(a: np.ndarray, k: int) -> np.ndarray:
    n = a.shape[0]
    out = identity(n)
    for _ in range(k):
        out = out @ a
    return out


def det(a: np.ndarray) -> Fraction:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant needs a square matrix")
    m = [[Fraction(a[i, j]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = Fraction(1)
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev
            m[r][i] = Fraction(0)
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact solution of ``a x = b``; raises ``SingularMatrixError``."""
    n = a.shape[0]
    m = [[Fraction(a[i, j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        m[i], m[piv] = m[piv], m[i]
        inv_p = 1 / m[i][i]
        m[i] = [x * inv_p for x in m[i]]
        for r in range(n):
            if r != i and m[r][i] != 0:
                f = m[r][i]
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return fraction_vector([m[i][n] for i in range(n)])


def inv(a: np.ndarray) -> np.ndarray:
    """Exact inverse via Gauss-Jordan; raises ``SingularMatrixError``."""
    n = a.shape[0]
    m = [[Fraction(a[i, j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
         for i in range(n)]
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        m[i], m[piv] = m[piv], m[i]
        inv_p = 1 / m[i][i]
        m[i] = [x * inv_p for x in m[i]]
        for r in range(n):
            if r != i and m[r][i] != 0:
                f = m[r][i]
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return fraction_matrix([row[n:] for row in m])


def rank(a: np.ndarray) -> int:
    """Exact rank by row echelon reduction."""
    rows, cols = a.shape
    m = [[Fraction(a[i, j]) for j in range(cols)] for i in range(rows)]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def char_poly(a: np.ndarray) -> tuple:
    """Coefficients ``(c_0=1, c_1, ..., c_n)`` of ``det(lambda I - A) =
    sum_k c_k lambda^(n-k)``, computed exactly (Faddeev-LeVerrier)."""
    n = a.shape[0]
    coeffs = [Fraction(1)]
    m = identity(n)
    for k in range(1, n + 1):
        m = a @ m
        trace = sum((m[i, i] for i in range(n)), Fraction(0))
        c = -trace / k
        coeffs.append(c)
        for i in range(n):
            m[i, i] = m[i, i] + c
    return tuple(coeffs)
