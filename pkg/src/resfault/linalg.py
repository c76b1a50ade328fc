"""Exact fraction-free linear algebra for small dense rational matrices.

Everything here works on plain lists of Fractions (or ints) and never
touches floating point.  The central routine is a Bareiss-style
Gauss-Jordan elimination: all intermediate values are integers, every
division is exact, and the pivots produced along the way are the leading
principal minors of the input.  That last fact doubles as a positive
definiteness certificate for reduced Laplacians.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Matrix = list[list[Fraction]]


class SingularMatrixError(ValueError):
    """Elimination hit a zero pivot: the matrix is not invertible."""


def _to_integer_matrix(mat) -> tuple[list[list[int]], int]:
    """Clear denominators: return (integer matrix A, scale c) with mat = A / c."""
    denoms = [x.denominator for row in mat for x in (map(Fraction, row))]
    scale = lcm(*denoms) if denoms else 1
    rows = [[int(Fraction(x) * scale) for x in row] for row in mat]
    return rows, scale


def fraction_free_invert(mat) -> tuple[list[list[int]], int, int]:
    """Invert a square rational matrix by Bareiss Gauss-Jordan elimination.

    Returns (adj, det, scale) such that mat**-1 == scale * adj / det
    entrywise.  All three parts are integers; no rounding ever occurs.

    Raises SingularMatrixError on a zero pivot (no pivoting is attempted:
    the intended inputs are reduced Laplacians, which are positive
    definite and therefore have nonzero leading principal minors).
    """
    a, scale = _to_integer_matrix(mat)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    # Augment with the identity; the right half becomes the adjugate.
    width = 2 * n
    b = [row + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    prev = 1
    for k in range(n):
        pivot = b[k][k]
        if pivot == 0:
            raise SingularMatrixError(f"zero pivot at step {k}")
        row_k = b[k]
        for i in range(n):
            if i == k:
                continue
            row_i = b[i]
            f = row_i[k]
            for j in range(width):
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
        prev = pivot
    det = b[n - 1][n - 1] if n else 1
    adj = [row[n:] for row in b]
    return adj, det, scale


def leading_principal_minors(mat) -> list[int]:
    """Pivot sequence of fraction-free elimination on the integer-scaled matrix.

    Entry k is the k-th leading principal minor of (mat * scale); all
    positive iff the matrix is positive definite.
    """
    a, _ = _to_integer_matrix(mat)
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(k, n):
                a[i][j] = (pivot * a[i][j] - f * a[k][j]) // prev
        prev = pivot
    return minors


def solve_unit_column(mat, col: int) -> list[Fraction]:
    """Solve mat @ x = e_col exactly, without forming the full inverse.

    Fraction-free forward elimination followed by rational back
    substitution; used where a single inverse column suffices.
    """
    a, scale = _to_integer_matrix(mat)
    n = len(a)
    rhs = [int(i == col) for i in range(n)]
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0:
            raise SingularMatrixError(f"zero pivot at step {k}")
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(k, n):
                a[i][j] = (pivot * a[i][j] - f * a[k][j]) // prev
            rhs[i] = (pivot * rhs[i] - f * rhs[k]) // prev
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(rhs[i])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return [xi * scale for xi in x]


def multiply(a, b) -> Matrix:
    """Plain exact matrix product, used in tests and sanity checks."""
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            row.append(sum((Fraction(a[i][k]) * b[k][j] for k in range(inner)), Fraction(0)))
        out.append(row)
    return out
