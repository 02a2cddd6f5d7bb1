"""Exact rational linear algebra helpers (Sylvester inertia, rank)."""

from __future__ import annotations

from fractions import Fraction

from .errors import ArgumentError

Matrix = list[list[Fraction]]


def as_fraction_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def inertia(sym) -> tuple[int, int, int]:
    """Sylvester inertia (n+, n-, n0) of a symmetric rational matrix.

    Symmetric congruence elimination; a zero pivot with a nonzero column is
    repaired by adding a lower row/column pair (valid in characteristic 0).
    """
    a = as_fraction_matrix(sym)
    n = len(a)
    for row in a:
        if len(row) != n:
            raise ArgumentError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ArgumentError("matrix must be symmetric")

    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            # prefer a congruent swap with a nonzero trailing diagonal
            swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                pivot_row = next((j for j in range(i + 1, n) if a[j][i] != 0), None)
                if pivot_row is None:
                    zero += 1
                    continue
                # all trailing diagonals vanish, so adding the row/col pair
                # makes the pivot 2*a[i][pivot_row] != 0
                for k in range(n):
                    a[i][k] += a[pivot_row][k]
                for k in range(n):
                    a[k][i] += a[k][pivot_row]
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if a[j][i] == 0:
                continue
            f = a[j][i] / d
            for k in range(i, n):
                a[j][k] -= f * a[i][k]
            for k in range(i, n):
                a[k][j] -= f * a[k][i]
    return pos, neg, zero


def rank_pivoted(matrix, tol: float = 1e-9) -> int:
    """Numerical rank by Gaussian elimination with partial pivoting."""
    import numpy as np

    a = np.array(matrix, dtype=float)
    if a.ndim != 2:
        raise ArgumentError("rank_pivoted expects a 2-d array")
    rows, cols = a.shape
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[pivot, col]) <= tol:
            continue
        a[[row, pivot]] = a[[pivot, row]]
        a[row] = a[row] / a[row, col]
        for r in range(rows):
            if r != row and a[r, col] != 0.0:
                a[r] -= a[r, col] * a[row]
        rank += 1
        row += 1
    return rank
