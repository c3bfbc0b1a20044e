"""Small dense linear algebra over exact scalars, polynomials and floats."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .scalars import exact_div, is_exact, normalize


def _is_zero(x) -> bool:
    return not x


def bareiss_det(matrix: Sequence[Sequence], divide: Callable = exact_div):
    """Determinant by fraction-free (Bareiss) elimination.

    Works over any integral domain whose elements support ``+ - *`` and an
    exact division ``divide(a, b)``; used both for scalar matrices and for
    matrices of :class:`~waringsing.poly.Poly` entries.  Row swaps are made
    when a pivot vanishes.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("bareiss_det needs a square matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - lead * row_k[j]
                row_i[j] = num if prev is None else divide(num, prev)
            row_i[k] = pivot * 0
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def exact_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by Gaussian elimination over the exact field Q(i)."""
    rows = [[normalize(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        piv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = exact_div(rows[r][col], piv)
                rows[r] = [normalize(a - factor * b) for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def float_rank(matrix, rel_tol: float = 1e-9) -> int:
    arr = np.asarray(matrix, dtype=complex)
    if arr.size == 0:
        return 0
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def rank(matrix, rel_tol: float = 1e-9) -> int:
    """Exact rank when every entry is exact, SVD-threshold rank otherwise."""
    if all(is_exact(x) for row in matrix for x in row):
        return exact_rank(matrix)
    return float_rank(matrix, rel_tol)


def exact_inverse(matrix: Sequence[Sequence]) -> list[list]:
    """Gauss-Jordan inverse over Q(i); raises ``ValueError`` when singular."""
    n = len(matrix)
    aug = [[normalize(x) for x in row] + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        piv = aug[col][col]
        aug[col] = [exact_div(x, piv) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [normalize(a - factor * b) for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def inverse(matrix):
    if all(is_exact(x) for row in matrix for x in row):
        return exact_inverse(matrix)
    return np.linalg.inv(np.asarray(matrix, dtype=complex)).tolist()


def det(matrix):
    if all(is_exact(x) for row in matrix for x in row):
        return normalize(bareiss_det(matrix))
    return complex(np.linalg.det(np.asarray(matrix, dtype=complex)))
