"""Fraction-free integer row reduction (Bareiss), big-integer backend.

All exact rank / nullspace / determinant work in the package funnels through
`echelon_py` (or its compiled twin). One-step Bareiss keeps every intermediate
entry an integer minor of the input, so no rational arithmetic is needed until
the caller back-substitutes.
"""

from __future__ import annotations


class OverflowBail(Exception):
    """Raised by the compiled kernel when an entry leaves the safe int64 range."""


def echelon_py(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Row-echelon form of an integer matrix, fraction-free.

    Returns (echelon_rows, pivot_columns, swap_sign). Input is not mutated.
    The product of the pivot entries equals swap_sign * (leading minors chain);
    for a square full-rank input the last pivot is swap_sign * det.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nr):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, nc):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, sign
