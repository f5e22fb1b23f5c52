"""Exact rational linear algebra on small dense matrices.

Matrices are sequences of rows of `fractions.Fraction`. Rank, echelon and
nullspace computations scale each row to integers (preserving row space and
kernel) and run the fraction-free integer kernel; only the final
back-substitution happens in rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from koszul._kernel import echelon

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def frac(x) -> Fraction:
    """Coerce int / str 'p/q' / Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def mat(rows) -> Mat:
    return tuple(tuple(frac(x) for x in row) for row in rows)


def zeros(nr: int, nc: int) -> Mat:
    z = Fraction(0)
    return tuple(tuple(z for _ in range(nc)) for _ in range(nr))


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def transpose(a) -> Mat:
    return tuple(zip(*[tuple(r) for r in a])) if a else ()


def mat_add(a, b) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a) -> Mat:
    c = frac(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b) -> Mat:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a, v) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u, v) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v) -> Vec:
    c = frac(c)
    return tuple(c * x for x in v)


def is_zero_matrix(a) -> bool:
    return all(x == 0 for row in a for x in row)


def commutator(a, b) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def _to_int_rows(rows) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the LCM of its denominators; returns (rows, scales)."""
    out: list[list[int]] = []
    scales: list[int] = []
    for row in rows:
        fr = [frac(x) for x in row]
        m = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * m) for f in fr])
        scales.append(m)
    return out, scales


def rank(rows) -> int:
    rows = [r for r in rows]
    if not rows or not rows[0]:
        return 0
    int_rows, _ = _to_int_rows(rows)
    _, pivots, _ = echelon(int_rows)
    return len(pivots)


def det(a) -> Fraction:
    """Determinant of a square matrix."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    int_rows, scales = _to_int_rows(a)
    ech, pivots, sign = echelon(int_rows)
    if len(pivots) < n:
        return Fraction(0)
    d = Fraction(sign)
    # One-step Bareiss leaves the k-th pivot equal to the k-th leading minor
    # (of the row-swapped matrix), so the last pivot is the determinant.
    d *= ech[n - 1][pivots[n - 1]]
    for s in scales:
        d /= s
    return d


def rref(rows) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row-echelon form with unit pivots; returns (rref, pivot_cols)."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return (), ()
    int_rows, _ = _to_int_rows(rows)
    ech, pivots, _ = echelon(int_rows)
    nred = len(pivots)
    work = [[Fraction(x) for x in ech[i]] for i in range(nred)]
    for i in range(nred):
        piv = work[i][pivots[i]]
        work[i] = [x / piv for x in work[i]]
    for i in range(nred - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = work[k][c]
            if f:
                work[k] = [x - f * y for x, y in zip(work[k], work[i])]
    return tuple(tuple(r) for r in work), tuple(pivots)


def nullspace(rows, ncols: int | None = None) -> tuple[Vec, ...]:
    """Basis of {x : rows @ x = 0}; canonical (one free variable set to 1)."""
    rows = [r for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    if ncols == 0:
        return ()
    if not rows:
        return tuple(
            tuple(Fraction(1 if j == i else 0) for j in range(ncols))
            for i in range(ncols)
        )
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def row_space_basis(rows) -> tuple[Vec, ...]:
    red, pivots = rref(rows)
    return tuple(red[i] for i in range(len(pivots)))


def column_space_basis(a) -> tuple[Vec, ...]:
    """Basis of the column space: the original columns at the pivot positions."""
    _, pivots = rref(a)
    cols = transpose(a)
    return tuple(cols[c] for c in pivots)


def solve(a, b) -> Vec | None:
    """One solution x of a @ x = b, or None when inconsistent."""
    nc = len(a[0]) if a else 0
    aug = [list(row) + [frac(bx)] for row, bx in zip(a, b)]
    red, pivots = rref(aug)
    if nc in pivots:
        return None
    x = [Fraction(0)] * nc
    for r, pc in enumerate(pivots):
        x[pc] = red[r][nc]
    return tuple(x)


def inverse(a) -> Mat:
    n = len(a)
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if list(pivots[:n]) != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def symmetric_signature(g) -> tuple[int, int, int]:
    """(n_pos, n_neg, n_zero) of a symmetric matrix by congruence reduction."""
    n = len(g)
    a = [[frac(x) for x in row] for row in g]
    pos = neg = 0
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    continue
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            f = a[j][i] / d
            if f:
                for c in range(n):
                    a[j][c] -= f * a[i][c]
                for r in range(n):
                    a[r][j] -= f * a[r][i]
    return pos, neg, n - pos - neg


def is_positive_definite(g) -> bool:
    """Sylvester's criterion on a symmetric matrix."""
    n = len(g)
    for k in range(1, n + 1):
        minor = tuple(tuple(g[i][j] for j in range(k)) for i in range(k))
        if det(minor) <= 0:
            return False
    return True


def flatten(a) -> Vec:
    return tuple(x for row in a for x in row)


def unflatten(v, nr: int, nc: int) -> Mat:
    return tuple(tuple(v[i * nc + j] for j in range(nc)) for i in range(nr))


def sym_coords(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i, m)]


def skew_coords(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def sym_from_coords(v, m: int) -> Mat:
    g = [[Fraction(0)] * m for _ in range(m)]
    for (i, j), x in zip(sym_coords(m), v):
        g[i][j] = x
        g[j][i] = x
    return tuple(tuple(row) for row in g)


def skew_from_coords(v, m: int) -> Mat:
    g = [[Fraction(0)] * m for _ in range(m)]
    for (i, j), x in zip(skew_coords(m), v):
        g[i][j] = x
        g[j][i] = -x
    return tuple(tuple(row) for row in g)
