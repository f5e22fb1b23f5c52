# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 Bareiss elimination; bails out when entries approach overflow."""

from libc.stdlib cimport malloc, free

from koszul._kernel.bareiss_py import OverflowBail

# |operand| below this bound keeps a*b - c*d inside int64.
DEF GUARD = 1073741824  # 2**30


def echelon_i64(rows):
    """Same contract as echelon_py, restricted to entries that stay small.

    Raises OverflowBail when any operand of a pending multiplication has
    magnitude >= 2**30 (products then stay under 2**61, exact in int64).
    """
    cdef Py_ssize_t nr = len(rows)
    cdef Py_ssize_t nc = len(rows[0]) if nr else 0
    cdef Py_ssize_t i, j, c, r, p
    cdef long long piv, aic, prev, x
    cdef long long *a
    cdef int sign = 1

    if nr == 0 or nc == 0:
        return [list(row) for row in rows], [], 1

    a = <long long *> malloc(nr * nc * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nr):
            row = rows[i]
            for j in range(nc):
                v = row[j]
                if v >= GUARD or v <= -GUARD:
                    raise OverflowBail()
                a[i * nc + j] = v

        pivots = []
        prev = 1
        r = 0
        for c in range(nc):
            if r == nr:
                break
            p = -1
            for i in range(r, nr):
                if a[i * nc + c] != 0:
                    p = i
                    break
            if p == -1:
                continue
            if p != r:
                for j in range(nc):
                    x = a[r * nc + j]
                    a[r * nc + j] = a[p * nc + j]
                    a[p * nc + j] = x
                sign = -sign
            piv = a[r * nc + c]
            if piv >= GUARD or piv <= -GUARD:
                raise OverflowBail()
            for i in range(r + 1, nr):
                aic = a[i * nc + c]
                if aic >= GUARD or aic <= -GUARD:
                    raise OverflowBail()
                for j in range(c + 1, nc):
                    x = a[i * nc + j]
                    if x >= GUARD or x <= -GUARD:
                        raise OverflowBail()
                    x = a[r * nc + j]
                    if x >= GUARD or x <= -GUARD:
                        raise OverflowBail()
                    a[i * nc + j] = (piv * a[i * nc + j] - aic * a[r * nc + j]) // prev
                a[i * nc + c] = 0
            prev = piv
            pivots.append(c)
            r += 1

        out = [[a[i * nc + j] for j in range(nc)] for i in range(nr)]
        return out, pivots, sign
    finally:
        free(a)
