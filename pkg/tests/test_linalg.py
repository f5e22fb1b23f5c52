from fractions import Fraction

import pytest

from koszul import linalg

from conftest import rand_fraction, rand_invertible
from oracles import gauss_nullspace, gauss_rank, sympy_det, sympy_rank


def random_matrix(rng, nr, nc):
    return [[rand_fraction(rng, -4, 4) for _ in range(nc)] for _ in range(nr)]


def test_rank_against_two_oracles(rng):
    for _ in range(50):
        a = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert linalg.rank(a) == gauss_rank(a) == sympy_rank(a)


def test_det_against_sympy(rng):
    for _ in range(40):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n)
        assert linalg.det(a) == sympy_det(a)


def test_det_of_singular_matrix_is_zero(rng):
    for _ in range(10):
        n = rng.randint(2, 4)
        a = random_matrix(rng, n - 1, n)
        # duplicate a row to force singularity
        sq = a + [list(a[0])]
        assert linalg.det(sq) == 0


def test_nullspace_is_a_basis_of_the_kernel(rng):
    for _ in range(40):
        nr, nc = rng.randint(1, 5), rng.randint(1, 6)
        a = random_matrix(rng, nr, nc)
        ns = linalg.nullspace(a, ncols=nc)
        assert len(ns) == nc - linalg.rank(a)
        for v in ns:
            for row in a:
                assert sum(x * y for x, y in zip(row, v)) == 0
        ref = gauss_nullspace(a, nc)
        if ns or ref:
            # the two kernels span the same subspace
            assert linalg.rank(list(ns) + list(ref)) == len(ns) == len(ref)


def test_rref_has_unit_pivots_and_is_idempotent(rng):
    for _ in range(20):
        a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        red, pivots = linalg.rref(a)
        for r, c in enumerate(pivots):
            assert red[r][c] == 1
            assert all(red[i][c] == 0 for i in range(len(red)) if i != r)
        red2, pivots2 = linalg.rref(red)
        assert red2 == tuple(tuple(row) for row in red) and pivots2 == pivots


def test_row_space_basis_is_canonical(rng):
    for _ in range(20):
        a = random_matrix(rng, 4, 5)
        b = [list(a[2]), list(a[0]),
             [x + y for x, y in zip(a[1], a[3])], list(a[3]), list(a[1])]
        rng.shuffle(b)
        assert linalg.row_space_basis(a) == linalg.row_space_basis(b) \
            or linalg.rank(a) != linalg.rank(b)


def test_solve_consistent_and_inconsistent(rng):
    for _ in range(30):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        a = random_matrix(rng, nr, nc)
        x0 = [rand_fraction(rng) for _ in range(nc)]
        b = [sum(r[j] * x0[j] for j in range(nc)) for r in a]
        x = linalg.solve(a, b)
        assert x is not None
        for row, bx in zip(a, b):
            assert sum(r * v for r, v in zip(row, x)) == bx
    # inconsistent: 0 = 1
    assert linalg.solve([[0, 0]], [Fraction(1)]) is None


def test_inverse_roundtrip_and_singular_rejection(rng):
    for _ in range(20):
        n = rng.randint(1, 4)
        a = rand_invertible(n, rng)
        inv = linalg.inverse(a)
        assert linalg.mat_mul(a, inv) == linalg.identity(n)
    with pytest.raises(ValueError):
        linalg.inverse([[1, 2], [2, 4]])


def test_signature_and_definiteness(rng):
    assert linalg.symmetric_signature(linalg.identity(3)) == (3, 0, 0)
    assert linalg.symmetric_signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert linalg.symmetric_signature([[0, 0], [0, 0]]) == (0, 0, 2)
    assert linalg.is_positive_definite([[2, 1], [1, 2]])
    assert not linalg.is_positive_definite([[1, 2], [2, 1]])
    for _ in range(10):
        # congruence a^T a + I is positive definite
        n = rng.randint(1, 4)
        a = random_matrix(rng, n, n)
        g = linalg.mat_add(linalg.mat_mul(linalg.transpose(a), a),
                           linalg.identity(n))
        pos, neg, zero = linalg.symmetric_signature(g)
        assert (pos, neg, zero) == (n, 0, 0)
        assert linalg.is_positive_definite(g)


def test_flatten_unflatten_roundtrip(rng):
    a = random_matrix(rng, 3, 4)
    v = linalg.flatten(a)
    assert linalg.unflatten(v, 3, 4) == tuple(tuple(r) for r in a)


def test_sym_skew_coordinates(rng):
    m = 3
    sc = linalg.sym_coords(m)
    kc = linalg.skew_coords(m)
    assert len(sc) == m * (m + 1) // 2
    assert len(kc) == m * (m - 1) // 2
    v = [rand_fraction(rng) for _ in sc]
    s = linalg.sym_from_coords(v, m)
    assert s == linalg.transpose(s)
    w = [rand_fraction(rng) for _ in kc]
    k = linalg.skew_from_coords(w, m)
    assert k == linalg.mat_scale(-1, linalg.transpose(k))


def test_frac_conversions():
    assert linalg.frac("3/4") == Fraction(3, 4)
    assert linalg.frac(2) == Fraction(2)
    assert linalg.frac(Fraction(1, 3)) == Fraction(1, 3)
