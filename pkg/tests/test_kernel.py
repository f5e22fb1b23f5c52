import random

from koszul._kernel import OverflowBail, echelon, echelon_py, kernel_backend

from oracles import gauss_rank, sympy_det, sympy_rank


def random_int_matrix(rng, nr, nc, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(nc)] for _ in range(nr)]


def test_backend_name():
    assert kernel_backend() in ("cython", "python")


def test_rank_matches_oracles(rng):
    for _ in range(60):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        a = random_int_matrix(rng, nr, nc)
        _, pivots, _ = echelon(a)
        assert len(pivots) == gauss_rank(a) == sympy_rank(a)


def test_both_backends_agree(rng):
    for _ in range(40):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        a = random_int_matrix(rng, nr, nc)
        assert echelon(a) == echelon_py(a)


def test_last_pivot_is_determinant(rng):
    for _ in range(40):
        n = rng.randint(1, 5)
        a = random_int_matrix(rng, n, n)
        ech, pivots, sign = echelon(a)
        want = sympy_det(a)
        if len(pivots) < n:
            assert want == 0
        else:
            assert sign * ech[n - 1][pivots[n - 1]] == want


def test_input_not_mutated():
    a = [[1, 2], [3, 4]]
    echelon(a)
    assert a == [[1, 2], [3, 4]]
    echelon_py(a)
    assert a == [[1, 2], [3, 4]]


def test_large_entries_fall_back_correctly(rng):
    # entries far beyond the compiled kernel's guard; the dispatcher must
    # still return exact answers via the big-integer path
    big = 2 ** 40
    for _ in range(10):
        n = rng.randint(2, 4)
        a = [[rng.randint(-3, 3) * big + rng.randint(-5, 5) for _ in range(n)]
             for _ in range(n)]
        _, pivots, _ = echelon(a)
        assert len(pivots) == sympy_rank(a)


def test_python_kernel_signals_no_overflow():
    # OverflowBail is an internal control-flow exception of the compiled
    # kernel only; the pure path must never raise it
    rng = random.Random(5)
    for _ in range(5):
        a = [[rng.randint(-(2 ** 50), 2 ** 50) for _ in range(3)] for _ in range(3)]
        try:
            echelon_py(a)
        except OverflowBail:  # pragma: no cover
            raise AssertionError("big-integer kernel bailed")


def test_empty_and_zero_matrices():
    assert echelon([]) == ([], [], 1)
    ech, pivots, sign = echelon([[0, 0], [0, 0]])
    assert pivots == [] and sign == 1
