import random
from fractions import Fraction

import pytest

from koszul import linalg
from koszul.algebra import (
    BilinearProduct,
    LieAlgebra,
    abelian,
    conjugate_lie,
    conjugate_product,
    product_from_sparse,
    zero_product,
)
from koszul.catalog import aff1, heisenberg, heisenberg_kv, sl2, so3
from koszul.connections import InvariantConnection
from koszul.flatmodels import affine_algebra
from koszul.forms import BilinearForm


def rand_fraction(rng, lo=-2, hi=2):
    return Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2)))


def rand_invertible(m, rng):
    while True:
        p = [[rand_fraction(rng) for _ in range(m)] for _ in range(m)]
        if linalg.rank(p) == m:
            return linalg.mat(p)


def direct_sum_lie(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    m, n = a.dim, b.dim
    c = [[[Fraction(0)] * (m + n) for _ in range(m + n)] for _ in range(m + n)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                c[i][j][k] = a.c[i][j][k]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[m + i][m + j][m + k] = b.c[i][j][k]
    return LieAlgebra(m + n, tuple(tuple(tuple(r) for r in pl) for pl in c))


def lie_pool(max_dim=4):
    pool = [abelian(1), abelian(2), abelian(3), abelian(4),
            heisenberg(), so3(), sl2(), aff1(),
            direct_sum_lie(so3(), abelian(1)),
            direct_sum_lie(aff1(), aff1()),
            direct_sum_lie(heisenberg(), abelian(1))]
    return [L for L in pool if L.dim <= max_dim]


def random_lie(rng, max_dim=4):
    base = rng.choice(lie_pool(max_dim))
    return conjugate_lie(base, rand_invertible(base.dim, rng))


def random_torsion_free(L: LieAlgebra, rng) -> InvariantConnection:
    """Half the bracket plus a random (i,j)-symmetric part: torsion cancels."""
    m = L.dim
    half = Fraction(1, 2)
    s = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            for k in range(m):
                v = rand_fraction(rng)
                s[i][j][k] = v
                s[j][i][k] = v
    table = tuple(
        tuple(tuple(half * L.c[i][j][k] + s[i][j][k] for k in range(m))
              for j in range(m)) for i in range(m))
    return InvariantConnection(L, BilinearProduct(m, table))


def random_metric(m, rng) -> BilinearForm:
    while True:
        e = [[rand_fraction(rng) for _ in range(m)] for _ in range(m)]
        g = [[e[i][j] + e[j][i] + (3 if i == j else 0) for j in range(m)]
             for i in range(m)]
        b = BilinearForm(m, linalg.mat(g), "symmetric")
        if b.is_nondegenerate:
            return b


# dim <= 3 pools of admissible products for the cohomology complexes

def kv_pool():
    return [zero_product(1), zero_product(2), zero_product(3),
            product_from_sparse(1, [(0, 0, 0, 1)]),
            affine_algebra(1).product,
            # left-symmetric but not associative: e1·e0 = e0 alone
            product_from_sparse(2, [(1, 0, 0, 1)]),
            heisenberg_kv()]


def truncated_poly(n: int) -> BilinearProduct:
    """k[t]/t^n in the basis 1, t, ..., t^{n-1}."""
    entries = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    return product_from_sparse(n, entries)


def assoc_pool():
    return [zero_product(1), zero_product(2), zero_product(3),
            truncated_poly(2), truncated_poly(3),
            product_from_sparse(1, [(0, 0, 0, 1)]),
            affine_algebra(1).product]


def random_kv(rng):
    base = rng.choice(kv_pool())
    return conjugate_product(base, rand_invertible(base.dim, rng))


def random_associative(rng):
    base = rng.choice(assoc_pool())
    return conjugate_product(base, rand_invertible(base.dim, rng))


@pytest.fixture
def rng():
    return random.Random(20260814)
