"""Finite-dimensional algebras over the rationals and their defect tensors.

A bilinear product is stored as a rank-3 table gamma[i][j][k]: the e_k
coefficient of e_i·e_j. A Lie algebra stores its bracket the same way and
validates antisymmetry and Jacobi at construction. Defect tensors (Jacobi,
associator, left-symmetry anomaly) are exact; "zero" means every entry is
the zero rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct

from koszul import linalg
from koszul.errors import JacobiViolation, ValidationError
from koszul.linalg import Mat, Vec, frac

Table3 = tuple[tuple[Vec, ...], ...]


def table3(entries) -> Table3:
    return tuple(tuple(tuple(frac(x) for x in row) for row in plane)
                 for plane in entries)


def zero_table3(m: int) -> Table3:
    z = Fraction(0)
    return tuple(tuple(tuple(z for _ in range(m)) for _ in range(m))
                 for _ in range(m))


def _walk(entries, prefix):
    if isinstance(entries, Fraction):
        yield prefix, entries
        return
    for i, sub in enumerate(entries):
        yield from _walk(sub, prefix + (i,))


@dataclass(frozen=True)
class DefectTensor:
    """Nested rational coefficient table (rank 3 or 4) measuring a failure."""

    entries: tuple

    def items(self):
        yield from _walk(self.entries, ())

    def max_abs(self) -> Fraction:
        return max((abs(v) for _, v in self.items()), default=Fraction(0))

    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.items())

    def first_nonzero(self):
        """(multi_index, value) of the first nonzero entry, or None."""
        for idx, v in self.items():
            if v != 0:
                return idx, v
        return None


@dataclass(frozen=True)
class BilinearProduct:
    """General bilinear product e_i·e_j = sum_k gamma[i][j][k] e_k."""

    dim: int
    gamma: Table3

    def __post_init__(self):
        m = self.dim
        if len(self.gamma) != m or any(
                len(p) != m or any(len(r) != m for r in p) for p in self.gamma):
            raise ValidationError("product table shape does not match dim")

    def mult(self, u, v) -> Vec:
        m = self.dim
        out = [Fraction(0)] * m
        for i in range(m):
            ui = frac(u[i])
            if ui == 0:
                continue
            for j in range(m):
                vj = frac(v[j])
                if vj == 0:
                    continue
                for k in range(m):
                    g = self.gamma[i][j][k]
                    if g:
                        out[k] += ui * vj * g
        return tuple(out)

    @cached_property
    def left_matrices(self) -> tuple[Mat, ...]:
        """L_i with column j = e_i·e_j (matrix of left multiplication by e_i)."""
        m = self.dim
        return tuple(
            tuple(tuple(self.gamma[i][j][k] for j in range(m)) for k in range(m))
            for i in range(m))

    def left_matrix(self, x) -> Mat:
        m = self.dim
        return tuple(
            tuple(sum(frac(x[i]) * self.gamma[i][j][k] for i in range(m))
                  for j in range(m)) for k in range(m))

    def right_matrix(self, x) -> Mat:
        """Matrix of y -> y·x."""
        m = self.dim
        return tuple(
            tuple(sum(self.gamma[j][i][k] * frac(x[i]) for i in range(m))
                  for j in range(m)) for k in range(m))

    @cached_property
    def is_associative(self) -> bool:
        return associator_defect(self).is_zero()

    @cached_property
    def is_kv(self) -> bool:
        return kv_anomaly(self).is_zero()


@dataclass(frozen=True)
class LieAlgebra:
    """dim plus bracket table c[i][j][k]; antisymmetry and Jacobi enforced."""

    dim: int
    c: Table3

    def __post_init__(self):
        m = self.dim
        if len(self.c) != m or any(
                len(p) != m or any(len(r) != m for r in p) for p in self.c):
            raise ValidationError("bracket table shape does not match dim")
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise ValidationError(
                            f"bracket not antisymmetric at ({i},{j},{k})")
        defect = jacobi_defect(self.c)
        hit = defect.first_nonzero()
        if hit is not None:
            idx, _ = hit
            raise JacobiViolation(
                f"Jacobi identity fails on basis triple {idx[:3]}")

    def bracket(self, u, v) -> Vec:
        return self.as_product().mult(u, v)

    def as_product(self) -> BilinearProduct:
        return BilinearProduct(self.dim, self.c)

    @cached_property
    def ad_matrices(self) -> tuple[Mat, ...]:
        """ad_i with column j = [e_i, e_j]."""
        return self.as_product().left_matrices

    def ad(self, x) -> Mat:
        return self.as_product().left_matrix(x)


def jacobi_defect(c: Table3) -> DefectTensor:
    """Coefficients of sum_cyclic [[e_i,e_j],e_k] as a rank-4 tensor."""
    m = len(c)
    p = BilinearProduct(m, table3(c)) if m else BilinearProduct(0, ())
    basis = linalg.identity(m)

    def bk(u, v):
        return p.mult(u, v)

    out = []
    for i in range(m):
        plane = []
        for j in range(m):
            row = []
            for k in range(m):
                x, y, z = basis[i], basis[j], basis[k]
                val = linalg.vec_add(
                    linalg.vec_add(bk(bk(x, y), z), bk(bk(y, z), x)),
                    bk(bk(z, x), y))
                row.append(tuple(val))
            plane.append(tuple(row))
        out.append(tuple(plane))
    return DefectTensor(tuple(out))


def _associator(p: BilinearProduct, x, y, z) -> Vec:
    return linalg.vec_sub(p.mult(p.mult(x, y), z), p.mult(x, p.mult(y, z)))


def associator_defect(p: BilinearProduct) -> DefectTensor:
    """(e_i·e_j)·e_k − e_i·(e_j·e_k) over all basis triples; zero iff associative."""
    m = p.dim
    basis = linalg.identity(m)
    out = tuple(
        tuple(
            tuple(_associator(p, basis[i], basis[j], basis[k])
                  for k in range(m)) for j in range(m)) for i in range(m))
    return DefectTensor(out)


def kv_anomaly(p: BilinearProduct) -> DefectTensor:
    """Asymmetry of the associator in its first two slots.

    Zero iff the product is left-symmetric (Koszul-Vinberg). For the product
    of a torsion-free connection this tensor equals minus its curvature.
    """
    m = p.dim
    basis = linalg.identity(m)
    out = tuple(
        tuple(
            tuple(linalg.vec_sub(_associator(p, basis[i], basis[j], basis[k]),
                                 _associator(p, basis[j], basis[i], basis[k]))
                  for k in range(m)) for j in range(m)) for i in range(m))
    return DefectTensor(out)


def commutator_bracket(p: BilinearProduct) -> LieAlgebra:
    """Lie algebra with bracket x·y − y·x; raises JacobiViolation if not Lie."""
    m = p.dim
    c = tuple(
        tuple(
            tuple(p.gamma[i][j][k] - p.gamma[j][i][k] for k in range(m))
            for j in range(m)) for i in range(m))
    return LieAlgebra(m, c)


def killing_form(L: LieAlgebra):
    """K(x,y) = trace(ad_x ad_y); symmetric, ad-invariant."""
    from koszul.forms import BilinearForm
    m = L.dim
    ads = L.ad_matrices
    entries = []
    for i in range(m):
        row = []
        for j in range(m):
            prod = linalg.mat_mul(ads[i], ads[j])
            row.append(sum(prod[a][a] for a in range(m)))
        entries.append(tuple(row))
    return BilinearForm(m, tuple(entries), "symmetric")


def abelian(m: int) -> LieAlgebra:
    return LieAlgebra(m, zero_table3(m))


def zero_product(m: int) -> BilinearProduct:
    return BilinearProduct(m, zero_table3(m))


def product_from_sparse(m: int, entries) -> BilinearProduct:
    """entries: iterable of (i, j, k, value)."""
    g = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i, j, k, v in entries:
        if not all(0 <= t < m for t in (i, j, k)):
            raise ValidationError(f"index out of range in entry ({i},{j},{k})")
        g[i][j][k] = frac(v)
    return BilinearProduct(m, table3(g))


def lie_from_sparse(m: int, entries) -> LieAlgebra:
    """entries: iterable of (i, j, k, value); skew completion from i<j.

    Supplying both (i,j,k,v) and (j,i,k,w) with w != -v is an error, as is a
    nonzero diagonal entry.
    """
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    seen = {}
    for i, j, k, v in entries:
        if not all(0 <= t < m for t in (i, j, k)):
            raise ValidationError(f"index out of range in entry ({i},{j},{k})")
        v = frac(v)
        if i == j:
            if v != 0:
                raise ValidationError(f"nonzero diagonal bracket ({i},{i},{k})")
            continue
        if (i, j, k) in seen and seen[(i, j, k)] != v:
            raise ValidationError(f"conflicting entries for ({i},{j},{k})")
        if (j, i, k) in seen and seen[(j, i, k)] != -v:
            raise ValidationError(
                f"entries ({i},{j},{k}) and ({j},{i},{k}) are not opposite")
        seen[(i, j, k)] = v
        c[i][j][k] = v
        c[j][i][k] = -v
    return LieAlgebra(m, table3(c))


def conjugate_product(p: BilinearProduct, pmat: Mat) -> BilinearProduct:
    """Transport the product along the basis change e_i' = P e_i."""
    m = p.dim
    pinv = linalg.inverse(pmat)
    cols = linalg.transpose(pmat)
    g = []
    for i in range(m):
        plane = []
        for j in range(m):
            plane.append(tuple(linalg.mat_vec(pinv, p.mult(cols[i], cols[j]))))
        g.append(tuple(plane))
    return BilinearProduct(m, tuple(g))


def conjugate_lie(L: LieAlgebra, pmat: Mat) -> LieAlgebra:
    q = conjugate_product(L.as_product(), pmat)
    return LieAlgebra(L.dim, q.gamma)


def direct_sum_products(a: BilinearProduct, b: BilinearProduct) -> BilinearProduct:
    m, n = a.dim, b.dim
    d = m + n
    g = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i, j, k in iproduct(range(m), repeat=3):
        g[i][j][k] = a.gamma[i][j][k]
    for i, j, k in iproduct(range(n), repeat=3):
        g[m + i][m + j][m + k] = b.gamma[i][j][k]
    return BilinearProduct(d, table3(g))
