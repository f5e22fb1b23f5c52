"""Independent reference implementations used to cross-check the library.

Everything here is written naively and separately from src/koszul: plain
Gaussian elimination over Fraction, direct index-chasing tensor formulas,
and closed forms from textbooks. Slower is fine; agreeing by construction
is the point.
"""

from fractions import Fraction
from math import comb

import sympy


def F(x):
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------- linear algebra

def gauss_eliminate(rows):
    """Forward elimination with partial pivoting over Fraction; returns
    (echelon rows, pivot column list)."""
    a = [[F(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def gauss_rank(rows):
    return len(gauss_eliminate(rows)[0])


def gauss_nullspace(rows, ncols):
    ech, pivots = gauss_eliminate(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -ech[r][fc]
        basis.append(tuple(v))
    return basis


def sympy_rank(rows):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows]).rank()


def sympy_det(rows):
    m = sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows])
    return Fraction(str(m.det()))


# ---------------------------------------------------------------- tensor formulas

def jacobi_entry(c, i, j, k, l):
    """[[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej], coefficient along el."""
    m = len(c)
    s = Fraction(0)
    for a in range(m):
        s += c[i][j][a] * c[a][k][l]
        s += c[j][k][a] * c[a][i][l]
        s += c[k][i][a] * c[a][j][l]
    return s


def torsion_entry(gamma, c, i, j, k):
    return gamma[i][j][k] - gamma[j][i][k] - c[i][j][k]


def curvature_entry(gamma, c, i, j, k, l):
    """R(ei,ej)ek along el with R(x,y)z = grad_x grad_y z - grad_y grad_x z
    - grad_{[x,y]} z."""
    m = len(c)
    s = Fraction(0)
    for a in range(m):
        s += gamma[j][k][a] * gamma[i][a][l]
        s -= gamma[i][k][a] * gamma[j][a][l]
        s -= c[i][j][a] * gamma[a][k][l]
    return s


def associator_entry(gamma, i, j, k, l):
    """((ei·ej)·ek - ei·(ej·ek)) along el."""
    m = len(gamma)
    s = Fraction(0)
    for a in range(m):
        s += gamma[i][j][a] * gamma[a][k][l]
        s -= gamma[j][k][a] * gamma[i][a][l]
    return s


def kv_anomaly_entry(gamma, i, j, k, l):
    """Left-symmetry defect: assoc(x,y,z) - assoc(y,x,z) along el."""
    return (associator_entry(gamma, i, j, k, l)
            - associator_entry(gamma, j, i, k, l))


def killing_entry(c, i, j):
    """tr(ad_ei ad_ej) expanded directly."""
    m = len(c)
    s = Fraction(0)
    for a in range(m):
        for b in range(m):
            s += c[i][a][b] * c[j][b][a]
    return s


# ---------------------------------------------------------------- closed forms

def abelian_betti(m, p):
    """Trivial-coefficient Chevalley-Eilenberg Betti numbers of R^m."""
    return comb(m, p)


def fisher_bernoulli(theta):
    return 1.0 / (theta * (1.0 - theta))


def fisher_categorical_mean(theta):
    """Categorical on n outcomes, coordinates are the first n-1 probabilities:
    G_ij = delta_ij / theta_i + 1 / theta_n."""
    d = len(theta)
    last = 1.0 - sum(theta)
    return [[(1.0 / theta[i] if i == j else 0.0) + 1.0 / last
             for j in range(d)] for i in range(d)]


def full_symbol_cartan_total(m, w):
    """Sum over a quasi-regular flag for a = Hom(V,W): dim a_j = w(m-j),
    so the total is w * m(m+1)/2."""
    return w * m * (m + 1) // 2
