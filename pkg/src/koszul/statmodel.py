"""Information geometry of finite statistical models.

Floating point module: Fisher information, the alpha-family of Christoffel
symbols, numeric curvature, and the exponential-family probe. Everything
else in the package is exact; here derivatives of log densities force
floats, so every operation carries an explicit tolerance.

Convention note: the lowered symbols use the weight (1+alpha)/2 on the
score product, so it is alpha = -1 (not +1) that vanishes identically in
the natural coordinates of an exponential family. The alpha = 0 member is
the Levi-Civita connection of the Fisher metric either way.

Derivatives are central differences with one Richardson refinement
(h = 1e-4); curvature differentiates the raised symbols at h = 1e-3
without refinement. The integral over outcomes uses counting measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from koszul.errors import (
    DomainViolation,
    NonNormalized,
    SingularFisher,
    ValidationError,
)

GRAD_STEP = 1e-4
CURV_STEP = 1e-3
NORM_TOL = 1e-12
DOMAIN_MARGIN = 0.01


@dataclass(frozen=True)
class FiniteStatModel:
    """Positive probability model on finitely many outcomes.

    log_density(theta, x) must be smooth in theta and normalized:
    sum_x exp(log_density(theta, x)) = 1 within 1e-12 wherever evaluated.
    """

    name: str
    n_outcomes: int
    n_params: int
    log_density: Callable[[np.ndarray, int], float]
    domain: tuple[tuple[float, float], ...]

    def check_domain(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.n_params,):
            raise ValidationError(
                f"theta must have {self.n_params} coordinates")
        for t, (lo, hi) in zip(theta, self.domain):
            if not (lo + DOMAIN_MARGIN <= t <= hi - DOMAIN_MARGIN):
                raise DomainViolation(
                    f"theta component {t} outside "
                    f"[{lo + DOMAIN_MARGIN}, {hi - DOMAIN_MARGIN}]")
        return theta

    def probs(self, theta) -> np.ndarray:
        p = np.array([np.exp(self.log_density(theta, x))
                      for x in range(self.n_outcomes)])
        if abs(float(p.sum()) - 1.0) > NORM_TOL:
            raise NonNormalized(
                f"probabilities sum to {p.sum()!r} at theta={theta}")
        return p


def _richardson(f, h):
    return (4.0 * f(h / 2) - f(h)) / 3.0


def _grad_log(model, theta, x, h=GRAD_STEP):
    d = model.n_params
    out = np.zeros(d)
    for i in range(d):
        e = np.zeros(d)
        e[i] = 1.0

        def diff(step):
            return (model.log_density(theta + step * e, x)
                    - model.log_density(theta - step * e, x)) / (2 * step)

        out[i] = _richardson(diff, h)
    return out


def _hess_log(model, theta, x, h=GRAD_STEP):
    d = model.n_params
    out = np.zeros((d, d))
    for i in range(d):
        ei = np.zeros(d)
        ei[i] = 1.0

        def diag(step):
            return (model.log_density(theta + step * ei, x)
                    - 2.0 * model.log_density(theta, x)
                    + model.log_density(theta - step * ei, x)) / step ** 2

        out[i, i] = _richardson(diag, h)
        for j in range(i + 1, d):
            ej = np.zeros(d)
            ej[j] = 1.0

            def mixed(step):
                return (model.log_density(theta + step * (ei + ej), x)
                        - model.log_density(theta + step * (ei - ej), x)
                        - model.log_density(theta - step * (ei - ej), x)
                        + model.log_density(theta - step * (ei + ej), x)
                        ) / (4 * step ** 2)

            out[i, j] = out[j, i] = _richardson(mixed, h)
    return out


def fisher_information(model: FiniteStatModel, theta) -> np.ndarray:
    """Fisher matrix sum_x p (grad log p)(grad log p)^T."""
    theta = model.check_domain(theta)
    p = model.probs(theta)
    d = model.n_params
    g = np.zeros((d, d))
    for x in range(model.n_outcomes):
        s = _grad_log(model, theta, x)
        g += p[x] * np.outer(s, s)
    return 0.5 * (g + g.T)


def fisher_via_hessian(model: FiniteStatModel, theta) -> np.ndarray:
    """Independent route -sum_x p hess(log p); agrees within tolerance."""
    theta = model.check_domain(theta)
    p = model.probs(theta)
    d = model.n_params
    g = np.zeros((d, d))
    for x in range(model.n_outcomes):
        g -= p[x] * _hess_log(model, theta, x)
    return 0.5 * (g + g.T)


def alpha_christoffels(model: FiniteStatModel, theta, alpha: float,
                       raised: bool = False) -> np.ndarray:
    """Lowered symbols sum_x p [hess_ij + (1+a)/2 s_i s_j] s_k.

    With raised=True the last index is raised by the inverse Fisher
    matrix, giving Gamma^k_ij stored as [i][j][k].
    """
    theta = model.check_domain(theta)
    p = model.probs(theta)
    d = model.n_params
    low = np.zeros((d, d, d))
    w = (1.0 + alpha) / 2.0
    for x in range(model.n_outcomes):
        s = _grad_log(model, theta, x)
        hess = _hess_log(model, theta, x)
        core = hess + w * np.outer(s, s)
        low += p[x] * np.einsum("ij,k->ijk", core, s)
    if not raised:
        return low
    g = fisher_information(model, theta)
    return _raise_last(low, g)


def _raise_last(low: np.ndarray, g: np.ndarray) -> np.ndarray:
    if np.linalg.cond(g) > 1e10:
        raise SingularFisher("fisher matrix is numerically singular")
    ginv = np.linalg.inv(g)
    return np.einsum("ijl,lk->ijk", low, ginv)


def levi_civita_symbols(model: FiniteStatModel, theta) -> np.ndarray:
    """Lowered Levi-Civita symbols of the Fisher metric, by metric
    differences: an oracle for the alpha = 0 member."""
    theta = model.check_domain(theta)
    d = model.n_params
    h = CURV_STEP

    def g_at(t):
        return fisher_information(model, t)

    dg = np.zeros((d, d, d))
    for i in range(d):
        e = np.zeros(d)
        e[i] = 1.0

        def diff(step):
            return (g_at(theta + step * e) - g_at(theta - step * e)) \
                / (2 * step)

        dg[i] = _richardson(diff, h)
    low = np.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                low[i, j, k] = 0.5 * (dg[i][j, k] + dg[j][i, k] - dg[k][i, j])
    return low


def alpha_curvature(model: FiniteStatModel, theta,
                    alpha: float) -> tuple[np.ndarray, float]:
    """Curvature of the raised alpha symbols by central differences.

    R[i,j,k,l] = d_i G[j,k,l] - d_j G[i,k,l]
                 + sum_m (G[i,m,l] G[j,k,m] - G[j,m,l] G[i,k,m])
    with G[i,j,k] the raised symbols; returns the tensor and its max-abs.
    """
    theta = model.check_domain(theta)
    d = model.n_params
    h = CURV_STEP

    def symbols(t):
        return alpha_christoffels(model, t, alpha, raised=True)

    base = symbols(theta)
    grad = np.zeros((d, d, d, d))
    for i in range(d):
        e = np.zeros(d)
        e[i] = 1.0
        grad[i] = (symbols(theta + h * e) - symbols(theta - h * e)) / (2 * h)
    r = np.zeros((d, d, d, d))
    for i in range(d):
        for j in range(d):
            r[i, j] = grad[i][j] - grad[j][i] \
                + np.einsum("ml,km->kl", base[i], base[j]) \
                - np.einsum("ml,km->kl", base[j], base[i])
    return r, float(np.max(np.abs(r))) if d else 0.0


@dataclass(frozen=True)
class ProbeReport:
    exponential_like: bool
    best_alpha: float
    curvature_norms: dict
    torsion_max: float
    tol: float
    grid_size: int
    notes: str = ""


def exponential_defect_probe(model: FiniteStatModel, grid,
                             tol: float = 1e-4) -> ProbeReport:
    """Flag a model exponential-like when some end of the alpha family is
    numerically flat on the grid.

    Checks max |R(alpha)| for alpha in {-1, +1} and the symmetry defect of
    the symbols; a numeric surrogate for the flatness characterization,
    not a proof.
    """
    grid = [np.asarray(t, dtype=float) for t in grid]
    if not grid:
        raise ValidationError("probe grid is empty")
    norms = {}
    torsion = 0.0
    for alpha in (-1.0, 1.0):
        worst = 0.0
        for t in grid:
            _, mx = alpha_curvature(model, t, alpha)
            worst = max(worst, mx)
            low = alpha_christoffels(model, t, alpha)
            torsion = max(torsion, float(
                np.max(np.abs(low - np.swapaxes(low, 0, 1)))))
        norms[alpha] = worst
    best = min(norms, key=lambda a: norms[a])
    verdict = min(norms.values()) < tol and torsion < tol
    return ProbeReport(
        exponential_like=verdict,
        best_alpha=best,
        curvature_norms=norms,
        torsion_max=torsion,
        tol=tol,
        grid_size=len(grid),
        notes="flat within tolerance at alpha = %+g" % best if verdict
        else "no flat member found at alpha = -1 or +1")


def bernoulli() -> FiniteStatModel:
    """Two outcomes, mean parameter theta = P(X = 1)."""

    def logp(theta, x):
        t = float(theta[0])
        return float(np.log(t if x == 1 else 1.0 - t))

    return FiniteStatModel("bernoulli", 2, 1, logp, ((0.0, 1.0),))


def categorical_mean(n: int) -> FiniteStatModel:
    """n outcomes, mean coordinates theta_i = p_i for i < n-1."""
    if n < 2:
        raise ValidationError("categorical model needs >= 2 outcomes")

    def logp(theta, x):
        if x < n - 1:
            return float(np.log(theta[x]))
        return float(np.log(1.0 - float(np.sum(theta))))

    box = tuple(((0.0, 1.0),) * (n - 1))
    return FiniteStatModel(f"categorical:{n}", n, n - 1, logp, box)


def categorical_natural(n: int) -> FiniteStatModel:
    """n outcomes, natural (logit) coordinates: p = softmax(theta, 0)."""
    if n < 2:
        raise ValidationError("categorical model needs >= 2 outcomes")

    def logp(theta, x):
        logits = np.append(np.asarray(theta, dtype=float), 0.0)
        return float(logits[x] - _logsumexp(logits))

    box = tuple(((-4.0, 4.0),) * (n - 1))
    return FiniteStatModel(f"categorical-natural:{n}", n, n - 1, logp, box)


def curved4() -> FiniteStatModel:
    """Curved 2-parameter subfamily of the 4-outcome family: logits
    (t1, t2, t1*t2, 0). The nonlinear constraint breaks dual flatness."""

    def logp(theta, x):
        t1, t2 = float(theta[0]), float(theta[1])
        logits = np.array([t1, t2, t1 * t2, 0.0])
        return float(logits[x] - _logsumexp(logits))

    return FiniteStatModel("curved4", 4, 2, logp,
                           ((-3.0, 3.0), (-3.0, 3.0)))


def constant_family() -> FiniteStatModel:
    """Uniform on two outcomes regardless of theta; zero Fisher metric."""

    def logp(theta, x):
        return float(np.log(0.5))

    return FiniteStatModel("constant", 2, 1, logp, ((-1.0, 1.0),))


def _logsumexp(v: np.ndarray) -> float:
    m = float(np.max(v))
    return m + float(np.log(np.sum(np.exp(v - m))))


_FAMILY_BUILDERS = {
    "bernoulli": lambda arg: bernoulli(),
    "categorical": lambda arg: categorical_mean(int(arg)),
    "categorical-natural": lambda arg: categorical_natural(int(arg)),
    "curved4": lambda arg: curved4(),
    "constant": lambda arg: constant_family(),
}


def get_family(spec: str) -> FiniteStatModel:
    """Resolve a family name like 'bernoulli' or 'categorical:3'."""
    name, _, arg = spec.partition(":")
    if name not in _FAMILY_BUILDERS:
        raise ValidationError(f"unknown family {spec!r}")
    if name in ("categorical", "categorical-natural") and not arg:
        raise ValidationError(f"family {name} needs an outcome count, "
                              f"e.g. {name}:3")
    return _FAMILY_BUILDERS[name](arg)


def default_theta(model: FiniteStatModel) -> np.ndarray:
    """Canonical interior point: barycenter for mean coordinates, origin
    for natural coordinates, midpoint otherwise."""
    if model.name.startswith("categorical:"):
        n = model.n_outcomes
        return np.full(model.n_params, 1.0 / n)
    if model.name.startswith("categorical-natural") or \
            model.name == "curved4":
        return np.zeros(model.n_params)
    if model.name == "bernoulli":
        return np.array([0.5])
    return np.array([(lo + hi) / 2.0 for lo, hi in model.domain])
