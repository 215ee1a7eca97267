"""Projection of the elicited linear-predictor law onto coefficient priors.

The elicited scenario law ``eta ~ St(loc, scale, rate, dof)`` is pushed onto
a regression structure ``eta = X beta (+ offset)`` by minimising the
Kullback-Leibler divergence between the elicited model and the regression
model per observation.  The optimum is the generalised-least-squares
projection

    coef_loc   = (X' V^-1 X)^-1 X' V^-1 m
    coef_scale = (X' V^-1 X)^-1 / q
    projector  = X (X' V^-1 X)^-1 X' V^-1

with the dof carried over unchanged and the rate multiplied by the
dispersion ratio q (phi'/phi for known dispersion, v(mean0)/v'(mean0) when
switching to a target family with variance function v' under unknown
dispersion).  A square model matrix loses no information: the projector is
the identity.

Truncating the dependence model at level t replaces the correlation matrix
R by R(t); the information lost has the closed form

    D_t = log(|R(t)|/|R|)/2 + tr(R R(t)^-1)/2 - n/2,

reported for every feasible t in one call together with the conventional
log(sqrt(10)) reporting threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .dispersion import DispersionSpec
from .errors import DomainError, SolverError
from .families import Family

__all__ = [
    "DesignMatrix",
    "InducedPrior",
    "induce_prior",
    "kl_normal",
    "truncation_divergence",
    "truncation_divergence_series",
    "TRUNCATION_THRESHOLD",
]

TRUNCATION_THRESHOLD = math.log(math.sqrt(10.0))

_RANK_TOL = 1e-10


@dataclass(frozen=True)
class DesignMatrix:
    """Full-column-rank model matrix with coefficient names and offset."""

    matrix: np.ndarray
    names: tuple[str, ...] = ()
    offset: np.ndarray | None = None

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.matrix, dtype=float))
        if X.ndim != 2 or not np.all(np.isfinite(X)):
            raise DomainError("model matrix must be a finite 2-d array")
        n, p = X.shape
        if p > n:
            raise DomainError("model matrix cannot have more columns than scenarios")
        sv = np.linalg.svd(X, compute_uv=False)
        if sv[-1] <= _RANK_TOL * max(sv[0], 1.0):
            raise DomainError("model matrix is rank deficient")
        names = tuple(self.names) if self.names else tuple(f"b{j}" for j in range(p))
        if len(names) != p:
            raise DomainError("need one coefficient name per column")
        if self.offset is None:
            off = np.zeros(n)
        else:
            off = np.asarray(self.offset, dtype=float)
            if off.shape != (n,) or not np.all(np.isfinite(off)):
                raise DomainError("offset must be a finite vector with one entry per scenario")
        object.__setattr__(self, "matrix", X)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "offset", off)

    @classmethod
    def identity(cls, n: int, names: tuple[str, ...] = ()) -> "DesignMatrix":
        return cls(np.eye(n), names or tuple(f"b{j}" for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class InducedPrior:
    """Coefficient prior induced by the projection."""

    coef_loc: np.ndarray
    coef_scale: np.ndarray
    dof: float
    rate: float
    phi: float | None
    projector: np.ndarray
    dispersion_ratio: float
    names: tuple[str, ...]
    family: str
    truncation: int | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "names": list(self.names),
            "coef_loc": self.coef_loc.tolist(),
            "coef_scale": self.coef_scale.tolist(),
            "dof": self.dof,
            "rate": self.rate,
            "phi": self.phi,
            "dispersion_ratio": self.dispersion_ratio,
            "projector": self.projector.tolist(),
            "family": self.family,
            "truncation": self.truncation,
        }


def _spd_factor(mat: np.ndarray, what: str):
    if np.any(~np.isfinite(mat)):
        raise DomainError(f"{what} has non-finite entries")
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError(f"{what} must be square")
    if not np.allclose(mat, mat.T, rtol=0.0, atol=1e-10 * max(1.0, float(np.abs(mat).max()))):
        raise DomainError(f"{what} must be symmetric")
    try:
        return cho_factor(mat, lower=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverError(f"{what} is not positive definite") from exc


def induce_prior(
    loc: np.ndarray,
    scale: np.ndarray,
    spec: DispersionSpec,
    family: Family,
    design: DesignMatrix | None = None,
    target_family: Family | None = None,
    target_phi: float | None = None,
    truncation: int | None = None,
) -> InducedPrior:
    """Project the elicited scenario law onto regression coefficients.

    ``design=None`` uses the identity (intercept-free saturated system).
    ``target_family`` switches the observation model; under unknown
    dispersion the rate is rescaled by the variance-function ratio at the
    dispersion conditioning mean, under known dispersion ``target_phi``
    supplies the new dispersion (defaults to the elicited one).
    """
    m = np.asarray(loc, dtype=float)
    V = np.asarray(scale, dtype=float)
    n = m.shape[0]
    if V.shape != (n, n):
        raise DomainError("scale matrix does not match the location vector")
    if design is None:
        design = DesignMatrix.identity(n)
    X = design.matrix
    if X.shape[0] != n:
        raise DomainError("model matrix row count must equal the scenario count")

    target = target_family or family
    if spec.is_known:
        phi_new = spec.phi if target_phi is None else float(target_phi)
        if not (phi_new > 0 and math.isfinite(phi_new)):
            raise DomainError("target dispersion must be positive and finite")
        ratio = phi_new / spec.phi
    else:
        if target_phi is not None:
            raise DomainError("target dispersion only applies to known-dispersion sessions")
        if target.name == family.name and target.power == family.power:
            ratio = 1.0
        else:
            if spec.mean0 is None:
                raise DomainError(
                    "switching families under unknown dispersion needs the "
                    "dispersion conditioning mean"
                )
            ratio = float(family.variance(spec.mean0) / target.variance(spec.mean0))

    vf = _spd_factor(V, "scale matrix")
    m_eff = m - design.offset
    Vinv_X = cho_solve(vf, X)
    gram = X.T @ Vinv_X
    gram = 0.5 * (gram + gram.T)
    gf = _spd_factor(gram, "projected information matrix")
    coef_loc = cho_solve(gf, X.T @ cho_solve(vf, m_eff))
    gram_inv = cho_solve(gf, np.eye(X.shape[1]))
    gram_inv = 0.5 * (gram_inv + gram_inv.T)
    projector = X @ cho_solve(gf, Vinv_X.T)

    if spec.is_known:
        return InducedPrior(
            coef_loc=coef_loc,
            coef_scale=gram_inv / ratio,
            dof=math.inf,
            rate=math.inf,
            phi=phi_new,
            projector=projector,
            dispersion_ratio=ratio,
            names=design.names,
            family=target.name,
            truncation=truncation,
        )
    return InducedPrior(
        coef_loc=coef_loc,
        coef_scale=gram_inv / ratio,
        dof=spec.dof,
        rate=spec.rate * ratio,
        phi=None,
        projector=projector,
        dispersion_ratio=ratio,
        names=design.names,
        family=target.name,
        truncation=truncation,
    )


def kl_normal(
    loc_a: np.ndarray,
    scale_a: np.ndarray,
    loc_b: np.ndarray,
    scale_b: np.ndarray,
    lam: float = 1.0,
) -> float:
    """Divergence of N(loc_a, scale_a/lam) from N(loc_b, scale_b/lam).

    The common precision scaling of the two covariances cancels in the
    log-determinant and trace terms and multiplies the quadratic form.
    """
    a = np.asarray(loc_a, dtype=float)
    b = np.asarray(loc_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DomainError("location vectors must be matching 1-d arrays")
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError("precision lam must be positive and finite")
    n = a.shape[0]
    Sa = np.asarray(scale_a, dtype=float)
    Sb = np.asarray(scale_b, dtype=float)
    if Sa.shape != (n, n) or Sb.shape != (n, n):
        raise DomainError("scale matrices must match the location dimension")
    fa = _spd_factor(Sa, "first scale matrix")
    fb = _spd_factor(Sb, "second scale matrix")
    logdet_a = 2.0 * float(np.sum(np.log(np.diag(fa[0]))))
    logdet_b = 2.0 * float(np.sum(np.log(np.diag(fb[0]))))
    trace = float(np.trace(cho_solve(fb, Sa)))
    diff = a - b
    quad = float(diff @ cho_solve(fb, diff))
    return 0.5 * (logdet_b - logdet_a + trace - n + lam * quad)


def truncation_divergence(corr_full: np.ndarray, corr_trunc: np.ndarray) -> float:
    """Information lost by replacing ``corr_full`` with ``corr_trunc``."""
    R = np.asarray(corr_full, dtype=float)
    Rt = np.asarray(corr_trunc, dtype=float)
    if R.shape != Rt.shape:
        raise DomainError("correlation matrices must have matching shapes")
    n = R.shape[0]
    ff = _spd_factor(R, "correlation matrix")
    ft = _spd_factor(Rt, "truncated correlation matrix")
    logdet_full = 2.0 * float(np.sum(np.log(np.diag(ff[0]))))
    logdet_trunc = 2.0 * float(np.sum(np.log(np.diag(ft[0]))))
    trace = float(np.trace(cho_solve(ft, R)))
    return 0.5 * (logdet_trunc - logdet_full) + 0.5 * trace - 0.5 * n


def truncation_divergence_series(state) -> list[dict[str, Any]]:
    """Divergence of every feasible truncation level in one pass.

    ``state`` is a VineState with at least its marginals complete.  Entry t
    compares the fully elicited correlation matrix against the one with all
    levels above t zeroed; the last entry is exactly zero.
    """
    top = state.completed_level
    if top < 0:
        raise DomainError("divergence series needs completed marginals")
    R = state.corr(top)
    out = []
    for t in range(top + 1):
        d = truncation_divergence(R, state.corr(t))
        out.append(
            {
                "level": t,
                "divergence": float(d),
                "threshold": TRUNCATION_THRESHOLD,
                "above_threshold": bool(d > TRUNCATION_THRESHOLD),
            }
        )
    return out
