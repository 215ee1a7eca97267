"""Exponential dispersion families used as observation models.

Each family carries its mean domain, variance function v(mu), Tweedie
variance power where one exists, whether sample means stay inside the family
(convolution closure), a sampler for single observations psi ~ ED(mu, phi),
and, for the continuous families, the log density needed by the
Kullback-Leibler diagnostic.

Two members need special machinery:

* compound Poisson (Tweedie power 1 < p < 2): sampled exactly as a Poisson
  number of gamma summands, never through a series expansion of its density;
* simplex: not closed under convolution.  Sample means are approximated by
  the small-mean result S(mu, w * lam), and the marginal law of a sample
  mean under lam ~ Gamma(dof/2, rate/2) is the Studentised simplex
  distribution sampled through a cached monotone-spline inverse cdf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import PchipInterpolator
from scipy.special import erfcx, expit, gammaln, logit

from .errors import DomainError, PrecisionError, SolverError
from .rng import RandomSource

__all__ = [
    "Family",
    "get_family",
    "family_names",
    "sample_ed",
    "sample_studentised_simplex",
    "studentised_simplex_logpdf",
    "studentised_simplex_cdf_grid",
    "simplex_logpdf",
    "simplex_variance_exact",
    "simplex_variance_approx",
    "cp_zero_probability",
]

_SPLINE_KNOTS = 4096
_EVAL_POINTS = 4 * _SPLINE_KNOTS


@dataclass(frozen=True)
class Family:
    """An exponential dispersion observation model."""

    name: str
    support: tuple[float, float]
    supports_convolution: bool
    power: float | None = None
    base_family: str | None = None
    _variance: Callable | None = None
    _sampler: Callable | None = None
    _logpdf: Callable | None = None

    def variance(self, mu):
        """Variance function v(mu)."""
        if self._variance is None:
            raise DomainError(
                f"variance function of {self.name!r} unavailable until its power parameter is set"
            )
        self.require_mean(mu)
        return self._variance(np.asarray(mu, dtype=float))

    @property
    def has_density(self) -> bool:
        return self._logpdf is not None

    def logpdf(self, x, mu: float, phi):
        """Log density of one observation; continuous families only.
        ``phi`` may be an array matched elementwise to ``x``."""
        if self._logpdf is None:
            raise DomainError(f"{self.name!r} has no continuous density available")
        return self._logpdf(np.asarray(x, dtype=float), float(mu), _check_phi(phi))

    def require_mean(self, mu) -> None:
        lo, hi = self.support
        arr = np.asarray(mu, dtype=float)
        if not np.all(np.isfinite(arr)) or not (np.all(arr > lo) and np.all(arr < hi)):
            raise DomainError(
                f"mean outside the open domain ({lo}, {hi}) of family {self.name!r}"
            )

    def with_power(self, power: float) -> "Family":
        if self.name != "compound-poisson":
            raise DomainError("only the compound Poisson family takes a power parameter")
        return get_family("compound-poisson", power=power)


def _check_phi(phi) -> np.ndarray:
    arr = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(arr)) or not np.all(arr > 0):
        raise DomainError("dispersion must be positive and finite")
    return arr


# -- samplers -----------------------------------------------------------------

def _sample_normal(mu, phi, n, rng):
    phi = _check_phi(phi)
    return rng.generator.normal(mu, np.sqrt(phi), size=n)


def _sample_poisson(mu, phi, n, rng):
    phi = _check_phi(phi)
    return phi * rng.generator.poisson(np.broadcast_to(mu / phi, (n,)) if np.ndim(phi) else mu / phi, size=n)


def _sample_gamma(mu, phi, n, rng):
    phi = _check_phi(phi)
    return rng.generator.gamma(1.0 / phi, mu * phi, size=n)


def _sample_invgauss(mu, phi, n, rng):
    phi = _check_phi(phi)
    return rng.generator.wald(mu, 1.0 / phi, size=n)


def _sample_binomial_proportion(mu, phi, n, rng):
    phi = _check_phi(phi)
    w = 1.0 / phi
    w_int = np.rint(w)
    if not np.all(np.abs(w - w_int) <= 1e-9 * np.maximum(w, 1.0)):
        raise DomainError(
            "binomial-proportion dispersion must be 1/w for an integer number of trials"
        )
    w_int = w_int.astype(int)
    return rng.generator.binomial(np.broadcast_to(w_int, (n,)), mu, size=n) / np.broadcast_to(w_int, (n,))


def _cp_parts(mu, phi, power):
    lam_n = mu ** (2.0 - power) / (phi * (2.0 - power))
    shape = (2.0 - power) / (power - 1.0)
    scale = phi * (power - 1.0) * mu ** (power - 1.0)
    return lam_n, shape, scale


def _make_cp_sampler(power):
    def _sample(mu, phi, n, rng):
        phi = _check_phi(phi)
        lam_n, shape, scale = _cp_parts(float(mu), phi, power)
        counts = rng.generator.poisson(np.broadcast_to(lam_n, (n,)), size=n)
        out = np.zeros(n, dtype=float)
        busy = counts > 0
        if np.any(busy):
            scale_arr = np.broadcast_to(scale, (n,))
            # sum of k iid gammas with common scale is Gamma(k * shape, scale)
            out[busy] = rng.generator.gamma(counts[busy] * shape, scale_arr[busy])
        return out

    return _sample


def _sample_simplex(mu, phi, n, rng):
    phi = _check_phi(phi)
    if np.ndim(phi) != 0:
        raise DomainError("simplex sampling requires a scalar dispersion")
    inv = _simplex_inverse_cdf(float(mu), 1.0 / float(phi))
    u = rng.generator.random(n)
    return np.asarray(inv(u), dtype=float)


# -- log densities (continuous families) --------------------------------------

def _logpdf_normal(x, mu, phi):
    return -0.5 * ((x - mu) ** 2 / phi + np.log(2.0 * math.pi * phi))


def _logpdf_gamma(x, mu, phi):
    k = 1.0 / phi
    theta = mu * phi
    return (k - 1.0) * np.log(x) - x / theta - k * np.log(theta) - gammaln(k)


def _logpdf_invgauss(x, mu, phi):
    return 0.5 * (-np.log(phi) - np.log(2.0 * math.pi * x**3)) - (x - mu) ** 2 / (
        2.0 * phi * mu**2 * x
    )


def simplex_logpdf(x, mu: float, lam: float):
    """Log density of the simplex distribution S(mu, lam)."""
    x = np.asarray(x, dtype=float)
    d = _simplex_deviance(x, mu)
    return 0.5 * (np.log(lam) - np.log(2.0 * np.pi) - 3.0 * (np.log(x) + np.log1p(-x))) - 0.5 * lam * d


def _logpdf_simplex(x, mu, phi):
    return simplex_logpdf(x, mu, 1.0 / np.asarray(phi, dtype=float))


def _simplex_deviance(x, mu):
    return (x - mu) ** 2 / (x * (1.0 - x) * mu**2 * (1.0 - mu) ** 2)


# -- simplex variance ----------------------------------------------------------

def simplex_variance_approx(mu: float, lam: float) -> float:
    """Small-dispersion approximation v(mu)/lam = mu^3 (1-mu)^3 / lam."""
    return (mu * (1.0 - mu)) ** 3 / lam


def simplex_variance_exact(mu: float, lam: float) -> float:
    """Exact simplex variance.

    Computed as mu(1-mu) - sqrt(pi lam / 2) erfcx(sqrt(z)) with
    z = lam / (2 mu^2 (1-mu)^2), which is the scaled-complementary-error
    form of the incomplete-gamma expression and never overflows.  For very
    large z the subtraction cancels catastrophically; when fewer than about
    three significant digits survive a PrecisionError is raised.
    """
    if not (0.0 < mu < 1.0):
        raise DomainError("simplex mean must lie in (0, 1)")
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError("simplex precision lam must be positive and finite")
    z = lam / (2.0 * mu**2 * (1.0 - mu) ** 2)
    out = mu * (1.0 - mu) - math.sqrt(math.pi * lam / 2.0) * erfcx(math.sqrt(z))
    if out <= 0 or out < 1e-12 * mu * (1.0 - mu):
        raise PrecisionError(
            "exact simplex variance lost all precision (cancellation); "
            "use the v(mu)/lam approximation in this regime"
        )
    return float(out)


# -- Studentised simplex -------------------------------------------------------

def studentised_simplex_logpdf(x, mu: float, dof: float, rate: float):
    """Log density of the gamma mixture of simplex laws.

    Integrating S(x | mu, lam) against lam ~ Gamma(dof/2, rate/2) gives

        f(x) = [x(1-x)]^(-3/2) / (B(dof/2, 1/2) sqrt(rate))
               * (1 + d(x, mu)/rate)^(-(dof+1)/2).
    """
    if not (0.0 < mu < 1.0):
        raise DomainError("mean must lie in (0, 1)")
    if not (dof > 0 and math.isfinite(dof) and rate > 0 and math.isfinite(rate)):
        raise DomainError("dof and rate must be positive finite reals")
    x = np.asarray(x, dtype=float)
    d = _simplex_deviance(x, mu)
    lognorm = gammaln((dof + 1.0) / 2.0) - gammaln(dof / 2.0) - 0.5 * math.log(math.pi * rate)
    return lognorm - 1.5 * (np.log(x) + np.log1p(-x)) - 0.5 * (dof + 1.0) * np.log1p(d / rate)


def _curved_unit_grid() -> np.ndarray:
    # logit-spaced evaluation grid, dense at both endpoints of (0, 1)
    u = np.linspace(logit(1e-12), logit(1.0 - 1e-12), _EVAL_POINTS)
    return expit(u)


def _grid_inverse_cdf(grid: np.ndarray, logpdf: np.ndarray):
    logpdf = np.asarray(logpdf, dtype=float)
    top = float(np.max(logpdf))
    # restrict to where the density is above cdf resolution; the discarded
    # tails carry mass below 1e-26 but would produce denormal cdf increments
    # that overflow the interpolant's slopes
    live = np.flatnonzero(logpdf - top > -60.0)
    sl = slice(max(live[0] - 1, 0), min(live[-1] + 2, grid.size))
    grid, logpdf = grid[sl], logpdf[sl]
    pdf = np.exp(logpdf - top)
    cdf = cumulative_trapezoid(pdf, grid, initial=0.0)
    total = cdf[-1] * math.exp(top)
    if not math.isfinite(total) or abs(total - 1.0) > 1e-3:
        raise SolverError(
            f"density integration off the unit interval is inconsistent (mass {total:.6g}); "
            "parameters outside the supported configuration"
        )
    cdf = cdf / cdf[-1]
    keep = np.concatenate(([True], np.diff(cdf) > 0))
    grid, cdf = grid[keep], cdf[keep]
    idx = np.unique(np.linspace(0, len(cdf) - 1, _SPLINE_KNOTS).round().astype(int))
    spline = PchipInterpolator(cdf[idx], grid[idx], extrapolate=False)
    lo, hi = cdf[idx][0], cdf[idx][-1]

    def inverse(u):
        u = np.clip(np.asarray(u, dtype=float), lo, hi)
        return spline(u)

    return inverse


@lru_cache(maxsize=64)
def _studentised_simplex_inverse_cdf(mu: float, dof: float, rate: float):
    grid = _curved_unit_grid()
    return _grid_inverse_cdf(grid, studentised_simplex_logpdf(grid, mu, dof, rate))


@lru_cache(maxsize=64)
def _simplex_inverse_cdf(mu: float, lam: float):
    grid = _curved_unit_grid()
    return _grid_inverse_cdf(grid, simplex_logpdf(grid, mu, lam))


def sample_studentised_simplex(
    mu: float, dof: float, rate: float, n: int, rng: RandomSource
) -> np.ndarray:
    """Draws from the Studentised simplex via the cached spline inverse cdf."""
    if n < 1:
        raise DomainError("sample size must be at least 1")
    inv = _studentised_simplex_inverse_cdf(float(mu), float(dof), float(rate))
    return np.asarray(inv(rng.generator.random(n)), dtype=float)


def studentised_simplex_cdf_grid(mu: float, dof: float, rate: float):
    """(grid, cdf) pair from the same quadrature the sampler uses."""
    grid = _curved_unit_grid()
    logpdf = studentised_simplex_logpdf(grid, mu, dof, rate)
    pdf = np.exp(logpdf - np.max(logpdf))
    cdf = cumulative_trapezoid(pdf, grid, initial=0.0)
    return grid, cdf / cdf[-1]


def cp_zero_probability(mu: float, power: float, phi: float) -> float:
    """P(psi = 0) for the compound Poisson family: exp(-mu^(2-p)/(phi (2-p)))."""
    lam_n, _, _ = _cp_parts(mu, _check_phi(phi), power)
    return float(np.exp(-lam_n))


# -- registry ------------------------------------------------------------------

def _builtin_families() -> dict[str, Callable[..., Family]]:
    def cp(power: float | None = None) -> Family:
        if power is not None:
            power = float(power)
            if not (1.0 < power < 2.0):
                raise DomainError("compound Poisson power must lie strictly in (1, 2)")
        return Family(
            name="compound-poisson",
            support=(0.0, math.inf),
            supports_convolution=True,
            power=power,
            _variance=(lambda mu, p=power: mu**p) if power is not None else None,
            _sampler=_make_cp_sampler(power) if power is not None else None,
            _logpdf=None,
        )

    simple = {
        "normal": Family(
            "normal", (-math.inf, math.inf), True, 0.0, None,
            lambda mu: np.ones_like(mu), _sample_normal, _logpdf_normal,
        ),
        "poisson": Family(
            "poisson", (0.0, math.inf), True, 1.0, None,
            lambda mu: mu, _sample_poisson, None,
        ),
        "gamma": Family(
            "gamma", (0.0, math.inf), True, 2.0, None,
            lambda mu: mu**2, _sample_gamma, _logpdf_gamma,
        ),
        "inverse-gaussian": Family(
            "inverse-gaussian", (0.0, math.inf), True, 3.0, None,
            lambda mu: mu**3, _sample_invgauss, _logpdf_invgauss,
        ),
        "binomial-proportion": Family(
            "binomial-proportion", (0.0, 1.0), True, None, None,
            lambda mu: mu * (1.0 - mu), _sample_binomial_proportion, None,
        ),
        "simplex": Family(
            "simplex", (0.0, 1.0), False, None, None,
            lambda mu: (mu * (1.0 - mu)) ** 3, _sample_simplex, _logpdf_simplex,
        ),
        "lognormal-target": Family(
            "lognormal-target", (-math.inf, math.inf), True, 0.0, "normal",
            lambda mu: np.ones_like(mu), None, None,
        ),
    }
    return {**{k: (lambda v=v: v) for k, v in simple.items()}, "compound-poisson": cp}


_FACTORIES = _builtin_families()


def family_names() -> list[str]:
    return sorted(_FACTORIES)


def get_family(name: str, power: float | None = None) -> Family:
    """Look up a family; ``power`` applies to the compound Poisson only."""
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise DomainError(f"unknown family {name!r}; registered: {family_names()}") from None
    if name == "compound-poisson":
        return factory(power)
    if power is not None:
        raise DomainError(f"family {name!r} takes no power parameter")
    return factory()


def sample_ed(family: Family, mu: float, phi, n: int, rng: RandomSource) -> np.ndarray:
    """``n`` draws of single observations psi ~ ED(mu, phi).

    ``phi`` may be a scalar or a length-``n`` array (one dispersion per
    draw), which is how sample means under an uncertain dispersion are
    simulated.  The lognormal target is a wrapper around the normal family
    and cannot be sampled directly.
    """
    if family._sampler is None:
        raise DomainError(f"family {family.name!r} cannot be sampled directly")
    family.require_mean(mu)
    if n < 1:
        raise DomainError("sample size must be at least 1")
    phi_arr = np.asarray(phi, dtype=float)
    if phi_arr.ndim not in (0, 1) or (phi_arr.ndim == 1 and phi_arr.shape[0] != n):
        raise DomainError("dispersion must be a scalar or one value per draw")
    return family._sampler(float(mu), phi if np.ndim(phi) == 0 else phi_arr, n, rng)
