"""Student t, generalised t, gamma and unit-gamma building blocks.

The engine works throughout with the generalised univariate t

    St(x | loc, scale, rate, dof) = t(x | loc, (rate/dof) * scale, dof),

the scale mixture of a normal with squared scale ``scale / lam`` over
``lam ~ Gamma(dof/2, rate/2)`` (rate parametrisation).  Known dispersion is
the limit ``dof = rate = inf``; by convention callers then fold the known
dispersion into ``scale`` so the mixing factor becomes 1 and every routine
falls back to the normal.

The unit gamma is the law of ``exp(-G)`` for ``G ~ Gamma(dof/2, rate)``; its
distribution function therefore has the closed form

    UG_cdf(x | dof, rate) = Q(dof/2, rate * (-ln x)),

with Q the regularised upper incomplete gamma function, and its quantiles
invert in closed form too.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import (
    gammainc,
    gammaincc,
    gammainccinv,
    gammaincinv,
    gammaln,
    ndtr,
    ndtri,
    stdtr,
    stdtrit,
)

from .errors import DomainError
from .rng import RandomSource

__all__ = [
    "student_t_pdf",
    "student_t_cdf",
    "student_t_quantile",
    "gen_t_pdf",
    "gen_t_cdf",
    "gen_t_quantile",
    "gamma_cdf",
    "gamma_quantile",
    "gamma_sample",
    "unit_gamma_pdf",
    "unit_gamma_cdf",
    "unit_gamma_quantile",
    "unit_gamma_rate_for_median",
]


def _check_dof(dof: float) -> float:
    dof = float(dof)
    if math.isnan(dof) or dof <= 0:
        raise DomainError("degrees of freedom must be positive (inf allowed)")
    return dof


def _check_prob(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if not np.all((q > 0) & (q < 1)):
        raise DomainError("probability must lie strictly in (0, 1)")
    return q


def student_t_pdf(x, dof: float):
    """Density of the standard Student t; normal density at ``dof=inf``."""
    dof = _check_dof(dof)
    x = np.asarray(x, dtype=float)
    if math.isinf(dof):
        return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    lognorm = gammaln((dof + 1.0) / 2.0) - gammaln(dof / 2.0) - 0.5 * math.log(dof * math.pi)
    return np.exp(lognorm - 0.5 * (dof + 1.0) * np.log1p(x * x / dof))


def student_t_cdf(x, dof: float):
    dof = _check_dof(dof)
    x = np.asarray(x, dtype=float)
    if math.isinf(dof):
        return ndtr(x)
    return stdtr(dof, x)


def student_t_quantile(q, dof: float):
    """Quantile of the standard Student t; normal quantile at ``dof=inf``."""
    dof = _check_dof(dof)
    q = _check_prob(q)
    if math.isinf(dof):
        return ndtri(q)
    return stdtrit(dof, q)


def _t_factor(scale: float, rate: float, dof: float) -> float:
    """Squared-scale multiplier ``rate/dof`` with the known-dispersion
    convention (both infinite -> factor 1, dispersion folded into scale)."""
    if not (np.isscalar(scale) or np.ndim(scale) == 0) or float(scale) <= 0:
        raise DomainError("scale must be a positive scalar")
    dof = _check_dof(dof)
    rate = float(rate)
    if math.isinf(dof) != math.isinf(rate):
        raise DomainError("rate and dof must be infinite together (known dispersion)")
    if math.isinf(dof):
        return 1.0
    if rate <= 0:
        raise DomainError("rate must be positive")
    return rate / dof


def gen_t_pdf(x, loc: float, scale: float, rate: float, dof: float):
    """Density of the generalised t ``St(loc, scale, rate, dof)``."""
    sd = math.sqrt(_t_factor(scale, rate, dof) * float(scale))
    x = np.asarray(x, dtype=float)
    return student_t_pdf((x - loc) / sd, dof) / sd


def gen_t_cdf(x, loc: float, scale: float, rate: float, dof: float):
    sd = math.sqrt(_t_factor(scale, rate, dof) * float(scale))
    x = np.asarray(x, dtype=float)
    return student_t_cdf((x - loc) / sd, dof)


def gen_t_quantile(q, loc: float, scale: float, rate: float, dof: float):
    sd = math.sqrt(_t_factor(scale, rate, dof) * float(scale))
    return loc + sd * student_t_quantile(q, dof)


def _check_gamma_params(shape: float, rate: float) -> tuple[float, float]:
    shape = float(shape)
    rate = float(rate)
    if not (shape > 0 and math.isfinite(shape)):
        raise DomainError("gamma shape must be a positive finite real")
    if not (rate > 0 and math.isfinite(rate)):
        raise DomainError("gamma rate must be a positive finite real")
    return shape, rate


def gamma_cdf(x, shape: float, rate: float):
    shape, rate = _check_gamma_params(shape, rate)
    x = np.asarray(x, dtype=float)
    return gammainc(shape, rate * x)


def gamma_quantile(q, shape: float, rate: float):
    shape, rate = _check_gamma_params(shape, rate)
    q = _check_prob(q)
    return gammaincinv(shape, q) / rate


def gamma_sample(shape: float, rate: float, n: int, rng: RandomSource) -> np.ndarray:
    """``n`` draws from Gamma(shape, rate) (rate parametrisation)."""
    shape, rate = _check_gamma_params(shape, rate)
    if n < 1:
        raise DomainError("sample size must be at least 1")
    return rng.generator.gamma(shape, 1.0 / rate, size=n)


def _check_unit_gamma(x, dof: float, rate: float):
    dof = _check_dof(dof)
    if math.isinf(dof):
        raise DomainError("unit gamma requires finite dof")
    rate = float(rate)
    if not (rate > 0 and math.isfinite(rate)):
        raise DomainError("unit gamma rate must be a positive finite real")
    x = np.asarray(x, dtype=float)
    if not np.all((x > 0) & (x < 1)):
        raise DomainError("unit gamma support is the open interval (0, 1)")
    return x, dof, rate


def unit_gamma_pdf(x, dof: float, rate: float):
    x, dof, rate = _check_unit_gamma(x, dof, rate)
    a = dof / 2.0
    logpdf = (
        a * math.log(rate)
        + (rate - 1.0) * np.log(x)
        + (a - 1.0) * np.log(-np.log(x))
        - gammaln(a)
    )
    return np.exp(logpdf)


def unit_gamma_cdf(x, dof: float, rate: float):
    x, dof, rate = _check_unit_gamma(x, dof, rate)
    return gammaincc(dof / 2.0, rate * (-np.log(x)))


def unit_gamma_quantile(q, dof: float, rate: float):
    _, dof, rate = _check_unit_gamma(0.5, dof, rate)
    q = _check_prob(q)
    return np.exp(-gammainccinv(dof / 2.0, q) / rate)


def unit_gamma_rate_for_median(median: float, dof: float) -> float:
    """Rate making ``median`` the unit-gamma median at the given dof.

    Closed-form inversion of ``UG_cdf(median) = 1/2``.
    """
    _, dof, _ = _check_unit_gamma(median, dof, 1.0)
    return float(gammainccinv(dof / 2.0, 0.5) / (-math.log(median)))
