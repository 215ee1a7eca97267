"""Elicitation of the random component (dispersion and variance power).

The expert fixes a covariate-free conditioning mean, imagines ``draws``
hypothetical observations at it, and states lower bounds of two central
credible intervals for the sample mean.  Matching those bounds to the
generalised-t law of the sample mean under ``lam ~ Gamma(dof/2, rate/2)``
pins down ``dof`` from the quantile ratio and then ``rate`` from either
interval.  The quantile-ratio equation has a solution only when the stated
ratio sits strictly below its normal-limit bound; the solver works on a log
bracket and collapses to the known-dispersion sentinel above the upper end.

For the compound Poisson family the variance power is elicited separately
from the median of the probability of observing an exact zero, whose induced
law is a unit gamma with closed-form quantiles.

Monte Carlo utilities simulate sample means jointly with the dispersion and
summarise the discrepancy between the exact law and its t approximation
(Kolmogorov distance with a DKW band, and a Kullback-Leibler estimate for
the continuous families).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammainccinv, ndtri

from .errors import ConsistencyError, DomainError, SolverError
from .families import (
    Family,
    sample_ed,
    sample_studentised_simplex,
    _simplex_deviance,
)
from .rng import RandomSource
from .tdist import gamma_sample, student_t_cdf, student_t_quantile

__all__ = [
    "DispersionSpec",
    "PowerResult",
    "DiscrepancyReport",
    "elicit_dispersion",
    "solve_sample_mean_tail",
    "sample_mean_quantile",
    "berry_esseen_bound",
    "sample_mean_mc",
    "discrepancy_report",
    "elicit_power_parameter",
    "known_power_rate",
    "lognormal_transform",
    "BERRY_ESSEEN_CONSTANT",
]

BERRY_ESSEEN_CONSTANT = 0.469

_SHAPE_BRACKET = (1e-2, 1e6)


@dataclass(frozen=True)
class DispersionSpec:
    """Gamma law of the inverse dispersion, or a known dispersion.

    ``lam ~ Gamma(dof/2, rate/2)`` in the rate parametrisation; ``dof`` is
    also the degrees of freedom of every generalised-t quantity built on it.
    Known dispersion is the sentinel ``dof = rate = inf`` with ``phi`` set.
    Elicitation provenance (conditioning mean, hypothetical sample size,
    stated interval bounds) rides along for transcripts and feedback.
    """

    dof: float
    rate: float
    phi: float | None = None
    mean_scale: float | None = None
    mean0: float | None = None
    draws: int | None = None
    lower1: float | None = None
    prob1: float | None = None
    lower2: float | None = None
    prob2: float | None = None

    def __post_init__(self):
        known = math.isinf(self.dof)
        if known != math.isinf(self.rate):
            raise DomainError("dof and rate must be infinite together (known dispersion)")
        if known:
            if self.phi is None or not (self.phi > 0 and math.isfinite(self.phi)):
                raise DomainError("known dispersion requires a positive finite phi")
        else:
            if not (self.dof > 0 and self.rate > 0):
                raise DomainError("dof and rate must be positive")
            if self.phi is not None:
                raise DomainError("phi is only set for the known-dispersion sentinel")

    @classmethod
    def known(cls, phi: float) -> "DispersionSpec":
        return cls(dof=math.inf, rate=math.inf, phi=float(phi))

    @property
    def is_known(self) -> bool:
        return math.isinf(self.dof)

    @property
    def scale_factor(self) -> float:
        """Multiplier turning an elicited squared scale into the t one:
        rate/dof, or phi itself under the sentinel."""
        return self.phi if self.is_known else self.rate / self.dof

    def as_dict(self) -> dict[str, Any]:
        return {
            "dof": self.dof,
            "rate": self.rate,
            "phi": self.phi,
            "mean_scale": self.mean_scale,
            "mean0": self.mean0,
            "draws": self.draws,
            "lower1": self.lower1,
            "prob1": self.prob1,
            "lower2": self.lower2,
            "prob2": self.prob2,
        }


@dataclass(frozen=True)
class PowerResult:
    """Elicited compound Poisson variance power with its induced rates."""

    power: float
    rate: float
    zero_rate: float  # rate of the unit-gamma law of the zero probability


@dataclass(frozen=True)
class DiscrepancyReport:
    """Monte Carlo discrepancy between the sample-mean law and its t
    approximation.  ``kl_estimate`` is None when the family has no usable
    continuous density (partial report)."""

    family: str
    mean0: float
    draws: int
    n: int
    kolmogorov: float
    dkw_epsilon: float
    within_band: bool
    kl_estimate: float | None
    kl_stderr: float | None
    partial: bool

    def as_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "mean0": self.mean0,
            "draws": self.draws,
            "n": self.n,
            "kolmogorov": self.kolmogorov,
            "dkw_epsilon": self.dkw_epsilon,
            "within_band": self.within_band,
            "kl_estimate": self.kl_estimate,
            "kl_stderr": self.kl_stderr,
            "partial": self.partial,
        }


def _validate_interval_inputs(mean0, draws, lower1, prob1, lower2, prob2, support):
    if not (isinstance(draws, (int, np.integer)) and draws >= 1):
        raise DomainError("hypothetical sample size must be an integer >= 1")
    if not (0.0 < prob1 < prob2 < 1.0):
        raise DomainError("interval probabilities must satisfy 0 < prob1 < prob2 < 1")
    lo, hi = support
    for val, what in ((mean0, "conditioning mean"), (lower1, "first lower bound"), (lower2, "second lower bound")):
        if not (math.isfinite(val) and lo < val < hi):
            raise DomainError(f"{what} must lie in the open mean domain ({lo}, {hi})")
    if not (lower2 < lower1 < mean0):
        raise DomainError("need lower2 < lower1 < mean0: wider intervals reach lower")


def solve_sample_mean_tail(
    mean0: float,
    draws: int,
    lower1: float,
    prob1: float,
    lower2: float,
    prob2: float,
    support: tuple[float, float] = (-math.inf, math.inf),
) -> tuple[float, float]:
    """Solve the quantile-ratio equation for ``(dof, mean_scale)``.

    Family-free core shared by the full dispersion elicitation and the
    compound Poisson flow (which defers the rate to the power step).
    Returns ``dof = inf`` when the solution collapses to the
    known-dispersion sentinel (shape above the bracket).
    """
    _validate_interval_inputs(mean0, draws, lower1, prob1, lower2, prob2, support)
    q1 = (1.0 - prob1) / 2.0
    q2 = (1.0 - prob2) / 2.0
    target = (lower1 - mean0) / (lower2 - mean0)
    bound = ndtri(q1) / ndtri(q2)
    if target >= bound:
        raise ConsistencyError(
            "stated quantile ratio {:.6g} is not strictly below the normal-limit "
            "bound {:.6g}; no t law matches".format(target, bound),
            admissible=(mean0 + bound * (lower2 - mean0), mean0),
        )

    def ratio_gap(log_dof: float) -> float:
        dof = math.exp(log_dof)
        return float(student_t_quantile(q1, dof) / student_t_quantile(q2, dof)) - target

    lo, hi = _SHAPE_BRACKET
    if ratio_gap(math.log(hi)) <= 0.0:
        # heavier than any shape in the bracket never happens here; this is
        # the near-normal side: collapse to the known-dispersion sentinel
        mean_scale = ((lower2 - mean0) / ndtri(q2)) ** 2
        return math.inf, float(mean_scale)
    if ratio_gap(math.log(lo)) >= 0.0:
        raise SolverError(
            f"no dispersion shape inside the bracket {_SHAPE_BRACKET} matches the "
            "stated intervals (tails heavier than the supported range)"
        )
    log_dof = brentq(ratio_gap, math.log(lo), math.log(hi), xtol=1e-14, rtol=8.9e-16, maxiter=200)
    dof = math.exp(log_dof)
    mean_scale = ((lower2 - mean0) / float(student_t_quantile(q2, dof))) ** 2

    for lower, prob in ((lower1, prob1), (lower2, prob2)):
        back = sample_mean_quantile((1.0 - prob) / 2.0, mean0, mean_scale, dof)
        if abs(back - lower) > 1e-8 * max(1.0, abs(lower)):
            raise SolverError("dispersion solve failed its quantile self-check")
    return float(dof), float(mean_scale)


def sample_mean_quantile(q, mean0: float, mean_scale: float, dof: float):
    """Quantile of the t approximation of the sample mean."""
    return mean0 + math.sqrt(mean_scale) * student_t_quantile(q, dof)


def elicit_dispersion(
    mean0: float,
    draws: int,
    lower1: float,
    prob1: float,
    lower2: float,
    prob2: float,
    family: Family,
) -> DispersionSpec:
    """Full dispersion elicitation for a family with a usable variance
    function.  Collapses to the known sentinel when the solved shape exceeds
    the bracket."""
    dof, mean_scale = solve_sample_mean_tail(
        mean0, draws, lower1, prob1, lower2, prob2, family.support
    )
    v0 = float(family.variance(mean0))
    prov = dict(
        mean_scale=mean_scale, mean0=float(mean0), draws=int(draws),
        lower1=float(lower1), prob1=float(prob1), lower2=float(lower2), prob2=float(prob2),
    )
    if math.isinf(dof):
        phi = mean_scale * draws / v0
        return DispersionSpec(dof=math.inf, rate=math.inf, phi=phi, **prov)
    rate = mean_scale * draws * dof / v0
    return DispersionSpec(dof=dof, rate=rate, **prov)


def berry_esseen_bound(kurtosis: float, draws: int) -> float:
    """Berry-Esseen bound 0.469 sqrt(kurtosis) / sqrt(draws) on the
    Kolmogorov distance between the standardised sample mean and the
    normal."""
    if not (math.isfinite(kurtosis) and kurtosis >= 1.0):
        raise DomainError("standardised fourth moment is at least 1")
    if not (isinstance(draws, (int, np.integer)) and draws >= 1):
        raise DomainError("sample size must be an integer >= 1")
    return BERRY_ESSEEN_CONSTANT * math.sqrt(kurtosis) / math.sqrt(draws)


def sample_mean_mc(
    family: Family,
    spec: DispersionSpec,
    mean0: float,
    draws: int,
    n: int,
    rng: RandomSource,
    acknowledge_approx: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """``n`` joint draws ``(sample mean, lam)`` at the conditioning mean.

    Families closed under convolution are simulated exactly: the mean of
    ``draws`` observations is one observation with dispersion ``phi/draws``.
    The simplex is not closed; its small-mean approximation must be
    acknowledged explicitly, and is simulated by drawing the sample mean
    from the Studentised simplex marginal and completing the pair with the
    conjugate gamma conditional, so that ``lam`` keeps its marginal law.
    """
    family.require_mean(mean0)
    if n < 1:
        raise DomainError("need at least one Monte Carlo draw")
    if not (isinstance(draws, (int, np.integer)) and draws >= 1):
        raise DomainError("sample size must be an integer >= 1")
    if not family.supports_convolution:
        if family.name != "simplex":
            raise DomainError(f"family {family.name!r} has no sample-mean simulation")
        if not acknowledge_approx:
            raise DomainError(
                "simplex sample means use the small-mean approximation; "
                "pass acknowledge_approx=True to accept it"
            )
        if spec.is_known:
            lam = np.full(n, 1.0 / spec.phi)
            means = sample_ed(family, mean0, spec.phi / draws, n, rng)
            return means, lam
        means = sample_studentised_simplex(mean0, spec.dof, spec.rate / draws, n, rng)
        dev = _simplex_deviance(means, mean0)
        # conjugate completion: lam' | mean ~ Gamma((dof+1)/2, (rate/draws + d)/2)
        lam_w = rng.generator.gamma((spec.dof + 1.0) / 2.0, 2.0 / (spec.rate / draws + dev))
        return means, lam_w / draws
    if spec.is_known:
        lam = np.full(n, 1.0 / spec.phi)
        means = sample_ed(family, mean0, spec.phi / draws, n, rng)
        return means, lam
    lam = gamma_sample(spec.dof / 2.0, spec.rate / 2.0, n, rng)
    means = sample_ed(family, mean0, 1.0 / (draws * lam), n, rng)
    return means, lam


def discrepancy_report(
    means: np.ndarray,
    lam: np.ndarray,
    family: Family,
    spec: DispersionSpec,
    mean0: float,
    draws: int,
    alpha: float = 0.05,
) -> DiscrepancyReport:
    """Kolmogorov distance (with its DKW band) between the simulated sample
    means and the t approximation, plus a Kullback-Leibler estimate of the
    conditional approximation error where a continuous density exists."""
    means = np.asarray(means, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if means.ndim != 1 or means.shape != lam.shape or means.size < 2:
        raise DomainError("need matched 1-d arrays of at least two draws")
    if not (0.0 < alpha < 1.0):
        raise DomainError("band level alpha must lie in (0, 1)")
    n = means.size
    v0 = float(family.variance(mean0))
    scale = spec.scale_factor * v0 / draws
    z = (np.sort(means) - mean0) / math.sqrt(scale)
    cdf = student_t_cdf(z, spec.dof)
    steps = np.arange(1, n + 1) / n
    kolmogorov = float(max(np.max(steps - cdf), np.max(cdf - (steps - 1.0 / n))))
    dkw = math.sqrt(-math.log(alpha / 2.0) / (2.0 * n))

    kl_est = kl_se = None
    partial = not family.has_density
    if family.has_density:
        cond_var = v0 / (draws * lam)
        terms = family.logpdf(means, mean0, 1.0 / (draws * lam)) - (
            -0.5 * ((means - mean0) ** 2 / cond_var + np.log(2.0 * math.pi * cond_var))
        )
        kl_est = float(np.mean(terms))
        kl_se = float(np.sqrt(np.sum((terms - kl_est) ** 2)) / n)
    return DiscrepancyReport(
        family=family.name,
        mean0=float(mean0),
        draws=int(draws),
        n=n,
        kolmogorov=kolmogorov,
        dkw_epsilon=dkw,
        within_band=kolmogorov <= dkw,
        kl_estimate=kl_est,
        kl_stderr=kl_se,
        partial=partial,
    )


def elicit_power_parameter(
    zero_median: float,
    mean0: float,
    draws: int,
    dof: float,
    mean_scale: float,
) -> PowerResult:
    """Variance power of the compound Poisson from the elicited median of
    the exact-zero probability.

    The zero probability is ``exp(-G)`` for a gamma variate G, a unit gamma
    whose rate follows from the stated median in closed form.  Feasibility
    requires the rate below ``mean_scale * draws * dof / (2 mean0^2)``,
    equivalently a power inside (1, 2).
    """
    if not (0.0 < zero_median < 1.0):
        raise DomainError("the zero-probability median must lie in (0, 1)")
    if not (mean0 > 0 and math.isfinite(mean0)):
        raise DomainError("conditioning mean must be positive")
    if not (isinstance(draws, (int, np.integer)) and draws >= 1):
        raise DomainError("sample size must be an integer >= 1")
    if not (math.isfinite(dof) and dof > 0 and mean_scale > 0):
        raise DomainError("power elicitation requires a finite elicited dispersion shape")
    med_gamma = float(gammainccinv(dof / 2.0, 0.5))
    zero_rate = med_gamma / (-math.log(zero_median))
    bound = mean_scale * draws * dof / (2.0 * mean0**2)
    if not (0.0 < zero_rate < bound):
        c_max = math.exp(-med_gamma / bound)
        raise ConsistencyError(
            "stated zero-probability median implies a unit-gamma rate of "
            f"{zero_rate:.6g}, outside (0, {bound:.6g})",
            admissible=(0.0, c_max),
        )
    power = 2.0 * (1.0 - zero_rate * mean0**2 / (mean_scale * draws * dof))
    rate = 2.0 * zero_rate * mean0 ** (2.0 - power) / (2.0 - power)
    return PowerResult(power=float(power), rate=float(rate), zero_rate=float(zero_rate))


def power_median_bounds(mean0: float, draws: int, dof: float, mean_scale: float) -> tuple[float, float]:
    """Open interval of zero-probability medians the power elicitation accepts."""
    if not (math.isfinite(dof) and dof > 0 and mean_scale > 0 and mean0 > 0):
        raise DomainError("requires a finite elicited dispersion shape and positive mean")
    med_gamma = float(gammainccinv(dof / 2.0, 0.5))
    bound = mean_scale * draws * dof / (2.0 * mean0**2)
    return (0.0, math.exp(-med_gamma / bound))


def known_power_rate(power: float, mean0: float, draws: int, dof: float, mean_scale: float) -> float:
    """Gamma rate when the variance power is asserted rather than elicited."""
    if not (1.0 < power < 2.0):
        raise DomainError("compound Poisson power must lie strictly in (1, 2)")
    if not (math.isfinite(dof) and dof > 0 and mean_scale > 0 and mean0 > 0):
        raise DomainError("requires a finite elicited dispersion shape and positive mean")
    return mean_scale * draws * dof / mean0**power


def lognormal_transform(loc, scale, base: float = 10.0):
    """Map location/scale elicited on the log-``base`` scale to natural logs.

    With k = 1/ln(base): loc/k and scale/k**2.
    """
    if not (base > 0 and base != 1 and math.isfinite(base)):
        raise DomainError("log base must be positive, finite and not 1")
    k = 1.0 / math.log(base)
    loc = np.asarray(loc, dtype=float)
    scale = np.asarray(scale, dtype=float)
    return loc / k, scale / (k * k)
