"""Systematic-component elicitation over a D-vine of conditional medians.

Scenario linear predictors are jointly generalised-t:

    eta ~ St(loc, scale, rate, dof),

elicited sequentially.  Marginals give ``loc`` and the diagonal of ``scale``
from central credible intervals on the mean scale.  Tree level l then fixes
a conditioning value for scenario l and asks for the conditional median of
every later scenario; each answer determines one new off-diagonal entry
through the regression identity

    scale[k, l] = (cond_median_predictor - loc[k] - scale[k, :l-1] h[:l-1]) / h[l-1],

with h = scale[:l, :l]^-1 (eta_hat[:l] - loc[:l]).  Every entry is screened
by the conditional-variance contraction (the partial correlation given the
first l-1 scenarios must stay inside the open unit interval), and rejected
answers carry the exact interval of medians that would have been accepted.

Partial correlations collected level by level form a canonical vine that
maps to the full correlation matrix by the telescoping recursion
(``pcorr_to_corr``); zeroing levels above a truncation level gives the
truncated matrix used for divergence reporting.

Conditioning values are proposed as bounds of level-(l-1) central credible
intervals, either under the elicited dispersion law (t tails, dof growing
and rate inflated by the realised quadratic form) or under unit dispersion
(normal tails at lam = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import ndtri

from .dispersion import DispersionSpec
from .errors import ConsistencyError, DomainError, PhaseError, SolverError
from .links import LinkFunction
from .tdist import student_t_cdf, student_t_pdf, student_t_quantile

__all__ = [
    "MarginalFit",
    "FeedbackCurve",
    "VineState",
    "elicit_marginal",
    "marginal_feedback",
    "pcorr_to_corr",
    "FEASIBLE_MARGIN",
    "CHOLESKY_CONDITION_LIMIT",
]

FEASIBLE_MARGIN = 1e-6
CHOLESKY_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class MarginalFit:
    """Location and squared scale of one scenario's linear predictor."""

    loc: float
    scale: float


@dataclass(frozen=True)
class FeedbackCurve:
    """Grid rendering of a mean-scale distribution for facilitation."""

    median: float
    quantiles: dict[float, float]
    grid: np.ndarray
    density: np.ndarray
    cdf: np.ndarray

    def as_dict(self) -> dict[str, Any]:
        return {
            "median": self.median,
            "quantiles": {str(p): v for p, v in self.quantiles.items()},
            "grid": self.grid.tolist(),
            "density": self.density.tolist(),
            "cdf": self.cdf.tolist(),
        }


def elicit_marginal(
    lo: float, hi: float, prob: float, link: LinkFunction, spec: DispersionSpec
) -> MarginalFit:
    """Fit one marginal from a central credible interval on the mean scale.

    The midpoint of the interval on the linear-predictor scale is the
    location; the half width divided by the matching t quantile gives the
    scale, corrected by the dispersion mixing factor.
    """
    if not (0.0 < prob < 1.0):
        raise DomainError("interval probability must lie in (0, 1)")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError("need a non-degenerate interval lo < hi")
    link.require(lo, "interval lower bound")
    link.require(hi, "interval upper bound")
    g_lo = float(link.to_linear(lo))
    g_hi = float(link.to_linear(hi))
    loc = 0.5 * (g_lo + g_hi)
    tq = float(student_t_quantile((1.0 + prob) / 2.0, spec.dof))
    scale = ((g_hi - loc) / tq) ** 2 / spec.scale_factor
    if not (scale > 0 and math.isfinite(scale)):
        raise DomainError("stated interval degenerates on the linear-predictor scale")
    return MarginalFit(loc=loc, scale=float(scale))


def _mean_scale_curve(
    loc: float,
    squared_scale: float,
    dof: float,
    link: LinkFunction,
    probs: tuple[float, ...],
    grid_size: int,
) -> FeedbackCurve:
    sd = math.sqrt(squared_scale)
    sgn = link.sign

    def quantile(q: float) -> float:
        q_eff = q if sgn > 0 else 1.0 - q
        return float(link.to_mean(loc + sd * float(student_t_quantile(q_eff, dof))))

    quantiles = {float(p): quantile(float(p)) for p in probs}
    edge_lo, edge_hi = quantile(5e-4), quantile(1.0 - 5e-4)
    lo = float(link.clamp(min(edge_lo, edge_hi)))
    hi = float(link.clamp(max(edge_lo, edge_hi)))
    grid = np.linspace(lo, hi, grid_size)
    z = (np.asarray(link.to_linear(grid), dtype=float) - loc) / sd
    density = student_t_pdf(z, dof) / sd * np.abs(link.deriv(grid))
    cdf = student_t_cdf(sgn * z, dof)
    return FeedbackCurve(
        median=float(link.to_mean(loc)),
        quantiles=quantiles,
        grid=grid,
        density=density,
        cdf=cdf,
    )


def marginal_feedback(
    fit: MarginalFit,
    link: LinkFunction,
    spec: DispersionSpec,
    probs: tuple[float, ...] = (1.0 / 3.0, 0.5, 2.0 / 3.0),
    grid_size: int = 257,
) -> FeedbackCurve:
    """Density, cdf and quantiles of one scenario mean implied by its fit."""
    if grid_size < 16:
        raise DomainError("grid size too small to render feedback")
    return _mean_scale_curve(
        fit.loc, spec.scale_factor * fit.scale, spec.dof, link, tuple(probs), grid_size
    )


def pcorr_to_corr(partials: np.ndarray) -> np.ndarray:
    """Map a canonical-vine array of partial correlations to correlations.

    ``partials[l-1, k-1]`` (1-based l < k) is the correlation of scenarios
    l and k given scenarios 1..l-1.  The recursion peels conditioning
    variables off innermost first; level-1 entries pass through unchanged.
    """
    P = np.asarray(partials, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise DomainError("partial correlation array must be square")
    n = P.shape[0]
    iu = np.triu_indices(n, k=1)
    if np.any(np.abs(P[iu]) >= 1.0) or np.any(~np.isfinite(P[iu])):
        raise DomainError("partial correlations must lie strictly inside (-1, 1)")
    return _pcorr_to_corr_unchecked(P)


def _pcorr_to_corr_unchecked(P: np.ndarray) -> np.ndarray:
    n = P.shape[0]
    R = np.eye(n)
    if n >= 2:
        R[0, 1:] = P[0, 1:]
        R[1:, 0] = P[0, 1:]
    for l in range(2, n):
        for k in range(l + 1, n + 1):
            r = P[l - 1, k - 1]
            for g in range(l - 1, 0, -1):
                a, b = P[g - 1, l - 1], P[g - 1, k - 1]
                r = a * b + r * math.sqrt((1.0 - a * a) * (1.0 - b * b))
            R[l - 1, k - 1] = R[k - 1, l - 1] = r
    return R


def _slot_affine(P: np.ndarray, level: int, k: int) -> tuple[float, float]:
    """Coefficients (intercept, slope) of the affine map from the level-l
    partial correlation in cell (level, k) to the full correlation of
    scenarios level and k.  0-based ``k``; ``level`` is the 1-based tree
    level, pairing scenario level-1 (0-based) with scenario k."""
    intercept = 0.0
    slope = 1.0
    for g in range(level - 1, 0, -1):
        a, b = P[g - 1, level - 1], P[g - 1, k]
        intercept = a * b + intercept * math.sqrt((1.0 - a * a) * (1.0 - b * b))
        slope = slope * math.sqrt((1.0 - a * a) * (1.0 - b * b))
    return intercept, slope


def _guarded_solve(block: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    if np.any(~np.isfinite(block)):
        raise SolverError(f"{what} has unset entries")
    cond = np.linalg.cond(block)
    if not np.isfinite(cond) or cond > CHOLESKY_CONDITION_LIMIT:
        raise SolverError(
            f"{what} is numerically singular (condition {cond:.3g} beyond "
            f"{CHOLESKY_CONDITION_LIMIT:.0e})"
        )
    try:
        factor = cho_factor(block, lower=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverError(f"{what} is not positive definite") from exc
    return cho_solve(factor, rhs)


class VineState:
    """Mutable elicitation state of the joint linear-predictor law.

    Construction order is enforced: all marginals, then tree levels in
    sequence, each level opened by committing a conditioning value and
    closed when every later scenario's conditional median is recorded.
    """

    def __init__(self, n: int, link: LinkFunction, spec: DispersionSpec):
        if n < 1:
            raise DomainError("need at least one scenario")
        self.n = int(n)
        self.link = link
        self.spec = spec
        self.loc = np.full(n, np.nan)
        self.scale = np.full((n, n), np.nan)
        self.partials = np.full((n, n), np.nan)
        self.medians: dict[tuple[int, int], float] = {}
        self.cond_eta = np.full(n, np.nan)
        self.cond_scale = np.full((n, n), np.nan)  # [level, scenario]
        self.completed_level = -1  # -1 until marginals done; 0 = marginals done
        self.active_level: int | None = None
        self._h: np.ndarray = np.empty(0)
        self._marginal_done = np.zeros(n, dtype=bool)

    # -- marginals ------------------------------------------------------------

    def set_marginal(self, i: int, fit: MarginalFit) -> None:
        if self.completed_level >= 0:
            raise PhaseError("marginals are already committed")
        if not (0 <= i < self.n):
            raise DomainError(f"scenario index {i} out of range 0..{self.n - 1}")
        self.loc[i] = fit.loc
        self.scale[i, i] = fit.scale
        self.cond_scale[0, i] = fit.scale
        self._marginal_done[i] = True
        if bool(np.all(self._marginal_done)):
            self.completed_level = 0

    # -- level management -----------------------------------------------------

    @property
    def max_level(self) -> int:
        return self.n - 1

    def _require_active(self) -> int:
        if self.active_level is None:
            raise PhaseError("no tree level is open; commit a conditioning value first")
        return self.active_level

    def pending_cells(self) -> list[int]:
        if self.active_level is None:
            return []
        l = self.active_level
        return [k for k in range(l, self.n) if (l, k) not in self.medians]

    def begin_level(self, eta_value: float) -> None:
        """Open tree level completed+1 by committing the conditioning value
        (linear-predictor scale) for its scenario."""
        if self.completed_level < 0:
            raise PhaseError("marginals must be complete before any tree level")
        if self.active_level is not None:
            raise PhaseError(f"tree level {self.active_level} is still open")
        l = self.completed_level + 1
        if l > self.max_level:
            raise PhaseError("all tree levels are complete")
        if not math.isfinite(eta_value):
            raise DomainError("conditioning value must be finite")
        self.cond_eta[l - 1] = float(eta_value)
        try:
            block = self.scale[:l, :l]
            h = _guarded_solve(block, self.cond_eta[:l] - self.loc[:l], f"level-{l} scale block")
            if abs(h[l - 1]) < 1e-300:
                raise DomainError(
                    "conditioning value coincides with the conditional location; "
                    "the regression step would be degenerate"
                )
        except Exception:
            self.cond_eta[l - 1] = np.nan
            raise
        self._h = h
        self.active_level = l

    # -- conditional structure ------------------------------------------------

    def _h_at(self, depth: int) -> np.ndarray:
        """Regression weights for the first ``depth`` conditioning values.

        These are the components of the depth-dimensional solve; a longer
        open-level solve cannot be sliced down because the components of
        nested solves differ.
        """
        if depth == 0:
            return np.empty(0)
        if np.any(~np.isfinite(self.cond_eta[:depth])):
            raise PhaseError("conditioning values are not committed to this depth")
        if self._h.size == depth:
            return self._h
        return _guarded_solve(
            self.scale[:depth, :depth],
            self.cond_eta[:depth] - self.loc[:depth],
            f"depth-{depth} scale block",
        )

    def conditional_location(self, k: int, level: int | None = None) -> float:
        """Location of scenario k given the first ``level`` conditioning
        values (defaults to the committed depth)."""
        depth = self.completed_level if level is None else level
        if depth < 0:
            raise PhaseError("marginals are not complete")
        if not (0 <= k < self.n):
            raise DomainError("scenario index out of range")
        if depth == 0:
            return float(self.loc[k])
        if k < depth:
            raise DomainError("scenario is part of the conditioning set")
        if np.any(~np.isfinite(self.scale[k, :depth])):
            raise PhaseError("conditional location needs all lower-level entries")
        return float(self.loc[k] + self.scale[k, :depth] @ self._h_at(depth))

    def conditional_variance(self, k: int, depth: int) -> float:
        """V of scenario k given the first ``depth`` scenarios (committed)."""
        if depth == 0:
            return float(self.scale[k, k])
        val = self.cond_scale[depth, k]
        if not np.isfinite(val):
            raise PhaseError("conditional variance not yet determined at this depth")
        return float(val)

    def _tail(self, depth: int) -> tuple[float, float]:
        """(dof, factor) of the conditional t given ``depth`` values."""
        if self.spec.is_known:
            return math.inf, self.spec.phi
        if depth == 0:
            return self.spec.dof, self.spec.scale_factor
        block = self.scale[:depth, :depth]
        diff = self.cond_eta[:depth] - self.loc[:depth]
        zeta = float(diff @ _guarded_solve(block, diff, f"depth-{depth} scale block"))
        dof = self.spec.dof + depth
        return dof, (self.spec.rate + zeta) / dof

    def conditional_quantile(self, k: int, q: float, depth: int) -> float:
        """Mean-scale conditional quantile of scenario k at depth."""
        loc = self.conditional_location(k, depth)
        var = self.conditional_variance(k, depth)
        dof, factor = self._tail(depth)
        q_eff = q if self.link.sign > 0 else 1.0 - q
        eta = loc + math.sqrt(factor * var) * float(student_t_quantile(q_eff, dof))
        return float(self.link.to_mean(eta))

    # -- conditioning-value proposal -------------------------------------------

    def propose_conditioning_value(
        self, prob: float, side: str, mode: str = "elicited"
    ) -> dict[str, Any]:
        """Suggest the next level's conditioning value as a bound of the
        level-(completed) central credible interval of its scenario.

        ``mode='elicited'`` uses the conditional t under the elicited
        dispersion; ``mode='unit'`` uses normal tails at unit dispersion
        (lam = 1), the variant used when dispersion uncertainty should not
        widen the conditioning grid.
        """
        if side not in ("upper", "lower"):
            raise DomainError("side must be 'upper' or 'lower'")
        if mode not in ("elicited", "unit"):
            raise DomainError("mode must be 'elicited' or 'unit'")
        if not (0.0 < prob < 1.0):
            raise DomainError("interval probability must lie in (0, 1)")
        if self.active_level is not None:
            raise PhaseError("close the open level before proposing the next value")
        depth = self.completed_level
        if depth < 0:
            raise PhaseError("marginals are not complete")
        scenario = depth  # 0-based scenario opened by level depth+1
        if scenario >= self.n or depth + 1 > self.max_level:
            raise PhaseError("all tree levels are complete")
        loc = self.conditional_location(scenario, depth)
        var = self.conditional_variance(scenario, depth)
        if mode == "elicited":
            dof, factor = self._tail(depth)
            half = math.sqrt(factor * var) * float(
                student_t_quantile((1.0 + prob) / 2.0, dof)
            )
        else:
            half = math.sqrt(var) * float(ndtri((1.0 + prob) / 2.0))
        eta = loc + half if side == "upper" else loc - half
        return {
            "level": depth + 1,
            "scenario": scenario,
            "eta": float(eta),
            "mean": float(self.link.to_mean(eta)),
            "conditional_eta_location": loc,
            "mode": mode,
            "side": side,
            "prob": prob,
        }

    # -- feasible medians and recording ----------------------------------------

    def feasible_median_bounds(self, k: int) -> tuple[float, float]:
        """Open interval of conditional medians acceptable for cell
        (active level, k), shrunk by the relative margin that keeps the
        implied partial correlation inside +-(1 - 1e-6)."""
        l = self._require_active()
        if not (l <= k < self.n):
            raise DomainError(f"scenario {k} is not elicited at level {l}")
        intercept, slope = _slot_affine(self.partials, l, k)
        sd_prod = math.sqrt(self.scale[k, k] * self.scale[l - 1, l - 1])
        base = float(self.loc[k])
        if l > 1:
            base += float(self.scale[k, : l - 1] @ self._h[: l - 1])
        h_last = self._h[l - 1]
        rho_lim = 1.0 - FEASIBLE_MARGIN
        ends = []
        for rho in (-rho_lim, rho_lim):
            eta = base + sd_prod * (intercept + slope * rho) * h_last
            ends.append(float(self.link.to_mean(eta)))
        lo, hi = (min(ends), max(ends))
        if not lo < hi:
            raise SolverError("feasible median interval collapsed")
        return lo, hi

    def preview_median(self, k: int, median: float) -> dict[str, Any]:
        """Evaluate a candidate conditional median without committing it.

        Returns the implied scale entry, partial correlation, contracted
        conditional variance, and the feasible interval; raises
        ConsistencyError (with that interval) if the candidate is outside.
        """
        l = self._require_active()
        if not (l <= k < self.n):
            raise DomainError(f"scenario {k} is not elicited at level {l}")
        self.link.require(median, "conditional median")
        eta_med = float(self.link.to_linear(median))
        base = float(self.loc[k])
        if l > 1:
            base += float(self.scale[k, : l - 1] @ self._h[: l - 1])
        entry = (eta_med - base) / self._h[l - 1]

        # partial correlation given the first l-1 scenarios
        if l == 1:
            num = entry
        else:
            blk = self.scale[: l - 1, : l - 1]
            num = entry - float(
                self.scale[l - 1, : l - 1] @ _guarded_solve(blk, self.scale[: l - 1, k], "scale block")
            )
        den = math.sqrt(
            self.conditional_variance(l - 1, l - 1) * self.conditional_variance(k, l - 1)
        )
        rho = num / den
        bounds = self.feasible_median_bounds(k)
        if not (abs(rho) <= 1.0 - FEASIBLE_MARGIN):
            raise ConsistencyError(
                f"conditional median {median:.6g} implies partial correlation "
                f"{rho:.8g} outside +-{1.0 - FEASIBLE_MARGIN}",
                admissible=bounds,
            )
        prev_var = self.conditional_variance(k, l - 1)
        row = np.append(self.scale[k, : l - 1], entry)
        blk_l = self.scale[:l, :l]
        cond_var = float(self.scale[k, k] - row @ _guarded_solve(blk_l, row, "scale block"))
        if not (cond_var > 0.0):
            raise SolverError("conditional variance lost positivity unexpectedly")
        return {
            "level": l,
            "scenario": k,
            "median": float(median),
            "scale_entry": float(entry),
            "partial_corr": float(rho),
            "conditional_variance": cond_var,
            "previous_conditional_variance": prev_var,
            "feasible": [bounds[0], bounds[1]],
        }

    def record_median(self, k: int, median: float) -> dict[str, Any]:
        """Commit a conditional median into cell (active level, k)."""
        l = self._require_active()
        if (l, k) in self.medians:
            raise PhaseError(f"cell (level {l}, scenario {k}) is already recorded")
        info = self.preview_median(k, median)
        self.scale[k, l - 1] = self.scale[l - 1, k] = info["scale_entry"]
        self.partials[l - 1, k] = info["partial_corr"]
        self.cond_scale[l, k] = info["conditional_variance"]
        self.medians[(l, k)] = float(median)
        if not self.pending_cells():
            self.completed_level = l
            self.active_level = None
        return info

    # -- assembled quantities ----------------------------------------------------

    def corr(self, truncation: int | None = None) -> np.ndarray:
        """Correlation matrix from the recorded partials, optionally with
        all levels above ``truncation`` zeroed."""
        t = self.completed_level if truncation is None else int(truncation)
        if not (0 <= t <= self.completed_level):
            raise DomainError(
                f"truncation level must lie in 0..{self.completed_level} (completed levels)"
            )
        P = np.zeros((self.n, self.n))
        for (l, k), _ in self.medians.items():
            if l <= t:
                P[l - 1, k] = self.partials[l - 1, k]
        return _pcorr_to_corr_unchecked(P)

    def cov(self, truncation: int | None = None) -> np.ndarray:
        """Scale matrix; truncation preserves the elicited diagonal."""
        if self.completed_level < 0:
            raise PhaseError("marginals are not complete")
        d = np.sqrt(np.diag(self.scale))
        R = self.corr(truncation)
        return (d[:, None] * R) * d[None, :]

    def snapshot(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "loc": self.loc.tolist(),
            "scale": self.scale.tolist(),
            "partials": self.partials.tolist(),
            "cond_eta": self.cond_eta.tolist(),
            "completed_level": self.completed_level,
            "active_level": self.active_level,
            "medians": {f"{l}:{k}": v for (l, k), v in sorted(self.medians.items())},
        }
