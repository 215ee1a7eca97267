"""Interactive elicitation sessions and their replayable transcripts.

A session walks the fixed phase order: the random component (dispersion
quantiles, or a known value), the variance power when the family is a
compound Poisson without one, one marginal interval per scenario, then the
dependence tree level by level, each level opened by a conditioning value
and closed by the conditional medians of all later scenarios.  Truncating
at a completed level or finishing the tree unlocks prior induction, which
concludes the session.

Every assessment is a two-step loop: an assess event stores a pending
result and returns feedback, a matching accept event commits it.  A fresh
assess overwrites only the pending value, never committed state, and inputs
the engine rejects raise without appending anything, so the event log holds
exactly the defensible history.

Transcripts are line-delimited JSON with canonical key order and
shortest-round-trip decimal floats: one header line, one line per event
carrying the resulting parameter deltas, and a final snapshot line.
Replaying the events recomputes every delta and the snapshot and demands
bit-identical agreement.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .dispersion import (
    DispersionSpec,
    discrepancy_report,
    elicit_dispersion,
    elicit_power_parameter,
    known_power_rate,
    power_median_bounds,
    sample_mean_mc,
    sample_mean_quantile,
    solve_sample_mean_tail,
)
from .errors import (
    ConsistencyError,
    DomainError,
    ElicitationError,
    PhaseError,
    TranscriptError,
)
from .families import Family, get_family
from .projection import (
    DesignMatrix,
    InducedPrior,
    induce_prior,
    truncation_divergence_series,
)
from .rng import RandomSource
from .scenarios import ScenarioSet, build_multinomial_scenarios  # noqa: F401
from .tdist import student_t_pdf, unit_gamma_quantile
from .vine import MarginalFit, VineState, _mean_scale_curve, elicit_marginal, marginal_feedback

__all__ = [
    "Session",
    "advance",
    "feedback_payload",
    "save_transcript",
    "load_and_replay",
    "build_multinomial_scenarios",
    "SCHEMA_NAME",
    "SCHEMA_VERSION",
]

SCHEMA_NAME = "vineprior-transcript"
SCHEMA_VERSION = 1
DEFAULT_PROBS = (1.0 / 3.0, 0.8)

# line-delimited JSON; this object documents each line kind
TRANSCRIPT_SCHEMA = {
    "schema": SCHEMA_NAME,
    "version": SCHEMA_VERSION,
    "encoding": (
        "UTF-8 NDJSON; every line is one JSON object with sorted keys, no "
        "extra whitespace, floats as shortest round-trip decimals, "
        "non-finite numbers as the strings 'inf'/'-inf', unset entries null"
    ),
    "lines": {
        "header (first line)": {
            "schema": "constant vineprior-transcript",
            "version": "integer; readers reject other versions",
            "seed": "non-negative integer driving all Monte Carlo",
            "alpha": "diagnostic band level in (0, 1)",
            "family": "{name, power}; the setup choice, before any power event",
            "scenarios": (
                "{covariates, covariate_names, link, families, descriptions, "
                "known_phi}"
            ),
        },
        "event (one per line, in order)": {
            "seq": "0-based position; also the logical timestamp",
            "timestamp": "equals seq",
            "phase": "phase object observed before the event applied",
            "op": (
                "one of assess_dispersion, accept_dispersion, "
                "set_known_dispersion, assess_power, accept_power, "
                "set_known_power, assess_marginal, accept_marginal, "
                "choose_conditioning, assess_conditional, accept_conditional, "
                "truncate, induce"
            ),
            "inputs": "the stated quantities, verbatim; extra keys are kept",
            "revision": "true when an assess overwrote a pending assessment",
            "deltas": "parameter changes the event produced; replay must match",
        },
        "snapshot (optional last line)": {
            "snapshot": "full parameter state; replay must reproduce it exactly"
        },
    },
}


def canonical_json(obj: Any) -> str:
    """Canonical serialization: sorted keys, no whitespace, shortest
    round-trip decimal floats, non-finite numbers encoded as strings."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


class Session:
    """One expert, one scenario set, one replayable event log."""

    def __init__(
        self,
        scenarios: ScenarioSet,
        seed: int,
        family: Family | None = None,
        alpha: float = 0.05,
    ):
        RandomSource(seed)  # validates
        if not (0.0 < alpha < 1.0):
            raise DomainError("diagnostic level alpha must lie in (0, 1)")
        fam = family if family is not None else scenarios.families[0]
        if fam.name not in {f.name for f in scenarios.families}:
            raise DomainError(
                f"family {fam.name!r} is not among the session candidates"
            )
        self.scenarios = scenarios
        self.seed = int(seed)
        self.alpha = float(alpha)
        self.family = fam
        self._setup_power = fam.power if fam.name == "compound-poisson" else None
        self.spec: DispersionSpec | None = None
        self.partial: dict[str, Any] | None = None  # dispersion solved, rate awaits power
        self.pending: dict[str, Any] | None = None
        self.vine: VineState | None = None
        self.truncation: int | None = None
        self.prior: InducedPrior | None = None
        self.events: list[dict[str, Any]] = []
        self._phase = "setup"
        self._marginal_index = 0
        if scenarios.known_phi is not None:
            self._require_settled_power("a scenario set with fixed dispersion")
            self.spec = DispersionSpec.known(scenarios.known_phi)
            self._enter_marginals()

    # -- phase bookkeeping ------------------------------------------------------

    def _require_settled_power(self, context: str) -> None:
        if self.family.name == "compound-poisson" and self.family.power is None:
            raise DomainError(
                f"{context} requires the variance power up front; the power "
                "elicitation needs dispersion uncertainty to work against"
            )

    def _enter_marginals(self) -> None:
        self.vine = VineState(self.scenarios.n, self.scenarios.link, self.spec)
        self._marginal_index = 0
        self._phase = "marginals"

    def _after_marginals(self) -> None:
        self._phase = "vine_level" if self.vine.max_level >= 1 else "dependence_complete"

    @property
    def phase(self) -> dict[str, Any]:
        name = self._phase
        out: dict[str, Any] = {"name": name}
        if name == "marginals":
            out["scenario"] = self._marginal_index
        elif name == "vine_level":
            if self.vine.active_level is None:
                out["level"] = self.vine.completed_level + 1
                out["cell"] = None
            else:
                out["level"] = self.vine.active_level
                if self.pending is not None and self.pending["op"] == "assess_conditional":
                    out["cell"] = self.pending["cell"]
                else:
                    out["cell"] = min(self.vine.pending_cells())
        elif name == "truncated":
            out["level"] = self.truncation
        return out

    def legal_ops(self) -> list[str]:
        name = self._phase
        if name == "setup":
            return ["assess_dispersion", "set_known_dispersion"]
        if name == "random_component":
            ops = ["assess_dispersion", "set_known_dispersion"]
            if self.pending is not None:
                ops.append("accept_dispersion")
            return ops
        if name == "power_parameter":
            ops = ["assess_power", "set_known_power"]
            if self.pending is not None:
                ops.append("accept_power")
            return ops
        if name == "marginals":
            ops = ["assess_marginal"]
            if self.pending is not None:
                ops.append("accept_marginal")
            return ops
        if name == "vine_level":
            if self.vine.active_level is None:
                return ["choose_conditioning", "truncate"]
            ops = ["assess_conditional"]
            if self.pending is not None:
                ops.append("accept_conditional")
            ops.append("truncate")
            return ops
        if name == "dependence_complete":
            return ["truncate", "induce"]
        if name == "truncated":
            return ["induce"]
        return []

    def _check_phase(self, op: str, allowed: tuple[str, ...]) -> None:
        if self._phase not in allowed:
            raise PhaseError(
                f"operation {op!r} is not legal in phase {self._phase!r}; "
                f"legal operations: {self.legal_ops()}"
            )

    # -- event plumbing -----------------------------------------------------------

    def apply(self, op: str, inputs: dict[str, Any] | None = None) -> dict[str, Any]:
        """Run one event through the engine.

        Returns the appended event; raises (appending nothing) when the
        inputs are illegal for the phase or rejected by the engine.
        """
        handler = _HANDLERS.get(op)
        if handler is None:
            raise DomainError(f"unknown operation {op!r}")
        inputs = _jsonable(inputs or {})
        phase_before = self.phase
        try:
            deltas, revision = handler(self, inputs)
        except KeyError as exc:
            raise DomainError(
                f"missing required input {exc.args[0]!r} for {op!r}"
            ) from exc
        event = {
            "seq": len(self.events),
            "timestamp": len(self.events),
            "phase": phase_before,
            "op": op,
            "inputs": inputs,
            "revision": bool(revision),
            "deltas": _jsonable(deltas),
        }
        self.events.append(event)
        return event

    # -- handlers: random component ---------------------------------------------

    def _assess_dispersion(self, inputs: dict[str, Any]):
        self._check_phase("assess_dispersion", ("setup", "random_component"))
        mean0 = float(inputs["mean0"])
        draws = int(inputs["draws"])
        lower1 = float(inputs["lower1"])
        prob1 = float(inputs["prob1"])
        lower2 = float(inputs["lower2"])
        prob2 = float(inputs["prob2"])
        stated = {
            "mean0": mean0,
            "draws": draws,
            "lower1": lower1,
            "prob1": prob1,
            "lower2": lower2,
            "prob2": prob2,
        }
        if self.family.name == "compound-poisson" and self.family.power is None:
            dof, mean_scale = solve_sample_mean_tail(
                mean0, draws, lower1, prob1, lower2, prob2, self.family.support
            )
            if math.isinf(dof):
                raise ConsistencyError(
                    "stated intervals are consistent with a normal sample mean, "
                    "leaving no dispersion uncertainty for the power elicitation"
                )
            pend = {"dof": dof, "mean_scale": mean_scale, "rate": None, "phi": None}
        else:
            spec = elicit_dispersion(
                mean0, draws, lower1, prob1, lower2, prob2, self.family
            )
            pend = {
                "dof": spec.dof,
                "mean_scale": spec.mean_scale,
                "rate": None if spec.is_known else spec.rate,
                "phi": spec.phi,
            }
        revision = self.pending is not None and self._phase == "random_component"
        self.pending = {"op": "assess_dispersion", **stated, **pend}
        self._phase = "random_component"
        return {"pending_dispersion": pend}, revision

    def _accept_dispersion(self, inputs: dict[str, Any]):
        self._check_phase("accept_dispersion", ("random_component",))
        if self.pending is None or self.pending["op"] != "assess_dispersion":
            raise PhaseError("no pending dispersion assessment to accept")
        p = self.pending
        stated = {k: p[k] for k in ("mean0", "draws", "lower1", "prob1", "lower2", "prob2")}
        if p["rate"] is None and p["phi"] is None:
            self.partial = {"dof": p["dof"], "mean_scale": p["mean_scale"], **stated}
            self.pending = None
            self._phase = "power_parameter"
            return {"dispersion_partial": {"dof": p["dof"], "mean_scale": p["mean_scale"]}}, False
        if p["phi"] is not None:
            self.spec = DispersionSpec(
                dof=math.inf, rate=math.inf, phi=p["phi"],
                mean_scale=p["mean_scale"], **stated,
            )
        else:
            self.spec = DispersionSpec(
                dof=p["dof"], rate=p["rate"], mean_scale=p["mean_scale"], **stated
            )
        self.pending = None
        self._enter_marginals()
        return {"dispersion": self.spec.as_dict()}, False

    def _set_known_dispersion(self, inputs: dict[str, Any]):
        self._check_phase("set_known_dispersion", ("setup", "random_component"))
        self._require_settled_power("asserting a known dispersion")
        phi = float(inputs["phi"])
        self.spec = DispersionSpec.known(phi)
        self.pending = None
        self._enter_marginals()
        return {"dispersion": self.spec.as_dict()}, False

    # -- handlers: variance power -------------------------------------------------

    def _assess_power(self, inputs: dict[str, Any]):
        self._check_phase("assess_power", ("power_parameter",))
        zero_median = float(inputs["zero_median"])
        part = self.partial
        res = elicit_power_parameter(
            zero_median, part["mean0"], part["draws"], part["dof"], part["mean_scale"]
        )
        revision = self.pending is not None
        self.pending = {
            "op": "assess_power",
            "zero_median": zero_median,
            "power": res.power,
            "rate": res.rate,
            "zero_rate": res.zero_rate,
        }
        return {
            "pending_power": {
                "power": res.power,
                "rate": res.rate,
                "zero_rate": res.zero_rate,
            }
        }, revision

    def _commit_power(self, power: float, rate: float):
        part = self.partial
        self.family = self.family.with_power(power)
        self.spec = DispersionSpec(
            dof=part["dof"],
            rate=rate,
            mean_scale=part["mean_scale"],
            mean0=part["mean0"],
            draws=part["draws"],
            lower1=part["lower1"],
            prob1=part["prob1"],
            lower2=part["lower2"],
            prob2=part["prob2"],
        )
        self.partial = None
        self.pending = None
        self._enter_marginals()
        return {"power": power, "dispersion": self.spec.as_dict()}, False

    def _accept_power(self, inputs: dict[str, Any]):
        self._check_phase("accept_power", ("power_parameter",))
        if self.pending is None or self.pending["op"] != "assess_power":
            raise PhaseError("no pending power assessment to accept")
        return self._commit_power(self.pending["power"], self.pending["rate"])

    def _set_known_power(self, inputs: dict[str, Any]):
        self._check_phase("set_known_power", ("power_parameter",))
        power = float(inputs["power"])
        part = self.partial
        rate = known_power_rate(
            power, part["mean0"], part["draws"], part["dof"], part["mean_scale"]
        )
        return self._commit_power(power, rate)

    # -- handlers: marginals ------------------------------------------------------

    def _assess_marginal(self, inputs: dict[str, Any]):
        self._check_phase("assess_marginal", ("marginals",))
        i = self._marginal_index
        if "index" in inputs and int(inputs["index"]) != i:
            raise PhaseError(
                f"marginals are elicited in scenario order; expected index {i}"
            )
        lower = float(inputs["lower"])
        upper = float(inputs["upper"])
        prob = float(inputs["prob"])
        fit = elicit_marginal(lower, upper, prob, self.scenarios.link, self.spec)
        revision = self.pending is not None
        self.pending = {
            "op": "assess_marginal",
            "index": i,
            "lower": lower,
            "upper": upper,
            "prob": prob,
            "loc": fit.loc,
            "scale": fit.scale,
        }
        return {"pending_marginal": {"index": i, "loc": fit.loc, "scale": fit.scale}}, revision

    def _accept_marginal(self, inputs: dict[str, Any]):
        self._check_phase("accept_marginal", ("marginals",))
        if self.pending is None or self.pending["op"] != "assess_marginal":
            raise PhaseError("no pending marginal assessment to accept")
        p = self.pending
        i = p["index"]
        self.vine.set_marginal(i, MarginalFit(loc=p["loc"], scale=p["scale"]))
        self.pending = None
        self._marginal_index = i + 1
        if self._marginal_index >= self.scenarios.n:
            self._after_marginals()
        return {"index": i, "loc": p["loc"], "scale": p["scale"]}, False

    # -- handlers: dependence tree --------------------------------------------------

    def _choose_conditioning(self, inputs: dict[str, Any]):
        self._check_phase("choose_conditioning", ("vine_level",))
        if self.vine.active_level is not None:
            raise PhaseError("the open level must be completed before conditioning again")
        prob = float(inputs["prob"])
        side = str(inputs["side"])
        mode = str(inputs.get("mode", "elicited"))
        proposal = self.vine.propose_conditioning_value(prob, side, mode)
        self.vine.begin_level(proposal["eta"])
        self.pending = None
        return {
            "level": proposal["level"],
            "scenario": proposal["scenario"],
            "eta": proposal["eta"],
            "mean": proposal["mean"],
        }, False

    def _assess_conditional(self, inputs: dict[str, Any]):
        self._check_phase("assess_conditional", ("vine_level",))
        if self.vine.active_level is None:
            raise PhaseError("choose a conditioning value before assessing medians")
        k = int(inputs["cell"])
        median = float(inputs["median"])
        if k not in self.vine.pending_cells():
            raise PhaseError(f"scenario {k} is not awaiting a median at this level")
        info = self.vine.preview_median(k, median)
        revision = self.pending is not None
        self.pending = {"op": "assess_conditional", "cell": k, "median": median, "info": info}
        return {
            "pending_conditional": {
                "level": info["level"],
                "cell": k,
                "median": median,
                "scale_entry": info["scale_entry"],
                "partial_corr": info["partial_corr"],
                "conditional_variance": info["conditional_variance"],
            }
        }, revision

    def _accept_conditional(self, inputs: dict[str, Any]):
        self._check_phase("accept_conditional", ("vine_level",))
        if self.pending is None or self.pending["op"] != "assess_conditional":
            raise PhaseError("no pending conditional assessment to accept")
        k = self.pending["cell"]
        info = self.vine.record_median(k, self.pending["median"])
        self.pending = None
        if self.vine.completed_level == self.vine.max_level and self.vine.active_level is None:
            self._phase = "dependence_complete"
        return {
            "level": info["level"],
            "cell": k,
            "median": info["median"],
            "scale_entry": info["scale_entry"],
            "partial_corr": info["partial_corr"],
            "conditional_variance": info["conditional_variance"],
        }, False

    def _truncate(self, inputs: dict[str, Any]):
        self._check_phase("truncate", ("vine_level", "dependence_complete"))
        t = int(inputs["level"])
        if not (0 <= t <= self.vine.completed_level):
            raise DomainError(
                f"truncation level must lie in 0..{self.vine.completed_level} (completed levels)"
            )
        self.truncation = t
        self.pending = None
        self._phase = "truncated"
        return {"level": t}, False

    # -- handlers: induction ----------------------------------------------------------

    def _induce(self, inputs: dict[str, Any]):
        self._check_phase("induce", ("dependence_complete", "truncated"))
        design = None
        if inputs.get("design") is not None:
            d = inputs["design"]
            design = DesignMatrix(
                matrix=np.asarray(d["matrix"], dtype=float),
                names=tuple(d.get("names") or ()),
                offset=None if d.get("offset") is None else np.asarray(d["offset"], dtype=float),
            )
        target_family = None
        if inputs.get("family") is not None:
            target_family = get_family(inputs["family"], inputs.get("power"))
        target_phi = None if inputs.get("phi") is None else float(inputs["phi"])
        self.prior = induce_prior(
            self.vine.loc,
            self.vine.cov(self.truncation),
            self.spec,
            self.family,
            design=design,
            target_family=target_family,
            target_phi=target_phi,
            truncation=self.truncation,
        )
        self.pending = None
        self._phase = "concluded"
        return {"prior": self.prior.as_dict()}, False

    # -- diagnostics (read-only, never an event) -----------------------------------

    def diagnostics(
        self,
        n: int = 2000,
        mean0: float | None = None,
        draws: int | None = None,
        stream: int = 0,
    ) -> dict[str, Any]:
        """Monte Carlo discrepancy of the t approximation to the sample mean.

        Deterministic in the session seed, so repeated calls agree;
        ``mean0``/``draws`` default to the dispersion conditioning point but
        may probe any mean in the family support.
        """
        if self.spec is None:
            raise PhaseError("diagnostics need a committed dispersion")
        mean0 = self.spec.mean0 if mean0 is None else float(mean0)
        draws = self.spec.draws if draws is None else int(draws)
        if mean0 is None or draws is None:
            raise DomainError(
                "this session has a known dispersion; pass mean0 and draws explicitly"
            )
        rng = RandomSource(self.seed, stream)
        means, lam = sample_mean_mc(
            self.family, self.spec, mean0, draws, n, rng,
            acknowledge_approx=not self.family.supports_convolution,
        )
        report = discrepancy_report(
            means, lam, self.family, self.spec, mean0, draws, self.alpha
        )
        return _jsonable(report.as_dict())

    # -- snapshots -----------------------------------------------------------------

    def snapshot(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "phase": self.phase,
            "family": {"name": self.family.name, "power": self.family.power},
            "dispersion": None if self.spec is None else self.spec.as_dict(),
            "dispersion_partial": self.partial,
            "truncation": self.truncation,
            "prior": None if self.prior is None else self.prior.as_dict(),
            "vine": None if self.vine is None else self.vine.snapshot(),
        }
        return _jsonable(out)


def _h(name):
    return lambda session, inputs: getattr(session, name)(inputs)


_HANDLERS = {
    "assess_dispersion": _h("_assess_dispersion"),
    "accept_dispersion": _h("_accept_dispersion"),
    "set_known_dispersion": _h("_set_known_dispersion"),
    "assess_power": _h("_assess_power"),
    "accept_power": _h("_accept_power"),
    "set_known_power": _h("_set_known_power"),
    "assess_marginal": _h("_assess_marginal"),
    "accept_marginal": _h("_accept_marginal"),
    "choose_conditioning": _h("_choose_conditioning"),
    "assess_conditional": _h("_assess_conditional"),
    "accept_conditional": _h("_accept_conditional"),
    "truncate": _h("_truncate"),
    "induce": _h("_induce"),
}


def advance(session: Session, event: dict[str, Any]) -> dict[str, Any]:
    """Apply one {op, inputs} event and return it with fresh feedback."""
    applied = session.apply(event["op"], event.get("inputs"))
    return {"event": applied, "feedback": feedback_payload(session)}


# -- feedback ---------------------------------------------------------------------


def feedback_payload(
    session: Session,
    grid_size: int = 257,
    probs: tuple[float, ...] = DEFAULT_PROBS,
) -> dict[str, Any]:
    """Everything the facilitator shows for the current phase, as plain data.

    A pure function of session state: grids, quantiles, feasible bounds and
    divergences, never random numbers (Monte Carlo lives in diagnostics).
    """
    name = session._phase
    if name == "setup":
        return {}
    if name == "random_component":
        return _jsonable(_dispersion_feedback(session, grid_size, probs))
    if name == "power_parameter":
        return _jsonable(_power_feedback(session))
    if name == "marginals":
        return _jsonable(_marginal_feedback(session, grid_size, probs))
    if name == "vine_level":
        return _jsonable(_vine_feedback(session, grid_size, probs))
    if name in ("dependence_complete", "truncated"):
        out = {
            "phase": session.phase,
            "completed_level": session.vine.completed_level,
            "divergence_series": truncation_divergence_series(session.vine),
        }
        return _jsonable(out)
    return _jsonable({"phase": session.phase, "prior": session.prior.as_dict()})


def _dispersion_feedback(session, grid_size, probs):
    p = session.pending
    mean0, draws, dof, mean_scale = p["mean0"], p["draws"], p["dof"], p["mean_scale"]
    sd = math.sqrt(mean_scale)

    def q(prob):
        return float(sample_mean_quantile(prob, mean0, mean_scale, dof))

    intervals = [
        {"prob": float(c), "lower": q((1.0 - c) / 2.0), "upper": q((1.0 + c) / 2.0)}
        for c in probs
    ]
    grid = np.linspace(q(5e-4), q(1.0 - 5e-4), grid_size)
    density = student_t_pdf((grid - mean0) / sd, dof) / sd
    return {
        "phase": session.phase,
        "mean0": mean0,
        "draws": draws,
        "dof": dof,
        "rate": p["rate"],
        "phi": p["phi"],
        "mean_scale": mean_scale,
        "collapsed": math.isinf(dof),
        "implied": {
            "lower1": q((1.0 - p["prob1"]) / 2.0),
            "lower2": q((1.0 - p["prob2"]) / 2.0),
        },
        "intervals": intervals,
        "grid": grid,
        "density": density,
    }


def _power_feedback(session):
    part = session.partial
    lo, hi = power_median_bounds(
        part["mean0"], part["draws"], part["dof"], part["mean_scale"]
    )
    out = {
        "phase": session.phase,
        "dof": part["dof"],
        "mean_scale": part["mean_scale"],
        "mean0": part["mean0"],
        "draws": part["draws"],
        "median_bounds": [lo, hi],
    }
    p = session.pending
    if p is not None:
        out["power"] = p["power"]
        out["rate"] = p["rate"]
        out["zero_rate"] = p["zero_rate"]
        out["implied_zero_median"] = float(
            unit_gamma_quantile(0.5, part["dof"], p["zero_rate"])
        )
    return out


def _marginal_feedback(session, grid_size, probs):
    i = session._marginal_index
    out = {
        "phase": session.phase,
        "scenario": i,
        "description": session.scenarios.descriptions[i],
        "covariates": session.scenarios.covariates[i],
        "remaining": session.scenarios.n - i,
    }
    p = session.pending
    if p is not None:
        fit = MarginalFit(loc=p["loc"], scale=p["scale"])
        curve = marginal_feedback(
            fit, session.scenarios.link, session.spec, probs=tuple(probs), grid_size=grid_size
        )
        out["stated"] = {"lower": p["lower"], "upper": p["upper"], "prob": p["prob"]}
        out["loc"] = p["loc"]
        out["scale"] = p["scale"]
        out["curve"] = curve.as_dict()
    return out


def _vine_feedback(session, grid_size, probs):
    vine = session.vine
    out = {"phase": session.phase}
    if vine.active_level is None:
        proposals = []
        for mode in ("elicited", "unit"):
            for side in ("upper", "lower"):
                for prob in probs:
                    proposals.append(
                        vine.propose_conditioning_value(float(prob), side, mode)
                    )
        out["proposals"] = proposals
        return out
    level = vine.active_level
    cells = {}
    for k in vine.pending_cells():
        lo, hi = vine.feasible_median_bounds(k)
        cells[str(k)] = {
            "bounds": [lo, hi],
            "description": session.scenarios.descriptions[k],
        }
    out["level"] = level
    out["conditioning_eta"] = float(vine.cond_eta[level - 1])
    out["cells"] = cells
    p = session.pending
    if p is not None and p["op"] == "assess_conditional":
        info = p["info"]
        dof_l, factor = vine._tail(level)
        curve = _mean_scale_curve(
            float(session.scenarios.link.to_linear(p["median"])),
            factor * info["conditional_variance"],
            dof_l,
            session.scenarios.link,
            tuple(probs),
            grid_size,
        )
        out["preview"] = {k: v for k, v in info.items()}
        out["curve"] = curve.as_dict()
    return out


# -- transcripts --------------------------------------------------------------------


def _header(session: Session) -> dict[str, Any]:
    return {
        "schema": SCHEMA_NAME,
        "version": SCHEMA_VERSION,
        "seed": session.seed,
        "alpha": session.alpha,
        "family": {"name": session.family.name, "power": session._setup_power},
        "scenarios": session.scenarios.as_dict(),
    }


def save_transcript(session: Session) -> bytes:
    """Header line, one line per event, snapshot trailer; canonical JSON."""
    lines = [canonical_json(_header(session))]
    lines.extend(canonical_json(ev) for ev in session.events)
    lines.append(canonical_json({"snapshot": session.snapshot()}))
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_and_replay(data: bytes) -> Session:
    """Rebuild a session by replaying its transcript through the engine.

    Every event's phase and parameter deltas, and the final snapshot when
    present, must match the replay bit for bit; the first divergence is
    reported with its event index.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TranscriptError(f"transcript is not valid UTF-8: {exc}") from exc
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise TranscriptError("transcript is empty")

    def parse(idx: int, line: str) -> dict[str, Any]:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TranscriptError(
                f"line {idx + 1} is not valid JSON: {exc}", event_index=idx - 1 if idx else None
            ) from exc
        if not isinstance(obj, dict):
            raise TranscriptError(f"line {idx + 1} is not an object")
        return obj

    header = parse(0, lines[0])
    if header.get("schema") != SCHEMA_NAME:
        raise TranscriptError("not a session transcript (schema name mismatch)")
    if header.get("version") != SCHEMA_VERSION:
        raise TranscriptError(
            f"unsupported transcript version {header.get('version')!r}; "
            f"this engine reads version {SCHEMA_VERSION}"
        )
    try:
        scenarios = ScenarioSet.from_dict(header["scenarios"])
        fam = header.get("family") or {}
        family = get_family(fam["name"], fam.get("power")) if fam else None
        session = Session(
            scenarios, int(header["seed"]), family=family, alpha=float(header["alpha"])
        )
    except (KeyError, TypeError, ElicitationError) as exc:
        raise TranscriptError(f"invalid transcript header: {exc}") from exc

    body = lines[1:]
    snapshot_rec = None
    if body and "snapshot" in parse(len(lines) - 1, body[-1]):
        snapshot_rec = parse(len(lines) - 1, body[-1])["snapshot"]
        body = body[:-1]

    for idx, line in enumerate(body):
        rec = parse(idx + 1, line)
        for key in ("seq", "phase", "op", "inputs", "deltas"):
            if key not in rec:
                raise TranscriptError(f"event {idx} is missing {key!r}", event_index=idx)
        if rec["seq"] != idx or rec.get("timestamp") != idx:
            raise TranscriptError(
                f"event {idx} carries sequence number {rec['seq']}", event_index=idx
            )
        if canonical_json(rec["phase"]) != canonical_json(session.phase):
            raise TranscriptError(
                f"event {idx} was recorded in phase {rec['phase']} but replay "
                f"reaches {session.phase}",
                event_index=idx,
            )
        try:
            applied = session.apply(rec["op"], rec["inputs"])
        except ElicitationError as exc:
            raise TranscriptError(
                f"event {idx} ({rec['op']}) no longer passes: {exc}", event_index=idx
            ) from exc
        if canonical_json(applied["deltas"]) != canonical_json(rec["deltas"]):
            raise TranscriptError(
                f"event {idx} ({rec['op']}) replays to different parameters",
                event_index=idx,
            )
        if applied["revision"] != rec.get("revision"):
            raise TranscriptError(
                f"event {idx} ({rec['op']}) replays with a different revision flag",
                event_index=idx,
            )
    if snapshot_rec is not None:
        if canonical_json(session.snapshot()) != canonical_json(snapshot_rec):
            raise TranscriptError("final snapshot does not match the replayed state")
    return session
