"""Seagrass-cover case study: a complete worked session.

Seven scenarios cross dissolved inorganic nitrogen (DIN, mg/L) with total
suspended solids (TSS, mg/L); the expert assesses the proportion of
seagrass cover under a logit link and a simplex response.  The regression
basis is a polynomial in log10(DIN) and TSS with their interaction and
squared terms, full rank at the seven design points.

The recorded random-component quantiles are the published ones: stated
lower bounds for the 1/3 and 0.9 central intervals of a hypothetical
ten-shoot sample mean near cover 0.01, which parametrise the inverse
dispersion as Gamma(14.3/2, 118/2).  The remaining assessments (marginal
intervals and conditional medians) were never published; the fixture fills
them with plausible synthetic values, each event carrying
``synthetic: true`` so downstream consumers can tell the two apart.
"""

from __future__ import annotations

import math

import numpy as np

from .families import get_family
from .links import get_link
from .projection import DesignMatrix
from .scenarios import ScenarioSet
from .session import Session, feedback_payload, save_transcript

__all__ = [
    "SEAGRASS_SEED",
    "SEAGRASS_DISPERSION_INPUTS",
    "seagrass_scenarios",
    "seagrass_design",
    "seagrass_session",
    "seagrass_fixture",
]

SEAGRASS_SEED = 20260815

# (DIN, TSS) pairs, in elicitation order
_SCENARIO_ROWS = (
    (0.0001, 0.1),
    (0.05, 0.1),
    (0.5, 0.1),
    (0.0001, 12.25),
    (0.0001, 50.0),
    (0.05, 50.0),
    (0.5, 50.0),
)

# published quantiles: lower bounds of the central 1/3 and 0.9 intervals of a
# ten-shoot sample mean conditioned on cover 0.01; these invert to dof 14.3
# and rate 118 under the simplex variance at 0.01
SEAGRASS_DISPERSION_INPUTS = {
    "mean0": 0.01,
    "draws": 10,
    "lower1": 0.009606480665389917,
    "prob1": 1.0 / 3.0,
    "lower2": 0.00842631336973926,
    "prob2": 0.90,
}

# synthetic central-0.8 cover intervals, one per scenario: cover falls with
# nutrient load and with suspended solids
_MARGINAL_INTERVALS = (
    (0.30, 0.70),
    (0.15, 0.50),
    (0.05, 0.30),
    (0.20, 0.60),
    (0.08, 0.35),
    (0.04, 0.25),
    (0.01, 0.15),
)


def seagrass_scenarios() -> ScenarioSet:
    rows = np.asarray(_SCENARIO_ROWS)
    descriptions = tuple(
        f"seagrass cover at DIN={din:g} mg/L, TSS={tss:g} mg/L" for din, tss in rows
    )
    return ScenarioSet(
        covariates=rows,
        covariate_names=("din", "tss"),
        link=get_link("logit"),
        families=(get_family("simplex"),),
        descriptions=descriptions,
    )


def seagrass_design() -> DesignMatrix:
    """Square polynomial basis in log10(DIN) and TSS at the scenario rows."""
    cols = []
    for din, tss in _SCENARIO_ROWS:
        ld = math.log10(din)
        cols.append([1.0, ld, tss, ld * tss, ld * ld, tss * tss, ld * ld * tss * tss])
    names = (
        "intercept",
        "log10_din",
        "tss",
        "log10_din:tss",
        "log10_din^2",
        "tss^2",
        "log10_din^2:tss^2",
    )
    return DesignMatrix(np.asarray(cols), names=names)


def seagrass_session() -> Session:
    """Run the case-study session through the engine, start to concluded."""
    session = Session(seagrass_scenarios(), seed=SEAGRASS_SEED)
    session.apply("assess_dispersion", dict(SEAGRASS_DISPERSION_INPUTS))
    session.apply("accept_dispersion")
    for i, (lo, hi) in enumerate(_MARGINAL_INTERVALS):
        session.apply(
            "assess_marginal",
            {"index": i, "lower": lo, "upper": hi, "prob": 0.8, "synthetic": True},
        )
        session.apply("accept_marginal")
    n = session.scenarios.n
    for level in range(1, n):
        side = "upper" if level % 2 == 1 else "lower"
        session.apply(
            "choose_conditioning",
            {"prob": 0.8, "side": side, "mode": "unit", "synthetic": True},
        )
        for k in range(level, n):
            bounds = feedback_payload(session)["cells"][str(k)]["bounds"]
            frac = 0.62 - 0.02 * (level - 1) - 0.01 * (k - level)
            median = bounds[0] + frac * (bounds[1] - bounds[0])
            session.apply(
                "assess_conditional",
                {"cell": k, "median": median, "synthetic": True},
            )
            session.apply("accept_conditional")
    design = seagrass_design()
    session.apply(
        "induce",
        {
            "design": {
                "matrix": design.matrix.tolist(),
                "names": list(design.names),
            }
        },
    )
    return session


def seagrass_fixture() -> tuple[ScenarioSet, DesignMatrix, bytes]:
    """Scenario set, regression basis, and the recorded session transcript."""
    session = seagrass_session()
    return session.scenarios, seagrass_design(), save_transcript(session)
