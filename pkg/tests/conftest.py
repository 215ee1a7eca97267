"""Shared session drivers for the behavioural test modules."""

import numpy as np

from vineprior import ScenarioSet, Session, get_family, get_link

# ratio 0.02/0.1 = 0.2, safely below the normal-limit bound 0.26194
DISPERSION_INPUTS = {
    "mean0": 0.3,
    "draws": 25,
    "lower1": 0.28,
    "prob1": 1.0 / 3.0,
    "lower2": 0.2,
    "prob2": 0.9,
}

MARGINAL_INTERVALS = (
    (0.20, 0.50),
    (0.25, 0.60),
    (0.35, 0.70),
    (0.15, 0.45),
    (0.30, 0.65),
    (0.10, 0.40),
)


def small_scenarios(n=3):
    cov = [[float(i + 1)] for i in range(n)]
    return ScenarioSet(
        covariates=cov,
        covariate_names=("dose",),
        link=get_link("logit"),
        families=(get_family("simplex"), get_family("binomial-proportion")),
    )


def drive_dispersion(session):
    session.apply("assess_dispersion", dict(DISPERSION_INPUTS))
    session.apply("accept_dispersion", {})


def drive_marginals(session, prob=0.8):
    n = session.scenarios.n
    for i in range(n):
        lo, hi = MARGINAL_INTERVALS[i % len(MARGINAL_INTERVALS)]
        session.apply("assess_marginal", {"index": i, "lower": lo, "upper": hi, "prob": prob})
        session.apply("accept_marginal", {})


def drive_vine(session, frac=0.6, prob=0.8):
    n = session.scenarios.n
    for level in range(1, n):
        side = "upper" if level % 2 else "lower"
        session.apply("choose_conditioning", {"prob": prob, "side": side, "mode": "elicited"})
        for k in range(level, n):
            lo, hi = session.vine.feasible_median_bounds(k)
            med = lo + frac * (hi - lo)
            session.apply("assess_conditional", {"cell": k, "median": med})
            session.apply("accept_conditional", {})


def drive_session(seed=77, n=3, truncation=None, conclude=True):
    """A fully elicited session, optionally truncated and concluded."""
    session = Session(small_scenarios(n), seed=seed)
    drive_dispersion(session)
    drive_marginals(session)
    drive_vine(session)
    if truncation is not None:
        session.apply("truncate", {"level": truncation})
    if conclude:
        session.apply("induce", {})
    return session


def random_spd(rng, n, jitter=0.5):
    a = rng.standard_normal((n, n))
    return a @ a.T + jitter * n * np.eye(n)
