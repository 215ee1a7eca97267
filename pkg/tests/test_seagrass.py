"""Case-study fixture: published dispersion quantiles, frozen synthetic
assessments, and the induced polynomial-basis prior."""

import numpy as np
import pytest

from vineprior import load_and_replay, save_transcript
from vineprior.projection import truncation_divergence_series
from vineprior.seagrass import (
    SEAGRASS_DISPERSION_INPUTS,
    SEAGRASS_SEED,
    seagrass_design,
    seagrass_fixture,
    seagrass_scenarios,
)

FROZEN_DIVERGENCES = (
    0.7075280916000963,
    0.43431091464691995,
    0.24805156889944824,
    0.13792840436628317,
    0.0635872738189871,
    0.02027126364706433,
    0.0,
)


@pytest.fixture(scope="module")
def fixture():
    return seagrass_fixture()


@pytest.fixture(scope="module")
def replayed(fixture):
    return load_and_replay(fixture[2])


def test_fixture_identity():
    assert SEAGRASS_SEED == 20260815
    assert SEAGRASS_DISPERSION_INPUTS["mean0"] == 0.01
    assert SEAGRASS_DISPERSION_INPUTS["draws"] == 10


def test_scenarios(fixture):
    scenarios = seagrass_scenarios()
    assert scenarios.n == 7
    assert scenarios.covariate_names == ("din", "tss")
    assert scenarios.link.name == "logit"
    assert tuple(f.name for f in scenarios.families) == ("simplex",)
    np.testing.assert_array_equal(
        scenarios.covariates,
        [
            (0.0001, 0.1),
            (0.05, 0.1),
            (0.5, 0.1),
            (0.0001, 12.25),
            (0.0001, 50.0),
            (0.05, 50.0),
            (0.5, 50.0),
        ],
    )
    assert scenarios.descriptions[0] == "seagrass cover at DIN=0.0001 mg/L, TSS=0.1 mg/L"
    assert fixture[0].as_dict() == scenarios.as_dict()


def test_design_basis():
    design = seagrass_design()
    assert design.names == (
        "intercept",
        "log10_din",
        "tss",
        "log10_din:tss",
        "log10_din^2",
        "tss^2",
        "log10_din^2:tss^2",
    )
    assert design.matrix.shape == (7, 7)
    assert np.linalg.matrix_rank(design.matrix) == 7
    # first scenario: log10(0.0001) = -4, tss = 0.1
    np.testing.assert_allclose(
        design.matrix[0], [1.0, -4.0, 0.1, -0.4, 16.0, 0.01, 0.16], rtol=0, atol=1e-15
    )


def test_fixture_replays_byte_identical(fixture, replayed):
    raw = fixture[2]
    assert save_transcript(replayed) == raw
    assert replayed.phase["name"] == "concluded"
    assert len(replayed.events) == 65


def test_published_events_are_unflagged_synthetic_ones_are_marked(replayed):
    for event in replayed.events:
        op = event["op"]
        if op in ("assess_marginal", "assess_conditional", "choose_conditioning"):
            assert event["inputs"]["synthetic"] is True
        else:
            assert "synthetic" not in event["inputs"]


def test_dispersion_recovers_published_parameters(replayed):
    assert replayed.spec.dof == pytest.approx(14.3, rel=1e-9)
    assert replayed.spec.rate == pytest.approx(118.0, rel=1e-9)


def test_truncation_scan_is_frozen(replayed):
    rows = truncation_divergence_series(replayed.vine)
    assert [row["level"] for row in rows] == list(range(7))
    divergences = [row["divergence"] for row in rows]
    assert divergences == pytest.approx(FROZEN_DIVERGENCES, rel=1e-9, abs=1e-12)
    assert divergences == sorted(divergences, reverse=True)
    for row in rows:
        assert row["threshold"] == pytest.approx(1.151292546497023, rel=1e-13)
        assert row["above_threshold"] is (row["divergence"] > row["threshold"])
    assert all(not row["above_threshold"] for row in rows)


def test_induced_prior_frozen_values(replayed):
    prior = replayed.prior
    assert prior.names == seagrass_design().names
    assert prior.coef_loc[0] == pytest.approx(-2.275719708885557, rel=1e-12)
    assert prior.coef_loc[1] == pytest.approx(-1.334795380140985, rel=1e-12)
    assert prior.coef_loc[2] == pytest.approx(-0.04663857425331537, rel=1e-12)
    assert prior.dof == pytest.approx(14.299999999999294, rel=1e-13)
    assert prior.rate == pytest.approx(117.99999999999346, rel=1e-13)
    assert prior.phi is None


def test_square_basis_reproduces_the_elicited_law(replayed):
    design = seagrass_design()
    prior = replayed.prior
    np.testing.assert_allclose(
        design.matrix @ prior.coef_loc, replayed.vine.loc, rtol=0, atol=1e-10
    )
    np.testing.assert_allclose(
        design.matrix @ prior.coef_scale @ design.matrix.T,
        replayed.vine.cov(replayed.truncation),
        rtol=1e-8,
    )
