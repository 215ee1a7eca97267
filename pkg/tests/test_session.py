import json
import math

import numpy as np
import pytest

from vineprior import (
    ConsistencyError,
    DomainError,
    PhaseError,
    ScenarioSet,
    Session,
    TranscriptError,
    advance,
    feedback_payload,
    get_family,
    get_link,
    load_and_replay,
    save_transcript,
)
from vineprior.scenarios import build_multinomial_scenarios
from vineprior.session import SCHEMA_VERSION, TRANSCRIPT_SCHEMA, canonical_json

from conftest import (
    DISPERSION_INPUTS,
    drive_dispersion,
    drive_marginals,
    drive_session,
    drive_vine,
    small_scenarios,
)


def cp_scenarios():
    return ScenarioSet(
        covariates=[[1.0], [2.0]],
        covariate_names=("x",),
        link=get_link("log"),
        families=(get_family("compound-poisson"),),
    )

CP_DISPERSION = {"mean0": 2.0, "draws": 10, "lower1": 1.7, "prob1": 1.0 / 3.0,
                 "lower2": 0.4, "prob2": 0.9}


# -- setup and phase flow ------------------------------------------------------


def test_setup_validation():
    with pytest.raises(DomainError, match="candidates"):
        Session(small_scenarios(), seed=1, family=get_family("poisson"))
    with pytest.raises(ValueError):
        Session(small_scenarios(), seed=-1)
    with pytest.raises(DomainError, match="alpha"):
        Session(small_scenarios(), seed=1, alpha=1.0)


def test_phase_progression():
    s = Session(small_scenarios(3), seed=5)
    assert s.phase == {"name": "setup"}
    assert s.legal_ops() == ["assess_dispersion", "set_known_dispersion"]
    s.apply("assess_dispersion", dict(DISPERSION_INPUTS))
    assert s.phase == {"name": "random_component"}
    assert "accept_dispersion" in s.legal_ops()
    s.apply("accept_dispersion", {})
    assert s.phase == {"name": "marginals", "scenario": 0}
    drive_marginals(s)
    assert s.phase == {"name": "vine_level", "level": 1, "cell": None}
    drive_vine(s)
    assert s.phase == {"name": "dependence_complete"}
    s.apply("truncate", {"level": 1})
    assert s.phase == {"name": "truncated", "level": 1}
    s.apply("induce", {})
    assert s.phase == {"name": "concluded"}
    assert s.legal_ops() == []
    assert s.prior is not None and s.prior.truncation == 1


def test_known_phi_scenarios_skip_dispersion():
    scen = build_multinomial_scenarios([[0.5]], d=2)
    s = Session(scen, seed=9)
    assert s.phase == {"name": "marginals", "scenario": 0}
    assert s.spec.is_known and s.spec.phi == 1.0
    assert s.events == []


def test_set_known_dispersion():
    s = Session(small_scenarios(2), seed=3)
    s.apply("set_known_dispersion", {"phi": 0.04})
    assert s.spec.is_known and s.spec.phi == 0.04
    assert s.phase["name"] == "marginals"
    # the sentinel survives the transcript as a string
    data = save_transcript(s)
    assert b'"dof":"inf"' in data
    clone = load_and_replay(data)
    assert clone.spec.is_known and math.isinf(clone.spec.dof)


def test_unknown_op_and_missing_inputs():
    s = Session(small_scenarios(2), seed=3)
    with pytest.raises(DomainError, match="unknown operation"):
        s.apply("escalate", {})
    with pytest.raises(DomainError, match="missing required input"):
        s.apply("assess_dispersion", {"mean0": 0.3})
    assert s.events == []


def test_phase_guard():
    s = Session(small_scenarios(2), seed=3)
    with pytest.raises(PhaseError):
        s.apply("assess_marginal", {"index": 0, "lower": 0.2, "upper": 0.5, "prob": 0.8})
    with pytest.raises(PhaseError):
        s.apply("accept_dispersion", {})
    with pytest.raises(PhaseError):
        s.apply("induce", {})
    assert s.events == []


# -- pending / revision semantics ----------------------------------------------


def test_assess_twice_marks_revision():
    s = Session(small_scenarios(2), seed=3)
    e1 = s.apply("assess_dispersion", dict(DISPERSION_INPUTS))
    assert e1["revision"] is False
    e2 = s.apply("assess_dispersion", dict(DISPERSION_INPUTS, lower2=0.21))
    assert e2["revision"] is True
    s.apply("accept_dispersion", {})
    # the accepted spec reflects the revised interval
    assert s.spec.lower2 == 0.21


def test_accept_without_assessment():
    s = Session(small_scenarios(2), seed=3)
    with pytest.raises(PhaseError, match="not legal in phase 'setup'"):
        s.apply("accept_dispersion", {})
    drive_dispersion(s)
    with pytest.raises(PhaseError):
        s.apply("accept_marginal", {})


def test_rejected_assessment_appends_nothing():
    s = Session(small_scenarios(2), seed=3)
    bad = dict(DISPERSION_INPUTS, lower1=0.3 + 0.27 * (0.2 - 0.3))
    with pytest.raises(ConsistencyError) as err:
        s.apply("assess_dispersion", bad)
    assert err.value.admissible is not None
    assert s.events == []
    assert s.phase == {"name": "setup"}
    # a valid retry still works and is not a revision
    e = s.apply("assess_dispersion", dict(DISPERSION_INPUTS))
    assert e["revision"] is False


def test_marginal_index_must_match():
    s = Session(small_scenarios(2), seed=3)
    drive_dispersion(s)
    with pytest.raises(PhaseError, match="expected index 0"):
        s.apply("assess_marginal", {"index": 1, "lower": 0.2, "upper": 0.5, "prob": 0.8})


def test_conditional_rejection_keeps_cell_open():
    s = Session(small_scenarios(3), seed=3)
    drive_dispersion(s)
    drive_marginals(s)
    s.apply("choose_conditioning", {"prob": 0.8, "side": "upper"})
    lo, hi = s.vine.feasible_median_bounds(1)
    with pytest.raises(ConsistencyError) as err:
        s.apply("assess_conditional", {"cell": 1, "median": hi + 0.01 * (hi - lo)})
    assert err.value.admissible == pytest.approx((lo, hi))
    n_events = len(s.events)
    s.apply("assess_conditional", {"cell": 1, "median": (lo + hi) / 2})
    s.apply("accept_conditional", {})
    assert len(s.events) == n_events + 2


def test_truncate_bounds():
    s = drive_session(conclude=False)
    with pytest.raises(DomainError):
        s.apply("truncate", {"level": 3})
    with pytest.raises(DomainError):
        s.apply("truncate", {"level": -1})
    s.apply("truncate", {"level": 0})
    s.apply("induce", {})
    assert s.prior.truncation == 0


def test_single_scenario_session():
    s = Session(small_scenarios(1), seed=4)
    drive_dispersion(s)
    drive_marginals(s)
    # no dependence to elicit with one scenario
    assert s.phase == {"name": "dependence_complete"}
    s.apply("induce", {})
    assert s.prior.coef_loc.shape == (1,)


# -- compound Poisson flow -------------------------------------------------------


def test_cp_dispersion_defers_rate_to_power_step():
    s = Session(cp_scenarios(), seed=11)
    s.apply("assess_dispersion", dict(CP_DISPERSION))
    s.apply("accept_dispersion", {})
    assert s.phase == {"name": "power_parameter"}
    assert s.spec is None and s.partial is not None
    fb = feedback_payload(s)
    lo, hi = fb["median_bounds"]
    assert lo == 0.0 and 0.0 < hi < 1.0
    s.apply("assess_power", {"zero_median": hi / 2})
    s.apply("accept_power", {})
    assert s.phase["name"] == "marginals"
    assert 1.0 < s.family.power < 2.0
    assert s.spec is not None and s.spec.rate > 0


def test_cp_known_power():
    s = Session(cp_scenarios(), seed=11)
    s.apply("assess_dispersion", dict(CP_DISPERSION))
    s.apply("accept_dispersion", {})
    s.apply("set_known_power", {"power": 1.5})
    assert s.family.power == 1.5
    assert s.phase["name"] == "marginals"


def test_cp_requires_power_before_known_dispersion():
    s = Session(cp_scenarios(), seed=11)
    with pytest.raises(DomainError, match="power"):
        s.apply("set_known_dispersion", {"phi": 1.0})
    # but a power fixed at setup makes it legal
    scen = ScenarioSet(
        covariates=[[1.0], [2.0]],
        covariate_names=("x",),
        link=get_link("log"),
        families=(get_family("compound-poisson", 1.4),),
    )
    s2 = Session(scen, seed=11)
    s2.apply("set_known_dispersion", {"phi": 1.0})
    assert s2.phase["name"] == "marginals"


def test_cp_collapse_to_known_rejected_at_assess():
    # near-normal quantiles leave no dispersion uncertainty for the power step
    s = Session(cp_scenarios(), seed=11)
    from vineprior.dispersion import sample_mean_quantile

    d1 = float(sample_mean_quantile((1 - 1 / 3) / 2, 2.0, 0.01, 1e8))
    d2 = float(sample_mean_quantile(0.05, 2.0, 0.01, 1e8))
    with pytest.raises(ConsistencyError, match="dispersion uncertainty"):
        s.apply(
            "assess_dispersion",
            {"mean0": 2.0, "draws": 10, "lower1": d1, "prob1": 1 / 3,
             "lower2": d2, "prob2": 0.9},
        )
    assert s.events == []


# -- transcripts -----------------------------------------------------------------


def test_event_log_structure():
    s = drive_session(seed=21)
    for i, ev in enumerate(s.events):
        assert ev["seq"] == i
        assert ev["timestamp"] == i
        assert set(ev) == {"seq", "timestamp", "phase", "op", "inputs", "revision", "deltas"}
    assert s.events[0]["phase"] == {"name": "setup"}
    assert s.events[-1]["op"] == "induce"


def test_inputs_persist_verbatim_extras():
    s = Session(small_scenarios(2), seed=3)
    s.apply("assess_dispersion", dict(DISPERSION_INPUTS, synthetic=True, note="pilot"))
    assert s.events[0]["inputs"]["synthetic"] is True
    assert s.events[0]["inputs"]["note"] == "pilot"
    s.apply("accept_dispersion", {})
    data = save_transcript(s)
    clone = load_and_replay(data)
    assert clone.events[0]["inputs"]["note"] == "pilot"


def test_save_replay_byte_identical():
    s = drive_session(seed=21, truncation=1)
    data = save_transcript(s)
    clone = load_and_replay(data)
    assert save_transcript(clone) == data
    assert clone.phase == s.phase
    assert canonical_json(clone.snapshot()) == canonical_json(s.snapshot())
    assert clone.prior.rate == s.prior.rate


def test_prefix_replay():
    s = drive_session(seed=22)
    lines = save_transcript(s).decode("utf-8").strip().split("\n")
    # header plus the first five events, no snapshot trailer
    prefix = "\n".join(lines[:6]) + "\n"
    clone = load_and_replay(prefix.encode("utf-8"))
    assert len(clone.events) == 5
    assert clone.phase["name"] == "marginals"


def test_tampered_delta_detected():
    s = drive_session(seed=23)
    lines = save_transcript(s).decode("utf-8").strip().split("\n")
    ev = json.loads(lines[4])  # accept_marginal for scenario 0
    assert ev["op"] == "accept_marginal"
    ev["deltas"]["loc"] = ev["deltas"]["loc"] + 0.5
    lines[4] = canonical_json(ev)
    with pytest.raises(TranscriptError, match="event 3"):
        load_and_replay(("\n".join(lines) + "\n").encode("utf-8"))


def test_tampered_snapshot_detected():
    s = drive_session(seed=23)
    lines = save_transcript(s).decode("utf-8").strip().split("\n")
    snap = json.loads(lines[-1])
    snap["snapshot"]["truncation"] = 2
    lines[-1] = canonical_json(snap)
    with pytest.raises(TranscriptError, match="snapshot"):
        load_and_replay(("\n".join(lines) + "\n").encode("utf-8"))


def test_unknown_schema_version():
    s = drive_session(seed=24)
    lines = save_transcript(s).decode("utf-8").strip().split("\n")
    head = json.loads(lines[0])
    assert head["version"] == SCHEMA_VERSION
    head["version"] = 99
    lines[0] = canonical_json(head)
    with pytest.raises(TranscriptError, match="version"):
        load_and_replay(("\n".join(lines) + "\n").encode("utf-8"))


def test_malformed_transcripts():
    with pytest.raises(TranscriptError):
        load_and_replay(b"\xff\xfe garbage")
    with pytest.raises(TranscriptError):
        load_and_replay(b"not json\n")
    with pytest.raises(TranscriptError):
        load_and_replay(b'{"schema": "something-else", "version": 1}\n')


def test_replay_rejects_out_of_order_seq():
    s = drive_session(seed=25)
    lines = save_transcript(s).decode("utf-8").strip().split("\n")
    ev = json.loads(lines[2])
    ev["seq"] = 7
    lines[2] = canonical_json(ev)
    with pytest.raises(TranscriptError, match="seq"):
        load_and_replay(("\n".join(lines) + "\n").encode("utf-8"))


def test_schema_doc_covers_line_kinds():
    assert SCHEMA_VERSION == 1
    lines = TRANSCRIPT_SCHEMA["lines"]
    for kind in ("header", "event", "snapshot"):
        assert any(kind in name for name in lines)


# -- feedback and diagnostics ------------------------------------------------------


def test_feedback_payloads_are_canonical_json_safe():
    s = Session(small_scenarios(3), seed=26)
    canonical_json(feedback_payload(s))
    s.apply("assess_dispersion", dict(DISPERSION_INPUTS))
    fb = feedback_payload(s)
    canonical_json(fb)
    assert fb["dof"] > 0
    assert len(fb["grid"]) == 257
    assert fb["collapsed"] is False
    s.apply("accept_dispersion", {})
    canonical_json(feedback_payload(s))
    drive_marginals(s)
    fb = feedback_payload(s)
    canonical_json(fb)
    # eight proposals: two modes, two sides, two probabilities
    assert len(fb["proposals"]) == 8
    s.apply("choose_conditioning", {"prob": 0.8, "side": "upper"})
    fb = feedback_payload(s)
    canonical_json(fb)
    assert set(fb["cells"]) == {"1", "2"}
    for cell in fb["cells"].values():
        lo, hi = cell["bounds"]
        assert lo < hi
    for level, cells in ((1, (1, 2)), (2, (2,))):
        if s.vine.active_level is None:
            s.apply("choose_conditioning", {"prob": 0.8, "side": "lower"})
        for k in cells:
            lo, hi = s.vine.feasible_median_bounds(k)
            s.apply("assess_conditional", {"cell": k, "median": (lo + hi) / 2})
            s.apply("accept_conditional", {})
    fb = feedback_payload(s)
    canonical_json(fb)
    series = fb["divergence_series"]
    assert [d["level"] for d in series] == [0, 1, 2]
    assert series[-1]["divergence"] == 0.0
    assert all(d["threshold"] == pytest.approx(1.151292546497023) for d in series)
    s.apply("induce", {})
    fb = feedback_payload(s)
    canonical_json(fb)
    assert "prior" in fb


def test_marginal_feedback_payload():
    s = Session(small_scenarios(2), seed=27)
    drive_dispersion(s)
    fb = feedback_payload(s)
    assert fb["scenario"] == 0
    assert "description" in fb and "curve" not in fb
    s.apply("assess_marginal", {"index": 0, "lower": 0.2, "upper": 0.5, "prob": 0.8})
    fb = feedback_payload(s)
    assert fb["curve"]["quantiles"]
    assert fb["stated"] == {"lower": 0.2, "upper": 0.5, "prob": 0.8}
    canonical_json(fb)


def test_advance_wrapper():
    s = Session(small_scenarios(2), seed=28)
    out = advance(s, {"op": "assess_dispersion", "inputs": dict(DISPERSION_INPUTS)})
    assert out["event"]["seq"] == 0
    assert "feedback" in out


def test_diagnostics_deterministic():
    s = drive_session(seed=29)
    a = s.diagnostics(n=500)
    b = s.diagnostics(n=500)
    assert a == b
    c = s.diagnostics(n=500, stream=1)
    assert c["kolmogorov"] != a["kolmogorov"]
    assert a["n"] == 500 and a["family"] == "simplex"
    # the simplex has a density, so the report carries a KL estimate
    assert a["partial"] is False and a["kl_estimate"] is not None


def test_diagnostics_needs_dispersion():
    s = Session(small_scenarios(2), seed=30)
    with pytest.raises(PhaseError):
        s.diagnostics(n=200)
