"""HTTP API tests, driven through the in-process ASGI test client.

The load-bearing check is transcript parity: a session driven entirely over
the wire must produce byte-identical transcript files to one driven through
the Python engine with the same inputs, including when the wire inputs are
read back from feedback payloads (JSON float round trips are exact).
"""

import json

import pytest
from fastapi.testclient import TestClient

from vineprior.service import DEFAULT_MC_DRAWS, MAX_MC_DRAWS, create_app
from vineprior.session import SCHEMA_VERSION, save_transcript

from conftest import DISPERSION_INPUTS, MARGINAL_INTERVALS, drive_session, small_scenarios


def make_client(**kwargs):
    return TestClient(create_app(**kwargs))


def create_session(client, seed=77, n=3, **extra):
    body = {"scenarios": small_scenarios(n).as_dict(), "seed": seed, **extra}
    resp = client.post("/v1/sessions", json=body)
    assert resp.status_code == 201, resp.text
    return resp.json()


def post(client, sid, path, payload, expect=200):
    resp = client.post(f"/v1/sessions/{sid}/{path}", json=payload)
    assert resp.status_code == expect, resp.text
    return resp.json()


def api_drive(client, sid, n=3, truncation=None, conclude=True):
    """Mirror conftest.drive_session over HTTP, reading feasible bounds
    back from the feedback endpoint the way a real facilitator would."""
    post(client, sid, "dispersion", {"action": "assess", **DISPERSION_INPUTS})
    post(client, sid, "dispersion", {"action": "accept"})
    for i in range(n):
        lo, hi = MARGINAL_INTERVALS[i % len(MARGINAL_INTERVALS)]
        post(
            client,
            sid,
            "marginals",
            {"action": "assess", "index": i, "lower": lo, "upper": hi, "prob": 0.8},
        )
        post(client, sid, "marginals", {"action": "accept"})
    for level in range(1, n):
        side = "upper" if level % 2 else "lower"
        post(client, sid, "conditioning", {"prob": 0.8, "side": side, "mode": "elicited"})
        for k in range(level, n):
            fb = client.get(f"/v1/sessions/{sid}/feedback").json()
            lo, hi = fb["cells"][str(k)]["bounds"]
            med = lo + 0.6 * (hi - lo)
            post(client, sid, "conditionals", {"action": "assess", "cell": k, "median": med})
            post(client, sid, "conditionals", {"action": "accept"})
    if truncation is not None:
        post(client, sid, "truncate", {"level": truncation})
    if conclude:
        post(client, sid, "induce", {})


def test_create_returns_session_resource():
    client = make_client()
    res = create_session(client, session_id="front-desk")
    assert res["id"] == "front-desk"
    assert res["schema_version"] == SCHEMA_VERSION
    assert res["phase"]["name"] == "setup"
    assert res["events"] == 0
    assert res["legal_operations"] == ["assess_dispersion", "set_known_dispersion"]
    assert res["snapshot"]["truncation"] is None

    dup = client.post(
        "/v1/sessions",
        json={"scenarios": small_scenarios().as_dict(), "seed": 1, "session_id": "front-desk"},
    )
    assert dup.status_code == 409
    assert dup.json()["type"] == "PhaseError"

    listing = client.get("/v1/sessions").json()
    assert [row["id"] for row in listing["sessions"]] == ["front-desk"]


def test_mutation_response_envelope():
    client = make_client()
    sid = create_session(client)["id"]
    out = post(client, sid, "dispersion", {"action": "assess", **DISPERSION_INPUTS})
    assert set(out) == {"event", "phase", "legal_operations", "feedback"}
    assert out["event"]["seq"] == 0
    assert out["event"]["op"] == "assess_dispersion"
    assert out["phase"]["name"] == "random_component"
    assert "accept_dispersion" in out["legal_operations"]
    assert out["feedback"]["collapsed"] is False


def test_api_transcript_matches_in_process_bytes():
    client = make_client()
    for truncation in (None, 1):
        sid = create_session(client, seed=77, n=3)["id"]
        api_drive(client, sid, n=3, truncation=truncation)
        resp = client.get(f"/v1/sessions/{sid}/transcript")
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("application/x-ndjson")
        assert resp.headers["content-disposition"].endswith(f'"{sid}.ndjson"')
        reference = drive_session(seed=77, n=3, truncation=truncation)
        assert resp.content == save_transcript(reference)


def test_unknown_session_is_404():
    client = make_client()
    assert client.get("/v1/sessions/nope").status_code == 404
    assert client.get("/v1/sessions/nope/feedback").status_code == 404
    assert client.get("/v1/sessions/nope/transcript").status_code == 404
    resp = client.post("/v1/sessions/nope/dispersion", json={"action": "accept"})
    assert resp.status_code == 404
    assert "no session" in resp.json()["detail"]


def test_stale_event_id_conflicts():
    client = make_client()
    sid = create_session(client)["id"]
    post(client, sid, "dispersion", {"action": "assess", "event_id": 0, **DISPERSION_INPUTS})
    resp = client.post(
        f"/v1/sessions/{sid}/dispersion", json={"action": "accept", "event_id": 0}
    )
    assert resp.status_code == 409
    detail = resp.json()["detail"]
    assert detail["error"] == "stale or repeated event id"
    assert detail["expected"] == 1
    assert detail["got"] == 0
    # the conflicting request appended nothing
    assert client.get(f"/v1/sessions/{sid}").json()["events"] == 1
    post(client, sid, "dispersion", {"action": "accept", "event_id": 1})


def test_phase_violation_is_409():
    client = make_client()
    sid = create_session(client)["id"]
    resp = client.post(
        f"/v1/sessions/{sid}/conditioning", json={"prob": 0.8, "side": "upper"}
    )
    assert resp.status_code == 409
    body = resp.json()
    assert body["type"] == "PhaseError"
    assert "not legal in phase 'setup'" in body["error"]


def test_consistency_rejection_is_422_with_admissible():
    client = make_client()
    sid = create_session(client)["id"]
    bad = dict(DISPERSION_INPUTS)
    # ratio 0.27 sits just above the normal-limit bound 0.26194
    bad["lower1"] = bad["mean0"] + 0.27 * (bad["lower2"] - bad["mean0"])
    resp = client.post(f"/v1/sessions/{sid}/dispersion", json={"action": "assess", **bad})
    assert resp.status_code == 422
    body = resp.json()
    assert body["type"] == "ConsistencyError"
    assert body["admissible"]["hi"] == DISPERSION_INPUTS["mean0"]
    assert body["admissible"]["lo"] < body["admissible"]["hi"]
    assert client.get(f"/v1/sessions/{sid}").json()["events"] == 0


def test_conditional_rejection_reports_feasible_bounds():
    client = make_client()
    sid = create_session(client)["id"]
    api_drive(client, sid, conclude=False)
    # reopen is impossible, so elicit a fresh session up to the first level
    sid = create_session(client, session_id="bounds")["id"]
    post(client, sid, "dispersion", {"action": "assess", **DISPERSION_INPUTS})
    post(client, sid, "dispersion", {"action": "accept"})
    for i in range(3):
        lo, hi = MARGINAL_INTERVALS[i]
        post(
            client,
            sid,
            "marginals",
            {"action": "assess", "index": i, "lower": lo, "upper": hi, "prob": 0.8},
        )
        post(client, sid, "marginals", {"action": "accept"})
    post(client, sid, "conditioning", {"prob": 0.8, "side": "upper"})
    fb = client.get(f"/v1/sessions/{sid}/feedback").json()
    lo, hi = fb["cells"]["1"]["bounds"]
    resp = client.post(
        f"/v1/sessions/{sid}/conditionals",
        json={"action": "assess", "cell": 1, "median": hi + (hi - lo)},
    )
    assert resp.status_code == 422
    body = resp.json()
    assert body["type"] == "ConsistencyError"
    assert body["admissible"]["lo"] == pytest.approx(lo, rel=1e-12)
    assert body["admissible"]["hi"] == pytest.approx(hi, rel=1e-12)
    # the cell stays open and accepts an inside value afterwards
    post(
        client,
        sid,
        "conditionals",
        {"action": "assess", "cell": 1, "median": 0.5 * (lo + hi)},
    )
    post(client, sid, "conditionals", {"action": "accept"})


def test_request_validation_is_422():
    client = make_client()
    sid = create_session(client)["id"]
    resp = client.post(f"/v1/sessions/{sid}/conditioning", json={"side": "upper"})
    assert resp.status_code == 422
    resp = client.post(f"/v1/sessions/{sid}/truncate", json={})
    assert resp.status_code == 422
    resp = client.post(f"/v1/sessions/{sid}/dispersion", json={"action": "retract"})
    assert resp.status_code == 422
    resp = client.post("/v1/sessions", json={"seed": 3})
    assert resp.status_code == 422


def test_engine_domain_error_is_422():
    client = make_client()
    sid = create_session(client)["id"]
    incomplete = {k: v for k, v in DISPERSION_INPUTS.items() if k != "lower2"}
    resp = client.post(
        f"/v1/sessions/{sid}/dispersion", json={"action": "assess", **incomplete}
    )
    assert resp.status_code == 422
    body = resp.json()
    assert body["type"] == "DomainError"
    assert "missing required input" in body["error"]


def test_diagnostics_cap_and_determinism():
    client = make_client(default_n=400, max_n=800)
    sid = create_session(client)["id"]

    resp = client.get(f"/v1/sessions/{sid}/diagnostics")
    assert resp.status_code == 409  # no committed dispersion yet

    post(client, sid, "dispersion", {"action": "assess", **DISPERSION_INPUTS})
    post(client, sid, "dispersion", {"action": "accept"})

    resp = client.get(f"/v1/sessions/{sid}/diagnostics", params={"n": 801})
    assert resp.status_code == 422
    assert "use the batch CLI" in resp.json()["detail"]["error"]

    one = client.get(f"/v1/sessions/{sid}/diagnostics", params={"n": 400})
    two = client.get(f"/v1/sessions/{sid}/diagnostics", params={"n": 400})
    assert one.status_code == 200
    assert one.json() == two.json()
    assert one.json()["family"] == "simplex"
    assert one.json()["kl_estimate"] is not None
    other = client.get(f"/v1/sessions/{sid}/diagnostics", params={"n": 400, "stream": 1})
    assert other.json()["kl_estimate"] != one.json()["kl_estimate"]


def test_feedback_query_parameters():
    client = make_client()
    sid = create_session(client)["id"]
    post(client, sid, "dispersion", {"action": "assess", **DISPERSION_INPUTS})

    fb = client.get(f"/v1/sessions/{sid}/feedback", params={"grid_size": 65}).json()
    assert len(fb["grid"]) == 65
    assert len(fb["density"]) == 65

    fb = client.get(
        f"/v1/sessions/{sid}/feedback", params={"probs": "0.5,0.9,0.99"}
    ).json()
    assert [row["prob"] for row in fb["intervals"]] == [0.5, 0.9, 0.99]

    resp = client.get(f"/v1/sessions/{sid}/feedback", params={"grid_size": 4})
    assert resp.status_code == 422
    resp = client.get(f"/v1/sessions/{sid}/feedback", params={"probs": "wide"})
    assert resp.status_code == 422


def test_restart_recovers_sessions_from_disk(tmp_path):
    client = make_client(data_dir=tmp_path)
    sid = create_session(client, seed=77, n=3, session_id="durable")["id"]
    post(client, sid, "dispersion", {"action": "assess", **DISPERSION_INPUTS})
    post(client, sid, "dispersion", {"action": "accept"})
    del client

    revived = make_client(data_dir=tmp_path)
    res = revived.get(f"/v1/sessions/{sid}").json()
    assert res["phase"]["name"] == "marginals"
    assert res["events"] == 2

    for i in range(3):
        lo, hi = MARGINAL_INTERVALS[i]
        post(
            revived,
            sid,
            "marginals",
            {"action": "assess", "index": i, "lower": lo, "upper": hi, "prob": 0.8},
        )
        post(revived, sid, "marginals", {"action": "accept"})
    for level in (1, 2):
        side = "upper" if level % 2 else "lower"
        post(revived, sid, "conditioning", {"prob": 0.8, "side": side, "mode": "elicited"})
        for k in range(level, 3):
            fb = revived.get(f"/v1/sessions/{sid}/feedback").json()
            lo, hi = fb["cells"][str(k)]["bounds"]
            post(
                revived,
                sid,
                "conditionals",
                {"action": "assess", "cell": k, "median": lo + 0.6 * (hi - lo)},
            )
            post(revived, sid, "conditionals", {"action": "accept"})
    post(revived, sid, "induce", {})

    wire = revived.get(f"/v1/sessions/{sid}/transcript").content
    assert wire == save_transcript(drive_session(seed=77, n=3))
    assert (tmp_path / "durable.ndjson").read_bytes() == wire


def test_bearer_token_guard():
    client = make_client(token="sesame")
    body = {"scenarios": small_scenarios().as_dict(), "seed": 5}
    assert client.post("/v1/sessions", json=body).status_code == 401
    bad = {"Authorization": "Bearer wrong"}
    assert client.post("/v1/sessions", json=body, headers=bad).status_code == 401
    good = {"Authorization": "Bearer sesame"}
    resp = client.post("/v1/sessions", json=body, headers=good)
    assert resp.status_code == 201
    sid = resp.json()["id"]
    assert client.get(f"/v1/sessions/{sid}").status_code == 401
    assert client.get(f"/v1/sessions/{sid}", headers=good).status_code == 200


def test_mc_draw_defaults_are_sane():
    assert 0 < DEFAULT_MC_DRAWS <= MAX_MC_DRAWS
