"""Batch command line tests: exit codes, golden outputs, CSV and JSON emits."""

import csv
import io
import json
import sys
import types

import numpy as np
import pytest

from vineprior import get_family, load_and_replay
from vineprior.cli import build_parser, main
from vineprior.projection import DesignMatrix, induce_prior
from vineprior.seagrass import seagrass_fixture
from vineprior.session import TRANSCRIPT_SCHEMA, save_transcript

from conftest import drive_session


@pytest.fixture(scope="module")
def concluded_bytes():
    return save_transcript(drive_session(seed=77, n=3))


@pytest.fixture()
def transcript_path(tmp_path, concluded_bytes):
    path = tmp_path / "session.ndjson"
    path.write_bytes(concluded_bytes)
    return str(path)


def test_casestudy_prints_shape_and_rate(capsys):
    assert main(["casestudy"]) == 0
    out = capsys.readouterr().out
    assert out == "s = 14.3\nr = 118\n"


def test_casestudy_kolmogorov_lines(capsys):
    assert main(["casestudy", "--kolmogorov", "--n", "400"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "s = 14.3"
    assert lines[1] == "r = 118"
    assert lines[2].startswith("kolmogorov(mean0=0.01) = ")
    assert lines[3].startswith("kolmogorov(mean0=0.10) = ")
    for line in lines[2:]:
        value = float(line.split(" = ")[1].split(" ")[0])
        assert 0.0 < value < 0.5
        assert "(dkw " in line


def test_casestudy_writes_fixture_and_design(tmp_path, capsys):
    out = tmp_path / "seagrass.ndjson"
    design_out = tmp_path / "design.csv"
    rc = main(["casestudy", "--out", str(out), "--design-out", str(design_out)])
    assert rc == 0
    capsys.readouterr()
    _, design, raw = seagrass_fixture()
    assert out.read_bytes() == raw
    with design_out.open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == design.names
    parsed = np.asarray([[float(c) for c in row] for row in rows[1:]])
    np.testing.assert_array_equal(parsed, design.matrix)


def test_replay_reprints_identical_bytes(tmp_path, transcript_path, concluded_bytes, capsys):
    out = tmp_path / "resaved.ndjson"
    assert main(["replay", transcript_path, "--out", str(out)]) == 0
    assert out.read_bytes() == concluded_bytes
    summary = json.loads(capsys.readouterr().out)
    assert summary["phase"]["name"] == "concluded"
    assert summary["events"] == len(load_and_replay(concluded_bytes).events)
    assert summary["snapshot"]["prior"] is not None


def test_replay_reads_stdin(monkeypatch, concluded_bytes, capsys):
    monkeypatch.setattr(sys, "stdin", types.SimpleNamespace(buffer=io.BytesIO(concluded_bytes)))
    assert main(["replay", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["phase"]["name"] == "concluded"


def test_missing_file_is_io_error(capsys):
    assert main(["replay", "/no/such/file.ndjson"]) == 3
    assert "i/o error:" in capsys.readouterr().err


def test_malformed_transcript_is_schema_error(tmp_path, capsys):
    bad = tmp_path / "bad.ndjson"
    bad.write_bytes(b"not a transcript\n")
    assert main(["replay", str(bad)]) == 4
    assert "transcript error:" in capsys.readouterr().err


def test_tampered_transcript_is_schema_error(tmp_path, concluded_bytes, capsys):
    lines = concluded_bytes.splitlines()
    event = json.loads(lines[2])
    event["deltas"]["dispersion"]["dof"] += 0.5
    lines[2] = json.dumps(event, sort_keys=True, separators=(",", ":")).encode()
    bad = tmp_path / "tampered.ndjson"
    bad.write_bytes(b"\n".join(lines) + b"\n")
    assert main(["replay", str(bad)]) == 4
    assert "transcript error:" in capsys.readouterr().err


def test_domain_violation_is_exit_2(tmp_path, capsys):
    from conftest import small_scenarios
    from vineprior import Session

    fresh = tmp_path / "fresh.ndjson"
    fresh.write_bytes(save_transcript(Session(small_scenarios(), seed=9)))
    assert main(["diagnose", str(fresh), "--n", "200"]) == 2
    assert "error:" in capsys.readouterr().err


def test_diagnose_json_deterministic(transcript_path, capsys):
    assert main(["diagnose", transcript_path, "--n", "300"]) == 0
    first = capsys.readouterr().out
    assert main(["diagnose", transcript_path, "--n", "300"]) == 0
    second = capsys.readouterr().out
    assert first == second
    rows = json.loads(first)
    assert len(rows) == 1
    report = rows[0]
    assert report["family"] == "simplex"
    assert report["kolmogorov"] >= 0.0
    assert report["kl_estimate"] is not None
    assert main(["diagnose", transcript_path, "--n", "300", "--stream", "1"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["kolmogorov"] != report["kolmogorov"]


def test_diagnose_csv_and_overrides(transcript_path, capsys):
    rc = main(
        ["diagnose", transcript_path, "--n", "200", "--mean0", "0.25",
         "--draws", "30", "--emit", "csv"]
    )
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 2
    assert "kolmogorov" in rows[0]
    assert rows[1][rows[0].index("family")] == "simplex"


def test_truncate_scan_csv(transcript_path, capsys):
    assert main(["truncate-scan", transcript_path, "--emit", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["level", "divergence", "threshold", "above_threshold"]
    assert [int(r[0]) for r in rows[1:]] == [0, 1, 2]
    assert float(rows[-1][1]) == 0.0
    assert float(rows[1][2]) == 1.151292546497023

    assert main(["truncate-scan", transcript_path]) == 0
    series = json.loads(capsys.readouterr().out)
    assert [row["level"] for row in series] == [0, 1, 2]
    assert series[0]["divergence"] >= series[1]["divergence"] >= series[2]["divergence"]


def test_induce_default_matches_session_prior(transcript_path, concluded_bytes, capsys):
    assert main(["induce", transcript_path]) == 0
    data = json.loads(capsys.readouterr().out)
    prior = load_and_replay(concluded_bytes).prior
    assert data["coef_loc"] == pytest.approx(list(prior.coef_loc), rel=0, abs=0)
    assert data["dof"] == prior.dof
    assert data["rate"] == prior.rate


def test_induce_with_design_csv_columns(tmp_path, transcript_path, concluded_bytes, capsys):
    design_path = tmp_path / "design.csv"
    matrix = [[1.0, 0.5], [1.0, 1.5], [1.0, 2.5]]
    with design_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["intercept", "dose"])
        writer.writerows(matrix)

    rc = main(["induce", transcript_path, "--design", str(design_path), "--emit", "csv"])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["name", "loc", "dof", "rate", "phi", "scale:intercept", "scale:dose"]
    assert [r[0] for r in rows[1:]] == ["intercept", "dose"]

    session = load_and_replay(concluded_bytes)
    expected = induce_prior(
        session.vine.loc,
        session.vine.cov(session.truncation),
        session.spec,
        session.family,
        design=DesignMatrix(np.asarray(matrix), names=("intercept", "dose")),
        truncation=session.truncation,
    )
    # repr round trip keeps the CSV floats exact
    assert [float(r[1]) for r in rows[1:]] == list(expected.coef_loc)
    assert float(rows[1][5]) == expected.coef_scale[0, 0]


def test_induce_family_switch_scales_rate(transcript_path, concluded_bytes, capsys):
    assert main(["induce", transcript_path, "--family", "gamma"]) == 0
    data = json.loads(capsys.readouterr().out)
    session = load_and_replay(concluded_bytes)
    mean0 = session.spec.mean0
    q = get_family("simplex").variance(mean0) / get_family("gamma").variance(mean0)
    assert data["dof"] == session.spec.dof
    assert data["rate"] == pytest.approx(session.spec.rate * q, rel=1e-12)


def test_induce_needs_completed_marginals(tmp_path, capsys):
    from conftest import drive_dispersion, small_scenarios
    from vineprior import Session

    session = Session(small_scenarios(), seed=4)
    drive_dispersion(session)
    partial = tmp_path / "partial.ndjson"
    partial.write_bytes(save_transcript(session))
    assert main(["induce", str(partial)]) == 4
    assert "no completed marginals" in capsys.readouterr().err


def test_induce_bad_design_cell_is_schema_error(tmp_path, transcript_path, capsys):
    design_path = tmp_path / "design.csv"
    design_path.write_text("a,b\n1.0,oops\n")
    assert main(["induce", transcript_path, "--design", str(design_path)]) == 4
    assert "non-numeric cell" in capsys.readouterr().err


def test_schema_prints_transcript_schema(capsys):
    assert main(["schema"]) == 0
    assert json.loads(capsys.readouterr().out) == TRANSCRIPT_SCHEMA


def test_parser_wires_serve_options():
    args = build_parser().parse_args(
        ["serve", "--port", "9999", "--token", "sesame", "--max-n", "5000"]
    )
    assert args.port == 9999
    assert args.token == "sesame"
    assert args.max_n == 5000
