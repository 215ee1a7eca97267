"""Batch command line: replay, diagnostics at scale, induction, truncation
scans, the worked case study, and the API server.

Exit codes: 0 success, 2 domain violation (an assessment or configuration
the engine rejects), 3 I/O failure, 4 transcript or schema failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any

import numpy as np

from .errors import ElicitationError, TranscriptError
from .families import family_names, get_family
from .projection import DesignMatrix, induce_prior, truncation_divergence_series
from .seagrass import seagrass_fixture
from .session import TRANSCRIPT_SCHEMA, load_and_replay, save_transcript

__all__ = ["main", "build_parser"]


def _fmt(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def _emit_rows(rows: list[dict[str, Any]], emit: str, out) -> None:
    if emit == "json":
        json.dump(rows, out, indent=2, default=str)
        out.write("\n")
        return
    if not rows:
        return
    writer = csv.writer(out)
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in header])


def _read_transcript(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _read_design_csv(path: str) -> DesignMatrix:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]
    if len(rows) < 2:
        raise TranscriptError(f"design file {path!r} needs a header and data rows")
    names = tuple(c.strip() for c in rows[0])
    try:
        matrix = np.asarray([[float(c) for c in row] for row in rows[1:]])
    except ValueError as exc:
        raise TranscriptError(f"design file {path!r} has a non-numeric cell: {exc}") from exc
    return DesignMatrix(matrix, names=names)


def _write_out(data: str | bytes, path: str | None) -> None:
    if path is None or path == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(data)


# -- subcommands -----------------------------------------------------------------


def _cmd_replay(args) -> int:
    session = load_and_replay(_read_transcript(args.transcript))
    if args.out is not None:
        _write_out(save_transcript(session), args.out)
    summary = {
        "phase": session.phase,
        "events": len(session.events),
        "snapshot": session.snapshot(),
    }
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_diagnose(args) -> int:
    session = load_and_replay(_read_transcript(args.transcript))
    report = session.diagnostics(
        n=args.n, mean0=args.mean0, draws=args.draws, stream=args.stream
    )
    _emit_rows([report], args.emit, sys.stdout)
    return 0


def _prior_rows(prior) -> list[dict[str, Any]]:
    rows = []
    for j, name in enumerate(prior.names):
        row: dict[str, Any] = {
            "name": name,
            "loc": float(prior.coef_loc[j]),
            "dof": prior.dof,
            "rate": prior.rate,
            "phi": prior.phi,
        }
        for i, other in enumerate(prior.names):
            row[f"scale:{other}"] = float(prior.coef_scale[j, i])
        rows.append(row)
    return rows


def _cmd_induce(args) -> int:
    session = load_and_replay(_read_transcript(args.transcript))
    design = _read_design_csv(args.design) if args.design else None
    target_family = get_family(args.family, args.power) if args.family else None
    if session.prior is not None and design is None and target_family is None and args.phi is None:
        prior = session.prior
    else:
        vine = session.vine
        if vine is None or vine.completed_level < 0:
            raise TranscriptError("transcript has no completed marginals to induce from")
        truncation = session.truncation
        prior = induce_prior(
            vine.loc,
            vine.cov(truncation),
            session.spec,
            session.family,
            design=design,
            target_family=target_family,
            target_phi=args.phi,
            truncation=truncation,
        )
    if args.emit == "json":
        json.dump(prior.as_dict(), sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    else:
        _emit_rows(_prior_rows(prior), "csv", sys.stdout)
    return 0


def _cmd_truncate_scan(args) -> int:
    session = load_and_replay(_read_transcript(args.transcript))
    if session.vine is None or session.vine.completed_level < 0:
        raise TranscriptError("transcript has no completed marginals to scan")
    rows = truncation_divergence_series(session.vine)
    _emit_rows(rows, args.emit, sys.stdout)
    return 0


def _cmd_casestudy(args) -> int:
    scenarios, design, raw = seagrass_fixture()
    session = load_and_replay(raw)
    spec = session.spec
    sys.stdout.write("s = %.10g\nr = %.10g\n" % (spec.dof, spec.rate))
    if args.kolmogorov:
        for mean0 in (0.01, 0.10):
            report = session.diagnostics(n=args.n, mean0=mean0)
            sys.stdout.write(
                "kolmogorov(mean0=%.2f) = %.4f (dkw %.4f)\n"
                % (mean0, report["kolmogorov"], report["dkw_epsilon"])
            )
    if args.out is not None:
        _write_out(raw, args.out)
    if args.design_out is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(design.names)
        for row in design.matrix:
            writer.writerow([repr(float(v)) for v in row])
        _write_out(buf.getvalue(), args.design_out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        data_dir=args.data_dir,
        default_n=args.default_n,
        max_n=args.max_n,
        token=args.token,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level)
    return 0


def _cmd_schema(args) -> int:
    json.dump(TRANSCRIPT_SCHEMA, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vineprior",
        description="prior elicitation engine: transcripts in, priors out",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replay", help="replay a transcript and print the final state")
    p.add_argument("transcript", help="transcript path, or - for stdin")
    p.add_argument("--out", help="also write the canonical re-saved transcript here")
    p.set_defaults(fn=_cmd_replay)

    p = sub.add_parser("diagnose", help="Monte Carlo discrepancy of the t approximation")
    p.add_argument("transcript")
    p.add_argument("--n", type=int, default=2000, help="Monte Carlo draws")
    p.add_argument("--mean0", type=float, default=None, help="conditioning mean override")
    p.add_argument("--draws", type=int, default=None, help="hypothetical sample size override")
    p.add_argument("--stream", type=int, default=0, help="RNG stream index")
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_diagnose)

    p = sub.add_parser("induce", help="project the elicited law onto coefficients")
    p.add_argument("transcript")
    p.add_argument("--design", help="CSV model matrix; header row names the coefficients")
    p.add_argument("--family", choices=family_names(), help="switch the response family")
    p.add_argument("--power", type=float, default=None, help="variance power for compound-poisson")
    p.add_argument("--phi", type=float, default=None, help="target dispersion (known-dispersion sessions)")
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_induce)

    p = sub.add_parser("truncate-scan", help="divergence of every truncation level")
    p.add_argument("transcript")
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_truncate_scan)

    p = sub.add_parser("casestudy", help="run the seagrass fixture and print its parameters")
    p.add_argument("--kolmogorov", action="store_true", help="also print the two discrepancy distances")
    p.add_argument("--n", type=int, default=2000, help="Monte Carlo draws for --kolmogorov")
    p.add_argument("--out", help="write the fixture transcript here")
    p.add_argument("--design-out", help="write the regression basis CSV here")
    p.set_defaults(fn=_cmd_casestudy)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=None, help="write-through transcript directory")
    p.add_argument("--default-n", type=int, default=2000)
    p.add_argument("--max-n", type=int, default=20000)
    p.add_argument("--token", default=None, help="require this bearer token")
    p.add_argument("--log-level", default="info")
    p.set_defaults(fn=_cmd_serve)

    p = sub.add_parser("schema", help="print the transcript schema")
    p.set_defaults(fn=_cmd_schema)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        import signal

        signal.signal(signal.SIGPIPE, signal.SIG_DFL)
    except (ImportError, AttributeError, ValueError):
        pass
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except TranscriptError as exc:
        print(f"transcript error: {exc}", file=sys.stderr)
        return 4
    except ElicitationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
