"""HTTP JSON API over elicitation sessions.

One FastAPI app per process, holding an in-memory session map with
write-through transcript files; a restart recovers every session by
replaying its file.  Mutations serialize per session behind a lock and
append exactly one event each, carrying an optional ``event_id`` that must
equal the next sequence number, so retried requests are rejected rather
than double-applied.  Engine rejections surface as structured JSON: 409
for phase violations and stale event ids, 422 for domain and consistency
errors (the latter with the admissible interval), never a bare 500.

Monte Carlo diagnostics run synchronously up to a configurable cap;
anything larger belongs in the batch CLI.
"""

from __future__ import annotations

import os
import threading
import uuid
from pathlib import Path
from typing import Any, Literal

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import (
    ConsistencyError,
    ElicitationError,
    PhaseError,
    TranscriptError,
)
from .families import get_family
from .scenarios import ScenarioSet
from .session import (
    SCHEMA_VERSION,
    Session,
    feedback_payload,
    load_and_replay,
    save_transcript,
)

__all__ = ["SessionStore", "create_app"]

DEFAULT_MC_DRAWS = 2000
MAX_MC_DRAWS = 20000


class SessionStore:
    """In-memory sessions with optional write-through transcript files."""

    def __init__(self, data_dir: str | os.PathLike | None = None):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            self._recover()

    def _recover(self) -> None:
        for path in sorted(self.data_dir.glob("*.ndjson")):
            sid = path.stem
            self._sessions[sid] = load_and_replay(path.read_bytes())
            self._locks[sid] = threading.Lock()

    def ids(self) -> list[str]:
        return sorted(self._sessions)

    def add(self, session: Session, session_id: str | None = None) -> str:
        sid = session_id or uuid.uuid4().hex
        with self._registry_lock:
            if sid in self._sessions:
                raise PhaseError(f"session {sid!r} already exists")
            self._sessions[sid] = session
            self._locks[sid] = threading.Lock()
        self.persist(sid)
        return sid

    def get(self, sid: str) -> Session:
        try:
            return self._sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {sid!r}") from None

    def lock(self, sid: str) -> threading.Lock:
        self.get(sid)
        return self._locks[sid]

    def persist(self, sid: str) -> None:
        if self.data_dir is None:
            return
        data = save_transcript(self._sessions[sid])
        path = self.data_dir / f"{sid}.ndjson"
        tmp = path.with_suffix(".ndjson.tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)


# -- request bodies ---------------------------------------------------------------


class FamilyChoice(BaseModel):
    name: str
    power: float | None = None


class CreateSessionBody(BaseModel):
    scenarios: dict[str, Any]
    seed: int
    alpha: float = 0.05
    family: FamilyChoice | None = None
    session_id: str | None = Field(default=None, max_length=80)


class DispersionBody(BaseModel):
    action: Literal["assess", "accept", "set_known"] = "assess"
    event_id: int | None = None
    mean0: float | None = None
    draws: int | None = None
    lower1: float | None = None
    prob1: float | None = None
    lower2: float | None = None
    prob2: float | None = None
    phi: float | None = None
    synthetic: bool | None = None


class PowerBody(BaseModel):
    action: Literal["assess", "accept", "set_known"] = "assess"
    event_id: int | None = None
    zero_median: float | None = None
    power: float | None = None
    synthetic: bool | None = None


class MarginalBody(BaseModel):
    action: Literal["assess", "accept"] = "assess"
    event_id: int | None = None
    index: int | None = None
    lower: float | None = None
    upper: float | None = None
    prob: float | None = None
    synthetic: bool | None = None


class ConditioningBody(BaseModel):
    event_id: int | None = None
    prob: float
    side: Literal["upper", "lower"]
    mode: Literal["elicited", "unit"] = "elicited"
    synthetic: bool | None = None


class ConditionalBody(BaseModel):
    action: Literal["assess", "accept"] = "assess"
    event_id: int | None = None
    cell: int | None = None
    median: float | None = None
    synthetic: bool | None = None


class TruncateBody(BaseModel):
    event_id: int | None = None
    level: int


class DesignBody(BaseModel):
    matrix: list[list[float]]
    names: list[str] | None = None
    offset: list[float] | None = None


class InduceBody(BaseModel):
    event_id: int | None = None
    design: DesignBody | None = None
    family: str | None = None
    power: float | None = None
    phi: float | None = None


_ACTION_OPS = {
    "dispersion": {
        "assess": "assess_dispersion",
        "accept": "accept_dispersion",
        "set_known": "set_known_dispersion",
    },
    "power": {
        "assess": "assess_power",
        "accept": "accept_power",
        "set_known": "set_known_power",
    },
    "marginal": {"assess": "assess_marginal", "accept": "accept_marginal"},
    "conditional": {"assess": "assess_conditional", "accept": "accept_conditional"},
}


def _inputs(body: BaseModel, *skip: str) -> dict[str, Any]:
    out = body.model_dump(exclude_none=True)
    for key in ("action", "event_id", *skip):
        out.pop(key, None)
    return out


def create_app(
    data_dir: str | os.PathLike | None = None,
    default_n: int = DEFAULT_MC_DRAWS,
    max_n: int = MAX_MC_DRAWS,
    token: str | None = None,
) -> FastAPI:
    store = SessionStore(data_dir)

    async def require_token(authorization: str | None = Header(default=None)):
        if token is None:
            return
        if authorization != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="missing or bad bearer token")

    app = FastAPI(title="vineprior", version="0.1.0", dependencies=[Depends(require_token)])
    app.state.store = store

    @app.exception_handler(ElicitationError)
    async def _engine_error(request: Request, exc: ElicitationError):
        status = 409 if isinstance(exc, PhaseError) else 422
        payload: dict[str, Any] = {"error": str(exc), "type": type(exc).__name__}
        if isinstance(exc, ConsistencyError) and exc.admissible is not None:
            payload["admissible"] = {"lo": exc.admissible[0], "hi": exc.admissible[1]}
        if isinstance(exc, TranscriptError) and exc.event_index is not None:
            payload["event_index"] = exc.event_index
        return JSONResponse(status_code=status, content=payload)

    def resource(sid: str, session: Session) -> dict[str, Any]:
        return {
            "id": sid,
            "schema_version": SCHEMA_VERSION,
            "phase": session.phase,
            "events": len(session.events),
            "legal_operations": session.legal_ops(),
            "snapshot": session.snapshot(),
        }

    def mutate(sid: str, op: str, inputs: dict[str, Any], event_id: int | None):
        with store.lock(sid):
            session = store.get(sid)
            if event_id is not None and event_id != len(session.events):
                raise HTTPException(
                    status_code=409,
                    detail={
                        "error": "stale or repeated event id",
                        "expected": len(session.events),
                        "got": event_id,
                    },
                )
            event = session.apply(op, inputs)
            store.persist(sid)
            return {
                "event": event,
                "phase": session.phase,
                "legal_operations": session.legal_ops(),
                "feedback": feedback_payload(session),
            }

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        scenarios = ScenarioSet.from_dict(body.scenarios)
        family = None
        if body.family is not None:
            family = get_family(body.family.name, body.family.power)
        session = Session(scenarios, body.seed, family=family, alpha=body.alpha)
        sid = store.add(session, body.session_id)
        return resource(sid, session)

    @app.get("/v1/sessions")
    def list_sessions():
        return {"sessions": [resource(sid, store.get(sid)) for sid in store.ids()]}

    @app.get("/v1/sessions/{sid}")
    def get_session(sid: str):
        return resource(sid, store.get(sid))

    @app.post("/v1/sessions/{sid}/dispersion")
    def post_dispersion(sid: str, body: DispersionBody):
        op = _ACTION_OPS["dispersion"][body.action]
        return mutate(sid, op, _inputs(body), body.event_id)

    @app.post("/v1/sessions/{sid}/power")
    def post_power(sid: str, body: PowerBody):
        op = _ACTION_OPS["power"][body.action]
        return mutate(sid, op, _inputs(body), body.event_id)

    @app.post("/v1/sessions/{sid}/marginals")
    def post_marginal(sid: str, body: MarginalBody):
        op = _ACTION_OPS["marginal"][body.action]
        return mutate(sid, op, _inputs(body), body.event_id)

    @app.post("/v1/sessions/{sid}/conditioning")
    def post_conditioning(sid: str, body: ConditioningBody):
        return mutate(sid, "choose_conditioning", _inputs(body), body.event_id)

    @app.post("/v1/sessions/{sid}/conditionals")
    def post_conditional(sid: str, body: ConditionalBody):
        op = _ACTION_OPS["conditional"][body.action]
        return mutate(sid, op, _inputs(body), body.event_id)

    @app.post("/v1/sessions/{sid}/truncate")
    def post_truncate(sid: str, body: TruncateBody):
        return mutate(sid, "truncate", _inputs(body), body.event_id)

    @app.post("/v1/sessions/{sid}/induce")
    def post_induce(sid: str, body: InduceBody):
        inputs = _inputs(body)
        if body.design is not None:
            inputs["design"] = body.design.model_dump(exclude_none=True)
        return mutate(sid, "induce", inputs, body.event_id)

    @app.get("/v1/sessions/{sid}/feedback")
    def get_feedback(
        sid: str,
        grid_size: int = Query(default=257, ge=16, le=4096),
        probs: str = Query(default=""),
    ):
        session = store.get(sid)
        if probs:
            try:
                values = tuple(float(x) for x in probs.split(","))
            except ValueError:
                raise HTTPException(
                    status_code=422,
                    detail="probs must be a comma-separated list of numbers",
                ) from None
            return feedback_payload(session, grid_size=grid_size, probs=values)
        return feedback_payload(session, grid_size=grid_size)

    @app.get("/v1/sessions/{sid}/diagnostics")
    def get_diagnostics(
        sid: str,
        n: int = Query(default=None, ge=100),
        mean0: float | None = None,
        draws: int | None = None,
        stream: int = Query(default=0, ge=0),
    ):
        session = store.get(sid)
        n = default_n if n is None else n
        if n > max_n:
            raise HTTPException(
                status_code=422,
                detail={
                    "error": f"n={n} exceeds the synchronous cap {max_n}; "
                    "use the batch CLI for larger runs"
                },
            )
        return session.diagnostics(n=n, mean0=mean0, draws=draws, stream=stream)

    @app.get("/v1/sessions/{sid}/transcript")
    def get_transcript(sid: str):
        session = store.get(sid)
        return Response(
            content=save_transcript(session),
            media_type="application/x-ndjson",
            headers={"Content-Disposition": f'attachment; filename="{sid}.ndjson"'},
        )

    return app
