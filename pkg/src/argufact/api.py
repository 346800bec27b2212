"""Local HTTP API over the verification engine.

Sessions are in-memory: each holds a QBAF, its solve result, and the
edit history that produced it. Every number served here comes from the
engine modules; nothing is recomputed in the web layer. Error mapping:
request schema violations are 400, unknown sessions/arguments 404, and
engine precondition failures 422.
"""

from __future__ import annotations

import itertools
import json
import os
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .annotate import CompletionClient
from .errors import ArgufactError, InvalidParams, SchemaError, UnknownId
from .explain import Edit, claim_verdict, contest, edit_from_dict, explain_argument
from .pipeline import PipelineConfig, Verdict, VerificationRecord, verify
from .qbaf import QBAF, from_dict as qbaf_from_dict, to_dict as qbaf_to_dict
from .retrieval import CorpusIndex
from .semantics import Semantics, SolveResult, SolverParams, solve


@dataclass
class ApiSession:
    session_id: str
    original_qbaf: QBAF
    qbaf: QBAF
    result: SolveResult
    semantics: Semantics
    params: SolverParams
    tau: float
    claim: str | None = None
    verdict: Verdict | None = None
    edits: list[Edit] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def snapshot(self) -> dict:
        return {
            "session_id": self.session_id,
            "original_qbaf": qbaf_to_dict(self.original_qbaf),
            "edits": [e.to_dict() for e in self.edits],
            "semantics": self.semantics.value,
            "solver": {
                "step": self.params.step,
                "epsilon": self.params.epsilon,
                "max_time": self.params.max_time,
            },
            "tau": self.tau,
            "claim": self.claim,
        }


class SessionStore:
    def __init__(self, snapshot_path=None):
        self._sessions: dict[str, ApiSession] = {}
        self._counter = itertools.count(1)
        self._lock = threading.Lock()
        self.snapshot_path = snapshot_path

    def new_id(self) -> str:
        with self._lock:
            return f"s{next(self._counter)}"

    def add(self, session: ApiSession) -> None:
        with self._lock:
            self._sessions[session.session_id] = session
        self.persist()

    def get(self, session_id: str) -> ApiSession:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownId(f"unknown session {session_id!r}") from None

    def all(self) -> list[ApiSession]:
        with self._lock:
            return list(self._sessions.values())

    def persist(self) -> None:
        if not self.snapshot_path:
            return
        payload = [s.snapshot() for s in self.all()]
        tmp = f"{self.snapshot_path}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
        os.replace(tmp, self.snapshot_path)

    def load(self) -> int:
        """Restore sessions by replaying snapshots; returns count restored."""
        if not self.snapshot_path or not os.path.exists(self.snapshot_path):
            return 0
        with open(self.snapshot_path, encoding="utf-8") as fh:
            payload = json.load(fh)
        restored = 0
        highest = 0
        for raw in payload:
            original = qbaf_from_dict(raw["original_qbaf"])
            semantics = Semantics(raw["semantics"])
            params = SolverParams(**raw["solver"])
            session = ApiSession(
                session_id=raw["session_id"],
                original_qbaf=original,
                qbaf=original,
                result=solve(original, semantics, params),
                semantics=semantics,
                params=params,
                tau=raw["tau"],
                claim=raw.get("claim"),
            )
            for edit_raw in raw["edits"]:
                report = contest(session.qbaf, edit_from_dict(edit_raw), semantics, params, raw["tau"])
                session.qbaf = report.after_qbaf
                session.result = report.after
                session.verdict = report.after_verdict
                session.edits.append(report.edits[0])
            if not session.edits:
                session.verdict = claim_verdict(session.qbaf, session.result, raw["tau"])
            with self._lock:
                self._sessions[session.session_id] = session
            restored += 1
            if raw["session_id"].startswith("s") and raw["session_id"][1:].isdigit():
                highest = max(highest, int(raw["session_id"][1:]))
        with self._lock:
            self._counter = itertools.count(highest + 1)
        return restored


def _session_payload(session: ApiSession) -> dict:
    result = session.result
    return {
        "session_id": session.session_id,
        "claim": session.claim,
        "qbaf": qbaf_to_dict(session.qbaf),
        "ids": list(result.ids),
        "strengths": {a: result.strengths[a] for a in result.ids},
        "converged": result.converged,
        "steps": result.steps,
        "step_size": result.step_size,
        "trajectory": [[float(x) for x in row] for row in result.trajectory],
        "verdict": session.verdict.to_dict() if session.verdict else None,
        "tau": session.tau,
        "edits": [e.to_dict() for e in session.edits],
    }


def create_app(
    index: CorpusIndex | None = None,
    client: CompletionClient | None = None,
    config: PipelineConfig | None = None,
    snapshot_path=None,
    static_dir=None,
) -> FastAPI:
    """Build the API app; verification endpoints need an index + client."""
    config = config or PipelineConfig()
    app = FastAPI(title="argufact", docs_url=None, redoc_url=None)
    store = SessionStore(snapshot_path)
    store.load()
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "SchemaError", "message": str(exc)})

    @app.exception_handler(ArgufactError)
    async def engine_error(request: Request, exc: ArgufactError):
        if isinstance(exc, UnknownId):
            status = 404
        elif isinstance(exc, SchemaError):
            status = 400
        else:
            status = 422
        return JSONResponse(
            status_code=status, content={"error": type(exc).__name__, "message": str(exc)}
        )

    def _new_session_from_record(record: VerificationRecord) -> ApiSession:
        if record.result is None:
            result = solve(record.qbaf, record.config.semantics, record.config.solver)
        else:
            result = record.result
        session = ApiSession(
            session_id=store.new_id(),
            original_qbaf=record.qbaf,
            qbaf=record.qbaf,
            result=result,
            semantics=record.config.semantics,
            params=record.config.solver,
            tau=record.config.tau,
            claim=record.claim,
            verdict=record.verdict,
        )
        store.add(session)
        return session

    @app.post("/verify")
    def post_verify(payload: dict):
        if index is None or client is None:
            raise InvalidParams("server is not configured for verification (corpus or client missing)")
        claim = payload.get("claim")
        if not isinstance(claim, str) or not claim.strip():
            raise SchemaError("payload must contain a non-empty claim string")
        record = verify(claim, index, config, client)
        session = _new_session_from_record(record)
        return {"session_id": session.session_id, "record": record.to_dict()}

    @app.post("/session")
    def post_session(payload: dict):
        if not isinstance(payload, dict) or "qbaf" not in payload:
            raise SchemaError("payload must contain a qbaf object")
        qbaf = qbaf_from_dict(payload["qbaf"])
        try:
            semantics = Semantics(payload.get("semantics", config.semantics))
        except ValueError:
            raise InvalidParams(f"unknown semantics {payload.get('semantics')!r}") from None
        solver_raw = payload.get("solver")
        if solver_raw is None:
            params = config.solver
        elif isinstance(solver_raw, dict):
            try:
                params = SolverParams(**solver_raw)
            except TypeError:
                raise SchemaError("solver accepts step, epsilon and max_time") from None
        else:
            raise SchemaError("solver must be an object")
        tau = payload.get("tau", config.tau)
        if isinstance(tau, bool) or not isinstance(tau, (int, float)) or not 0.0 <= tau <= 1.0:
            raise InvalidParams(f"tau must lie in [0, 1], got {tau!r}")
        result = solve(qbaf, semantics, params)
        session = ApiSession(
            session_id=store.new_id(),
            original_qbaf=qbaf,
            qbaf=qbaf,
            result=result,
            semantics=semantics,
            params=params,
            tau=tau,
            claim=payload.get("claim"),
            verdict=claim_verdict(qbaf, result, tau),
        )
        store.add(session)
        return _session_payload(session)

    @app.get("/sessions")
    def get_sessions():
        return {
            "sessions": [
                {
                    "session_id": s.session_id,
                    "claim": s.claim,
                    "n_arguments": len(s.qbaf),
                    "verdict": s.verdict.to_dict() if s.verdict else None,
                }
                for s in store.all()
            ]
        }

    @app.get("/session/{session_id}")
    def get_session(session_id: str):
        return _session_payload(store.get(session_id))

    @app.post("/session/{session_id}/contest")
    def post_contest(session_id: str, payload: dict):
        session = store.get(session_id)
        if "edits" in payload:
            raw_edits = payload["edits"]
            if not isinstance(raw_edits, list) or not raw_edits:
                raise SchemaError("edits must be a non-empty list")
        elif "edit" in payload:
            raw_edits = [payload["edit"]]
        else:
            raise SchemaError("payload must contain edit or edits")
        edits = [edit_from_dict(raw) for raw in raw_edits]
        with session.lock:
            report = contest(session.qbaf, edits, session.semantics, session.params, session.tau)
            session.qbaf = report.after_qbaf
            session.result = report.after
            session.verdict = report.after_verdict
            session.edits.extend(report.edits)
        store.persist()
        return report.to_dict()

    @app.get("/session/{session_id}/explain/{arg_id}")
    def get_explain(session_id: str, arg_id: str):
        session = store.get(session_id)
        return explain_argument(session.qbaf, session.result, arg_id).to_dict()

    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
