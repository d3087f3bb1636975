"""Judgment elicitation service.

An HTTP/JSON API for interactive pairwise-comparison sessions: experts
fill one comparison grid per hierarchy node, get live consistency
feedback with the worst inconsistent triple flagged, and finalize into
a questionnaire document once every node is complete and acceptable.

Sessions persist as append-only JSON-lines event logs under the
sessions directory, one `<id>.log` per session; in-memory state is a
fold over those events, so a restarted server resumes every session.
Writes within one session are serialized by a per-session lock; reads
see consistent copy-on-write snapshots.
"""

import json
import re
import secrets
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .ahp import complete_reciprocal, consistency, worst_triad
from .errors import RiskMcdmError, ValidationError
from .hierarchy import Hierarchy, is_saaty_value, parse_judgment_value
from .io import Expert, Questionnaire, load_hierarchy, questionnaire_to_dict

_SESSION_ID = re.compile(r"^[0-9a-f]{32}$")

OPEN = "open"
FINALIZED = "finalized"


class ApiError(Exception):
    """Carries the HTTP status and the error envelope fields."""

    def __init__(self, status: int, code: str, message: str, details=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details if details is not None else {}


@dataclass(frozen=True)
class SessionState:
    """Immutable fold of one session's event log."""

    id: str
    hierarchy_id: str
    expert: Expert
    state: str = OPEN
    judgments: dict = field(default_factory=dict)

    def with_judgment(self, node_id: str, i: int, j: int, value: Fraction):
        pairs = dict(self.judgments.get(node_id, {}))
        pairs[(i, j)] = value
        judgments = dict(self.judgments)
        judgments[node_id] = pairs
        return replace(self, judgments=judgments)


def _encode_value(value: Fraction) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def fold_events(events: list) -> SessionState:
    """Rebuild session state from its event log (pure function)."""
    state = None
    for event in events:
        kind = event.get("event")
        if kind == "created":
            expert_doc = event["expert"]
            state = SessionState(
                id=event["id"],
                hierarchy_id=event["hierarchy"],
                expert=Expert(
                    name=expert_doc["name"],
                    experience_years=float(expert_doc.get("experience_years", 0)),
                    degree=str(expert_doc.get("degree", "")),
                ),
            )
        elif kind == "judgment":
            if state is None:
                raise ValidationError("judgment event before created event")
            state = state.with_judgment(
                event["node"], int(event["i"]), int(event["j"]),
                parse_judgment_value(event["value"]),
            )
        elif kind == "finalized":
            if state is None:
                raise ValidationError("finalized event before created event")
            state = replace(state, state=FINALIZED)
        else:
            raise ValidationError(f"unknown event kind: {kind!r}")
    if state is None:
        raise ValidationError("empty event log")
    return state


class SessionStore:
    """Event-sourced session registry backed by one log file per session."""

    def __init__(self, sessions_dir):
        self.dir = Path(sessions_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self._states: dict = {}
        self._locks: dict = {}
        self._registry_lock = threading.Lock()

    def _log_path(self, session_id: str) -> Path:
        return self.dir / f"{session_id}.log"

    def _lock_for(self, session_id: str) -> threading.RLock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.RLock()
            return self._locks[session_id]

    def _append(self, session_id: str, event: dict):
        with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def load_events(self, session_id: str) -> list:
        path = self._log_path(session_id)
        with open(path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]

    def create(self, hierarchy_id: str, expert: Expert) -> SessionState:
        session_id = secrets.token_hex(16)
        event = {
            "event": "created",
            "id": session_id,
            "hierarchy": hierarchy_id,
            "expert": {
                "name": expert.name,
                "experience_years": expert.experience_years,
                "degree": expert.degree,
            },
            "at": datetime.now(timezone.utc).isoformat(),
        }
        with self._lock_for(session_id):
            self._append(session_id, event)
            state = fold_events([event])
            self._states[session_id] = state
        return state

    def get(self, session_id: str) -> SessionState:
        if not _SESSION_ID.match(session_id or ""):
            raise ApiError(404, "not_found", f"unknown session: {session_id}")
        state = self._states.get(session_id)
        if state is not None:
            return state
        if not self._log_path(session_id).exists():
            raise ApiError(404, "not_found", f"unknown session: {session_id}")
        with self._lock_for(session_id):
            state = self._states.get(session_id)
            if state is None:
                state = fold_events(self.load_events(session_id))
                self._states[session_id] = state
            return state

    def submit(self, session_id: str, node_id: str, i: int, j: int,
               value: Fraction) -> SessionState:
        with self._lock_for(session_id):
            state = self.get(session_id)
            if state.state == FINALIZED:
                raise ApiError(409, "session_finalized",
                               "session is finalized; judgments are read-only")
            self._append(session_id, {
                "event": "judgment", "node": node_id, "i": i, "j": j,
                "value": _encode_value(value),
            })
            state = state.with_judgment(node_id, i, j, value)
            self._states[session_id] = state
            return state

    def finalize(self, session_id: str, precondition=None) -> SessionState:
        """Mark the session finalized; `precondition(state)` runs under the
        session lock and may raise to refuse without writing an event."""
        with self._lock_for(session_id):
            state = self.get(session_id)
            if state.state == FINALIZED:
                raise ApiError(409, "already_finalized", "session is already finalized")
            if precondition is not None:
                precondition(state)
            self._append(session_id, {
                "event": "finalized",
                "at": datetime.now(timezone.utc).isoformat(),
            })
            state = replace(state, state=FINALIZED)
            self._states[session_id] = state
            return state


def node_report(h: Hierarchy, state: SessionState, node_id: str, item_ids: list) -> dict:
    """Progress, consistency, and worst-triad summary for one node."""
    n = len(item_ids)
    all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    answered = state.judgments.get(node_id, {})
    remaining = [pair for pair in all_pairs if pair not in answered]
    complete = not remaining
    out = {
        "node_id": node_id,
        "items": [
            {"id": item, "label": _label(h, item)} for item in item_ids
        ],
        "total_pairs": len(all_pairs),
        "answered_pairs": len(all_pairs) - len(remaining),
        "remaining_pairs": [[i, j] for i, j in remaining],
        "complete": complete,
        "consistency": None,
        "worst_triad": None,
    }
    if not complete:
        return out
    if n < 2:
        out["consistency"] = {
            "n": n, "lambda_max": float(n), "ci": 0.0, "ri": 0.0, "cr": 0.0,
            "verdict": "Acceptable", "acceptable": True,
        }
        return out
    M = complete_reciprocal(answered, n, tuple(item_ids))
    rep = consistency(M)
    out["consistency"] = {
        "n": rep.n,
        "lambda_max": rep.lambda_max,
        "ci": rep.ci,
        "ri": rep.ri,
        "cr": rep.cr,
        "verdict": rep.verdict,
        "acceptable": rep.acceptable,
    }
    triad = worst_triad(M)
    if triad is not None:
        i, j, k, discrepancy = triad
        out["worst_triad"] = {
            "items": [item_ids[i], item_ids[j], item_ids[k]],
            "indices": [i, j, k],
            "discrepancy": discrepancy,
        }
    return out


def _label(h: Hierarchy, item_id: str) -> str:
    node = h.node(item_id)
    return node.label if node is not None else item_id


def session_payload(h: Hierarchy, state: SessionState) -> dict:
    nodes = [
        node_report(h, state, node_id, item_ids)
        for node_id, item_ids in h.comparison_nodes()
    ]
    total = sum(node["total_pairs"] for node in nodes)
    answered = sum(node["answered_pairs"] for node in nodes)
    judgments = {}
    for node_id, pairs in state.judgments.items():
        judgments[node_id] = [
            {"i": i, "j": j, "value": _encode_value(v)}
            for (i, j), v in sorted(pairs.items())
        ]
    return {
        "id": state.id,
        "state": state.state,
        "hierarchy": state.hierarchy_id,
        "expert": {
            "name": state.expert.name,
            "experience_years": state.expert.experience_years,
            "degree": state.expert.degree,
        },
        "nodes": nodes,
        "completion": (answered / total) if total else 1.0,
        "judgments": judgments,
        "all_acceptable": all(
            node["complete"]
            and node["consistency"] is not None
            and node["consistency"]["acceptable"]
            for node in nodes
        ),
    }


def blocking_nodes(payload: dict) -> list:
    """Nodes that keep a session from being finalized, with reasons."""
    blocking = []
    for node in payload["nodes"]:
        if not node["complete"]:
            blocking.append({
                "node_id": node["node_id"],
                "reason": "incomplete",
                "remaining_pairs": node["remaining_pairs"],
                "cr": None,
            })
        elif not node["consistency"]["acceptable"]:
            blocking.append({
                "node_id": node["node_id"],
                "reason": "inconsistent",
                "remaining_pairs": [],
                "cr": node["consistency"]["cr"],
            })
    return blocking


class ExpertBody(BaseModel):
    name: str
    experience_years: float = 0.0
    degree: str = ""


class CreateSessionBody(BaseModel):
    expert: ExpertBody
    hierarchy: str | None = None


class JudgmentBody(BaseModel):
    node_id: str
    i: int
    j: int
    value: float | int | str


_FALLBACK_PAGE = """<!doctype html>
<html lang="en">
<head><meta charset="utf-8"><title>Risk questionnaire service</title></head>
<body>
<h1>Judgment elicitation service</h1>
<p>The web questionnaire bundle is not installed. The JSON API is live:
see <code>GET /api/hierarchies</code> and <code>GET /healthz</code>.</p>
</body>
</html>
"""


def create_app(hierarchy_path, sessions_dir="sessions") -> FastAPI:
    """Build the service around one hierarchy and one sessions directory."""
    h = load_hierarchy(hierarchy_path)
    hierarchy_id = Path(hierarchy_path).stem
    store = SessionStore(sessions_dir)
    app = FastAPI(title="riskmcdm elicitation service", docs_url=None, redoc_url=None)

    def error_response(status: int, code: str, message: str, details=None):
        return JSONResponse(
            status_code=status,
            content={"error": {
                "code": code, "message": message,
                "details": details if details is not None else {},
            }},
        )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return error_response(exc.status, exc.code, exc.message, exc.details)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        details = [
            {"loc": [str(part) for part in err.get("loc", ())],
             "msg": str(err.get("msg", "")),
             "type": str(err.get("type", ""))}
            for err in exc.errors()
        ]
        return error_response(422, "validation_error", "invalid request body",
                              {"errors": details})

    @app.exception_handler(RiskMcdmError)
    async def handle_domain_error(request: Request, exc: RiskMcdmError):
        return error_response(422, "domain_error", str(exc))

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/api/hierarchies")
    def hierarchies():
        return {"hierarchies": [{
            "id": hierarchy_id,
            "goal": h.goal_label,
            "alternatives": list(h.alternatives),
            "nodes": [
                {
                    "node_id": node_id,
                    "label": h.goal_label if node_id == "goal" else _label(h, node_id),
                    "items": [
                        {"id": item, "label": _label(h, item)} for item in item_ids
                    ],
                    "total_pairs": len(item_ids) * (len(item_ids) - 1) // 2,
                }
                for node_id, item_ids in h.comparison_nodes()
            ],
        }]}

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if body.hierarchy is not None and body.hierarchy != hierarchy_id:
            raise ApiError(404, "unknown_hierarchy",
                           f"this server hosts only {hierarchy_id!r}",
                           {"requested": body.hierarchy})
        if not body.expert.name.strip():
            raise ApiError(422, "validation_error", "expert name must not be empty")
        state = store.create(hierarchy_id, Expert(
            name=body.expert.name,
            experience_years=body.expert.experience_years,
            degree=body.expert.degree,
        ))
        return session_payload(h, state)

    @app.get("/api/sessions/{session_id}")
    def session_status(session_id: str):
        return session_payload(h, store.get(session_id))

    @app.put("/api/sessions/{session_id}/judgments")
    def submit_judgment(session_id: str, body: JudgmentBody):
        node_items = dict(h.comparison_nodes())
        if body.node_id not in node_items:
            raise ApiError(422, "unknown_node",
                           f"unknown comparison node: {body.node_id}",
                           {"known": sorted(node_items)})
        n = len(node_items[body.node_id])
        if not (0 <= body.i < body.j < n):
            raise ApiError(422, "invalid_pair",
                           f"pair ({body.i}, {body.j}) must satisfy 0 <= i < j < {n}")
        try:
            value = parse_judgment_value(body.value)
        except ValidationError as exc:
            raise ApiError(422, "invalid_value", str(exc)) from None
        if not is_saaty_value(value):
            raise ApiError(
                422, "invalid_value",
                "value must be an integer 1..9 or the reciprocal of one")
        state = store.submit(session_id, body.node_id, body.i, body.j, value)
        payload = session_payload(h, state)
        node = next(nd for nd in payload["nodes"] if nd["node_id"] == body.node_id)
        return {
            "id": state.id,
            "state": state.state,
            "node": node,
            "completion": payload["completion"],
            "all_acceptable": payload["all_acceptable"],
        }

    @app.get("/api/sessions/{session_id}/consistency")
    def session_consistency(session_id: str):
        payload = session_payload(h, store.get(session_id))
        return {
            "id": payload["id"],
            "state": payload["state"],
            "nodes": [
                {
                    "node_id": node["node_id"],
                    "complete": node["complete"],
                    "consistency": node["consistency"],
                    "worst_triad": node["worst_triad"],
                }
                for node in payload["nodes"]
            ],
            "all_acceptable": payload["all_acceptable"],
        }

    @app.post("/api/sessions/{session_id}/finalize")
    def finalize_session(session_id: str):
        def must_be_finalizable(state: SessionState):
            blocking = blocking_nodes(session_payload(h, state))
            if blocking:
                raise ApiError(409, "not_finalizable",
                               "every node must be complete with CR below 0.10",
                               {"blocking": blocking})

        state = store.finalize(session_id, precondition=must_be_finalizable)
        return questionnaire_to_dict(Questionnaire(
            expert=state.expert, judgments=state.judgments))

    static_dir = Path(__file__).parent / "static"
    if static_dir.is_dir() and (static_dir / "index.html").exists():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def index():
            return _FALLBACK_PAGE

    return app
