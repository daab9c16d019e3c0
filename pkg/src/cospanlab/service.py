"""Session HTTP service.

Sessions live in memory: each holds a grammar, the current host, and an
undo stack.  Applies to one session are serialized behind a per-session
lock; distinct sessions proceed concurrently.  Every response carries the
package version header.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__
from . import io as enc
from .adjunction import graph_interface
from .cospans import FeetMismatch, compose, tensor
from .presheaf import Presheaf, canonical_key
from .rewriting import Derivation, Grammar, Step, apply_rule, find_matches
from .zx import load_rule_pack

VERSION_HEADER = "x-cospanlab-version"


@dataclass
class Session:
    id: str
    grammar: Grammar
    initial: Presheaf
    current: Presheaf
    undo_stack: list[tuple[Step, Presheaf]] = field(default_factory=list)
    created: float = field(default_factory=time.time)
    matches_epoch: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def matches(self):
        out = []
        for rule in self.grammar.rules:
            for i, m in enumerate(
                find_matches(rule, self.current, self.grammar.monic_matches)
            ):
                out.append((rule, i, m))
        return out


_sessions: dict[str, Session] = {}
_registry_lock = threading.Lock()

app = FastAPI(title="cospanlab", version=__version__)


@app.middleware("http")
async def _version_header(request: Request, call_next):
    response: Response = await call_next(request)
    response.headers[VERSION_HEADER] = __version__
    return response


def _error(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        {"error": {"code": code, "detail": detail}}, status_code=status
    )


def _state(s: Session) -> dict:
    return {
        "id": s.id,
        "current": enc.encode_presheaf(s.current),
        "key": repr(canonical_key(s.current)),
        "depth": len(s.undo_stack),
        "matches_epoch": s.matches_epoch,
    }


class CreateSession(BaseModel):
    grammar: dict
    start: dict


class ApplyRequest(BaseModel):
    rule: str
    match_index: int
    matches_epoch: int | None = None


@app.post("/sessions", status_code=201)
def create_session(body: CreateSession):
    try:
        grammar = enc.decode_grammar(body.grammar)
        start = enc.decode_presheaf(body.start)
    except enc.ParseError as exc:
        return _error(422, "validation", str(exc))
    if start.schema.name != grammar.interface.schema.name:
        return _error(422, "validation", "host is not on the grammar's schema")
    sid = uuid.uuid4().hex[:12]
    with _registry_lock:
        _sessions[sid] = Session(sid, grammar, start, start)
    return _state(_sessions[sid])


def _get(sid: str) -> Session | None:
    with _registry_lock:
        return _sessions.get(sid)


@app.get("/sessions/{sid}")
def get_session(sid: str):
    s = _get(sid)
    if s is None:
        return _error(404, "session", f"no session {sid!r}")
    with s.lock:
        return _state(s)


@app.get("/sessions/{sid}/matches")
def list_matches(sid: str):
    s = _get(sid)
    if s is None:
        return _error(404, "session", f"no session {sid!r}")
    with s.lock:
        out = []
        for rule, i, m in s.matches():
            preview = apply_rule(rule, m)
            out.append({
                "rule": rule.name,
                "match_index": i,
                "components": {st: list(c) for st, c in m.components.items()},
                "preview_key": repr(canonical_key(preview.result)),
            })
        return {"matches": out, "matches_epoch": s.matches_epoch}


@app.post("/sessions/{sid}/apply")
def apply_step(sid: str, body: ApplyRequest):
    s = _get(sid)
    if s is None:
        return _error(404, "session", f"no session {sid!r}")
    with s.lock:
        if body.matches_epoch is not None and body.matches_epoch != s.matches_epoch:
            return _error(409, "stale", "matches are stale; refresh and retry")
        candidates = [
            (rule, m) for rule, i, m in s.matches()
            if rule.name == body.rule and i == body.match_index
        ]
        if not candidates:
            return _error(409, "match", f"no match {body.match_index} for rule {body.rule!r}")
        rule, m = candidates[0]
        st = apply_rule(rule, m)
        if not st.verify():
            return _error(422, "verify", "step failed re-verification")
        s.undo_stack.append((st, s.current))
        s.current = st.result
        s.matches_epoch += 1
        return {"state": _state(s), "step": enc.encode_step(st)}


@app.post("/sessions/{sid}/undo")
def undo(sid: str):
    s = _get(sid)
    if s is None:
        return _error(404, "session", f"no session {sid!r}")
    with s.lock:
        if not s.undo_stack:
            return _error(409, "empty", "nothing to undo")
        _, previous = s.undo_stack.pop()
        s.current = previous
        s.matches_epoch += 1
        return _state(s)


@app.get("/sessions/{sid}/trace")
def trace(sid: str):
    s = _get(sid)
    if s is None:
        return _error(404, "session", f"no session {sid!r}")
    with s.lock:
        d = Derivation(s.initial, s.current, tuple(st for st, _ in s.undo_stack))
        if not d.verify():
            return _error(422, "verify", "trace failed re-verification")
        return enc.encode_derivation(d)


class EvalRequest(BaseModel):
    c1: dict
    c2: dict


def _eval(body: EvalRequest, op, name: str):
    iface = graph_interface()
    try:
        c1 = enc.decode_cospan(body.c1, iface)
        c2 = enc.decode_cospan(body.c2, iface)
        result = op(c1, c2)
    except (enc.ParseError, FeetMismatch) as exc:
        return _error(422, name, str(exc))
    return enc.encode_cospan(result)


@app.post("/eval/compose")
def eval_compose(body: EvalRequest):
    return _eval(body, compose, "compose")


@app.post("/eval/tensor")
def eval_tensor(body: EvalRequest):
    return _eval(body, tensor, "tensor")


@app.get("/rulepacks")
def rulepacks():
    """Names of extra ZX rule packs found under ZX_PACK_DIR."""
    pack_dir = os.environ.get("ZX_PACK_DIR")
    if not pack_dir:
        return {"packs": []}
    out = []
    for p in sorted(Path(pack_dir).glob("*.json")):
        try:
            out.append({"file": p.name, "rules": [s.name for s in load_rule_pack(p)]})
        except Exception:
            continue
    return {"packs": out}
