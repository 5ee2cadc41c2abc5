"""HTTP+JSON API over the workspace store and the solver pipeline.

All run-mode endpoints work without a session too (anonymous quick runs);
file and folder endpoints require a login token in the Authorization
header (``Bearer <token>``).  Solver work is admitted through a FIFO gate
capping concurrent runs, and timeouts are clamped server-side.
"""
from __future__ import annotations

import threading
import time
from collections import deque
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..display import plan_json
from ..pipeline import MODES, RunResult, answer_sets_html, run
from ..preprocess import StandardResolver
from ..query import QueryAnswer
from ..solver import SolveLimits, format_answer_sets
from ..syntax import literal_text, term_text
from .config import ServiceConfig
from .store import StoreError, WorkspaceStore

_STORE_STATUS = {
    "duplicate-user": 409,
    "bad-credentials": 401,
    "invalid-session": 401,
    "not-found": 404,
    "not-authorized": 403,
    "name-collision": 409,
    "bad-request": 422,
}


class _FifoGate:
    """Admission control: at most ``capacity`` concurrent solver runs,
    served strictly in arrival order."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._cv = threading.Condition()
        self._queue: deque[object] = deque()
        self._active = 0

    def __enter__(self):
        ticket = object()
        with self._cv:
            self._queue.append(ticket)
            while self._active >= self.capacity or self._queue[0] is not ticket:
                self._cv.wait()
            self._queue.popleft()
            self._active += 1
        return self

    def __exit__(self, *exc):
        with self._cv:
            self._active -= 1
            self._cv.notify_all()
        return False


class RegisterBody(BaseModel):
    username: str
    password: str


class LoginBody(BaseModel):
    username: str
    password: str


class FolderBody(BaseModel):
    parent: Optional[int] = None
    name: str


class FileBody(BaseModel):
    folder: Optional[int] = None
    name: str
    content: str = ""


class FileUpdateBody(BaseModel):
    content: Optional[str] = None
    name: Optional[str] = None


class FolderUpdateBody(BaseModel):
    name: str


class RunBody(BaseModel):
    program: str
    mode: str = "answer_sets"
    query: Optional[str] = None
    timeoutSec: Optional[float] = None


def _query_answer_json(answer: QueryAnswer) -> dict:
    out: dict = {"inconsistent": answer.inconsistent, "text": answer.text()}
    if answer.bindings is None:
        out["verdict"] = str(answer.verdict)
    else:
        out["bindings"] = [
            {k: term_text(v) for k, v in sorted(b.items())} for b in answer.bindings]
    return out


def create_app(config: ServiceConfig) -> FastAPI:
    store = WorkspaceStore(config.data_dir)
    gate = _FifoGate(config.max_concurrent_solves)
    app = FastAPI(title="sparclab workspace", version="0.1.0")

    @app.exception_handler(StoreError)
    async def _store_error(request, exc: StoreError):
        return JSONResponse(status_code=_STORE_STATUS.get(exc.code, 400),
                            content={"error": exc.code, "message": str(exc)})

    def current_user(authorization: Optional[str] = Header(default=None)) -> int:
        if not authorization or not authorization.startswith("Bearer "):
            raise StoreError("invalid-session", "missing bearer token")
        return store.session_user(authorization.removeprefix("Bearer "))

    def optional_user(authorization: Optional[str] = Header(default=None)) -> int | None:
        if not authorization:
            return None
        if not authorization.startswith("Bearer "):
            raise StoreError("invalid-session", "missing bearer token")
        return store.session_user(authorization.removeprefix("Bearer "))

    # -- auth ----------------------------------------------------------------

    @app.post("/api/register", status_code=201)
    def register(body: RegisterBody):
        user_id = store.register(body.username, body.password)
        return {"userId": user_id}

    @app.post("/api/login")
    def login(body: LoginBody):
        token = store.login(body.username, body.password, config.session_ttl_sec)
        return {"token": token}

    @app.post("/api/logout")
    def logout(authorization: Optional[str] = Header(default=None)):
        if authorization and authorization.startswith("Bearer "):
            store.logout(authorization.removeprefix("Bearer "))
        return {"status": "ok"}

    # -- files and folders -----------------------------------------------------

    @app.get("/api/tree")
    def tree(user: int = Depends(current_user)):
        return store.tree(user)

    @app.post("/api/folders", status_code=201)
    def create_folder(body: FolderBody, user: int = Depends(current_user)):
        return store.create_folder(user, body.parent, body.name)

    @app.put("/api/folders/{folder_id}")
    def rename_folder(folder_id: int, body: FolderUpdateBody,
                      user: int = Depends(current_user)):
        return store.rename_folder(user, folder_id, body.name)

    @app.delete("/api/folders/{folder_id}")
    def delete_folder(folder_id: int, user: int = Depends(current_user)):
        store.delete_folder(user, folder_id)
        return {"status": "ok"}

    @app.post("/api/files", status_code=201)
    def create_file(body: FileBody, user: int = Depends(current_user)):
        return store.create_file(user, body.folder, body.name, body.content)

    @app.get("/api/files/{file_id}")
    def read_file(file_id: int, user: int = Depends(current_user)):
        return store.read_file(user, file_id)

    @app.put("/api/files/{file_id}")
    def update_file(file_id: int, body: FileUpdateBody,
                    user: int = Depends(current_user)):
        return store.save_file(user, file_id, content=body.content, name=body.name)

    @app.delete("/api/files/{file_id}")
    def delete_file(file_id: int, user: int = Depends(current_user)):
        store.delete_file(user, file_id)
        return {"status": "ok"}

    @app.post("/api/files/{file_id}/share")
    def share_file(file_id: int, user: int = Depends(current_user)):
        token = store.share_file(user, file_id)
        return {"shareUrl": f"/api/shared/{token}"}

    @app.get("/api/shared/{token}")
    def shared(token: str):
        return store.shared_content(token)

    # -- runs ------------------------------------------------------------------

    class _WorkspaceIncludes:
        """Quoted includes resolve against the logged-in user's saved files."""

        def __init__(self, user: int | None):
            self.user = user

        def resolve(self, path: str, angled: bool):
            if self.user is None:
                return None
            hit = store.file_by_url(self.user, path if path.startswith("/") else f"/{path}")
            if hit is None:
                return None
            return f"user{self.user}:{hit['url']}", hit["content"]

    @app.post("/api/run")
    def run_program(body: RunBody, user: int | None = Depends(optional_user)):
        if body.mode not in MODES:
            raise HTTPException(422, f"mode must be one of {MODES}")
        if len(body.program.encode("utf-8")) > config.max_program_bytes:
            raise HTTPException(413, "program too large")
        requested = body.timeoutSec if body.timeoutSec is not None else config.default_timeout_sec
        if requested <= 0:
            raise HTTPException(422, "timeoutSec must be positive")
        applied = min(requested, config.max_timeout_sec)
        limits = SolveLimits(timeout_sec=applied, max_answer_sets=config.answer_set_cap)
        resolver = StandardResolver(_WorkspaceIncludes(user))
        with gate:
            result = run(body.program, body.mode, query_text=body.query,
                         limits=limits, resolver=resolver)
        return _run_response(result, applied)

    def _run_response(result: RunResult, applied_timeout: float) -> dict:
        out: dict = {
            "status": result.status,
            "appliedTimeoutSec": applied_timeout,
            "diagnostics": [
                {"code": d.code, "message": d.message,
                 "line": d.pos.line if d.pos else None,
                 "col": d.pos.col if d.pos else None}
                for d in result.diagnostics],
        }
        if result.answer_sets is not None:
            out["answerSets"] = [
                [literal_text(l) for l in s.sorted_literals()] for s in result.answer_sets]
            out["answerSetsText"] = format_answer_sets(result.answer_sets)
            out["answerSetsHtml"] = answer_sets_html(result.answer_sets)
        if result.query_answer is not None:
            out["queryAnswer"] = _query_answer_json(result.query_answer)
        if result.plans is not None:
            out["plans"] = [plan_json(p) for p in result.plans]
        if result.html is not None:
            out["html"] = result.html
        return out

    @app.get("/api/health")
    def health():
        return {"status": "ok", "time": time.time()}

    return app
