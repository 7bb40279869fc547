"""HTTP API over the quiz service.

All bodies are UTF-8 JSON; errors use {code, message, details}. Every
route requires a bearer token resolved to a role through the configured
token map. Handlers are synchronous on purpose: they run in the
threadpool, and the state layer serializes per-quiz mutations with locks.
"""

from __future__ import annotations

import json
from contextlib import asynccontextmanager

from fastapi import FastAPI, Header, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .config import ServiceConfig
from .state import ROLE_LECTURER, ROLE_STUDENT, QuizService, ServiceError
from .store import DocumentStore


def _error_response(status: int, code: str, message: str, details=None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details},
    )


def create_app(config: ServiceConfig) -> FastAPI:
    store = DocumentStore(config.data_dir)
    service = QuizService(
        store,
        config.backend,
        allow_resubmission=config.allow_resubmission,
    )

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        store.close()

    app = FastAPI(title="AutoMCQ", version="0.1.0", lifespan=lifespan)
    app.state.service = service
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def role_of(authorization: str | None) -> str:
        if not authorization or not authorization.lower().startswith("bearer "):
            raise ServiceError(
                401, "UNAUTHORIZED", "missing bearer token in Authorization header"
            )
        token = authorization[7:].strip()
        role = config.tokens.get(token)
        if role is None:
            raise ServiceError(401, "UNAUTHORIZED", "unknown token")
        return role

    def require(role: str, expected: str) -> None:
        if role != expected:
            raise ServiceError(
                403, "FORBIDDEN", f"this endpoint requires the {expected} role"
            )

    async def json_body(request: Request) -> dict:
        try:
            payload = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise ServiceError(400, "INVALID_JSON", "request body must be JSON")
        if not isinstance(payload, dict):
            raise ServiceError(400, "INVALID_JSON", "request body must be a JSON object")
        return payload

    @app.exception_handler(ServiceError)
    async def service_error_handler(_: Request, err: ServiceError):
        return _error_response(err.status, err.code, str(err), err.details)

    @app.post("/api/quizzes", status_code=201)
    async def create_quiz(request: Request, authorization: str | None = Header(None)):
        role_of(authorization)
        payload = await json_body(request)
        return service.create_quiz(payload)

    @app.get("/api/quizzes/{quiz_id}")
    async def get_quiz(quiz_id: str, authorization: str | None = Header(None)):
        role = role_of(authorization)
        return service.get_quiz_view(quiz_id, role)

    @app.post("/api/quizzes/{quiz_id}/answers")
    async def submit_answers(
        quiz_id: str, request: Request, authorization: str | None = Header(None)
    ):
        role = role_of(authorization)
        require(role, ROLE_STUDENT)
        payload = await json_body(request)
        return service.submit_answers(quiz_id, payload)

    @app.get("/api/quizzes/{quiz_id}/answers/{student_ref}")
    async def get_student_report(
        quiz_id: str, student_ref: str, authorization: str | None = Header(None)
    ):
        role_of(authorization)
        return service.get_student_report(quiz_id, student_ref)

    @app.get("/api/review/flags")
    async def list_flags(
        status: str | None = None, authorization: str | None = Header(None)
    ):
        role = role_of(authorization)
        require(role, ROLE_LECTURER)
        return service.list_flags(status)

    @app.post("/api/review/flags/{flag_id}/resolution")
    async def resolve_flag(
        flag_id: str, request: Request, authorization: str | None = Header(None)
    ):
        role = role_of(authorization)
        require(role, ROLE_LECTURER)
        payload = await json_body(request)
        return service.resolve_flag(flag_id, payload)

    @app.get("/api/quizzes/{quiz_id}/report")
    async def quiz_report(quiz_id: str, authorization: str | None = Header(None)):
        role = role_of(authorization)
        require(role, ROLE_LECTURER)
        return service.quiz_report(quiz_id)

    return app
