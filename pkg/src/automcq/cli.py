"""Command-line entry point: generate quizzes, grade offline, run the service.

Exit codes are stable: 0 success, 1 validation failure, 2 backend failure,
3 I/O failure. Machine-readable output goes to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path
from typing import Any

from .core.errors import GradingError, InvalidRequestError
from .core.grading import grade_sheet
from .core.models import AnswerSheet, Quiz
from .core.skeleton import skeleton_targeting_warnings
from .core.validation import assemble_quiz, parse_generation_request
from .llm.config import (
    DEFAULT_MODEL,
    KIND_MOCK,
    KIND_OPENAI_COMPATIBLE,
    BackendConfig,
    BackendError,
)
from .llm.pipeline import GenerationFailedError, generate_questions
from .service.config import (
    ENV_BASE_URL,
    ENV_MODEL,
    ServiceConfig,
    load_token_map,
    service_config_from_env,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BACKEND = 2
EXIT_IO = 3

QUIZ_FILE_VERSION = 1


def _fail(message: str) -> None:
    print(f"automcq: {message}", file=sys.stderr)


# -- quiz files ---------------------------------------------------------------


def save_quiz_file(path: str | Path, quiz: Quiz) -> None:
    """Write the lecturer form of a quiz (answers included) to disk."""
    document = {"format_version": QUIZ_FILE_VERSION, "quiz": quiz.to_dict()}
    Path(path).write_text(
        json.dumps(document, indent=2) + "\n", encoding="utf-8"
    )


def load_quiz_file(path: str | Path) -> Quiz:
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    if document.get("format_version") != QUIZ_FILE_VERSION:
        raise ValueError(
            f"{path}: unsupported quiz file version "
            f"{document.get('format_version')!r}"
        )
    return Quiz.from_dict(document["quiz"])


# -- generate -----------------------------------------------------------------


def _backend_from_args(args: argparse.Namespace) -> BackendConfig:
    if args.backend == "mock":
        return BackendConfig(kind=KIND_MOCK)
    return BackendConfig(
        kind=KIND_OPENAI_COMPATIBLE,
        base_url=args.base_url
        or os.environ.get(ENV_BASE_URL, "https://api.openai.com/v1"),
        model_name=args.model or os.environ.get(ENV_MODEL, DEFAULT_MODEL),
    )


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        student_code = Path(args.code).read_text(encoding="utf-8")
        provided_code = (
            Path(args.provided).read_text(encoding="utf-8")
            if args.provided
            else None
        )
        assignment = (
            Path(args.assignment).read_text(encoding="utf-8")
            if os.path.isfile(args.assignment)
            else args.assignment
        )
    except OSError as err:
        _fail(f"cannot read input: {err}")
        return EXIT_IO

    topics = [t.strip() for t in args.topics.split(",") if t.strip()] if args.topics else []
    payload: dict[str, Any] = {
        "num_questions": args.num,
        "assignment_text": assignment,
        "topics": topics,
        "language": args.language,
        "student_code": student_code,
        "student_ref": args.student,
        "provided_code": provided_code,
    }
    try:
        request = parse_generation_request(payload)
    except InvalidRequestError as err:
        _fail(str(err))
        return EXIT_VALIDATION

    try:
        questions, _exchange = generate_questions(_backend_from_args(args), request)
    except (GenerationFailedError, BackendError) as err:
        _fail(f"generation failed: {err}")
        return EXIT_BACKEND

    quiz = assemble_quiz(request, questions).publish()
    for warning in skeleton_targeting_warnings(
        quiz.questions, request.provided_code, request.student_code
    ):
        print(
            f"automcq: warning: {warning.question_id}: {warning.message}",
            file=sys.stderr,
        )

    try:
        save_quiz_file(args.out, quiz)
    except OSError as err:
        _fail(f"cannot write quiz file: {err}")
        return EXIT_IO
    print(f"wrote quiz {quiz.quiz_id} ({len(quiz.questions)} questions) to {args.out}",
          file=sys.stderr)
    return EXIT_OK


# -- grade --------------------------------------------------------------------


def cmd_grade(args: argparse.Namespace) -> int:
    try:
        quiz = load_quiz_file(args.quiz)
        sheet_doc = json.loads(Path(args.answers).read_text(encoding="utf-8"))
    except (OSError, ValueError) as err:
        _fail(f"cannot read inputs: {err}")
        return EXIT_IO

    voided = (
        {v.strip() for v in args.voided.split(",") if v.strip()}
        if args.voided
        else set()
    )
    unknown = voided - set(quiz.question_ids)
    if unknown:
        _fail(f"voided ids not in quiz: {', '.join(sorted(unknown))}")
        return EXIT_VALIDATION

    try:
        sheet = AnswerSheet(
            quiz_id=sheet_doc.get("quiz_id", quiz.quiz_id),
            student_ref=sheet_doc.get("student_ref", "offline"),
            answers=tuple(sheet_doc.get("answers", [])),
        )
        report = grade_sheet(quiz, sheet, voided)
    except (GradingError, ValueError, TypeError) as err:
        _fail(f"sheet does not match quiz: {err}")
        return EXIT_VALIDATION

    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


# -- serve --------------------------------------------------------------------


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    try:
        env = dict(os.environ)
        if args.backend:
            env["AUTOMCQ_BACKEND"] = args.backend
        base = service_config_from_env(env)
        config = ServiceConfig(
            data_dir=Path(args.data_dir) if args.data_dir else base.data_dir,
            backend=base.backend,
            tokens=load_token_map(args.tokens) if args.tokens else base.tokens,
            host=args.host or base.host,
            port=args.port or base.port,
        )
    except (OSError, ValueError) as err:
        _fail(f"bad service configuration: {err}")
        return EXIT_IO

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((config.host, config.port))
    except OSError as err:
        _fail(f"port {config.port} unavailable: {err}")
        return EXIT_IO
    finally:
        probe.close()

    try:
        app = create_app(config)
    except OSError as err:
        _fail(f"data directory unavailable: {err}")
        return EXIT_IO

    print(f"serving on http://{config.host}:{config.port}", flush=True)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="automcq",
        description="Generate, deliver and mark AI-generated code "
        "comprehension quizzes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a quiz from files")
    gen.add_argument("--code", required=True, help="path to the student's code")
    gen.add_argument(
        "--assignment",
        required=True,
        help="assignment text, or a path to a file containing it",
    )
    gen.add_argument("--topics", default="", help="comma-separated topic tags")
    gen.add_argument("--language", required=True, help="programming language id")
    gen.add_argument("--num", required=True, type=int, help="number of questions")
    gen.add_argument("--provided", help="path to skeleton code given to the student")
    gen.add_argument(
        "--backend", choices=["mock", "openai"], default="mock",
        help="question generator backend",
    )
    gen.add_argument("--base-url", help="openai-compatible endpoint base URL")
    gen.add_argument("--model", help="model name for the openai backend")
    gen.add_argument("--student", default="cli", help="student reference")
    gen.add_argument("--out", required=True, help="path for the quiz file")
    gen.set_defaults(func=cmd_generate)

    grade = sub.add_parser("grade", help="grade an answer sheet offline")
    grade.add_argument("--quiz", required=True, help="path to a quiz file")
    grade.add_argument("--answers", required=True, help="path to an answer sheet JSON")
    grade.add_argument("--voided", help="comma-separated voided question ids")
    grade.set_defaults(func=cmd_grade)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", help="bind host (default 127.0.0.1)")
    serve.add_argument("--port", type=int, help="bind port (default 8080)")
    serve.add_argument("--data-dir", help="store directory")
    serve.add_argument("--backend", choices=["mock", "openai"])
    serve.add_argument("--tokens", help="path to a token -> role JSON map")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def run() -> None:
    raise SystemExit(main())
