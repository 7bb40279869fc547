"""The generation pipeline: prompt, complete, parse, validate, repair once.

Exactly one repair round, never more: a malformed first response earns a
single follow-up prompt quoting the reply and every problem found. Every
path through the pipeline, including failures, yields an LlmExchange audit
record so a lecturer can always see what the backend was asked and said.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

from ..core.errors import (
    COUNT_MISMATCH,
    PARSE_FAILURE,
    AutoMcqError,
    ValidationIssue,
)
from ..core.models import GenerationRequest, MCQuestion
from ..core.validation import validate_question
from ..prompts import PromptMessage, build_repair_prompt, build_system_prompt, build_user_prompt
from .client import Backend, make_backend
from .config import BackendConfig, BackendError
from .parsing import parse_questions


class ParseOutcome(str, Enum):
    OK = "ok"
    REPAIRED = "repaired"
    FAILED = "failed"


@dataclass(frozen=True)
class LlmExchange:
    """Audit record of one generation round-trip (including its repair)."""

    messages: tuple[PromptMessage, ...]
    raw_response: str
    parse_outcome: ParseOutcome
    attempts: int
    latency_seconds: float

    def __post_init__(self) -> None:
        if self.attempts not in (1, 2):
            raise ValueError("attempts must be 1 or 2")
        if self.parse_outcome is ParseOutcome.OK and self.attempts != 1:
            raise ValueError("a first-try success has exactly one attempt")
        if self.parse_outcome is ParseOutcome.REPAIRED and self.attempts != 2:
            raise ValueError("a repaired exchange has exactly two attempts")

    def to_dict(self) -> dict[str, Any]:
        return {
            "messages": [m.to_dict() for m in self.messages],
            "raw_response": self.raw_response,
            "parse_outcome": self.parse_outcome.value,
            "attempts": self.attempts,
            "latency_seconds": self.latency_seconds,
        }


class GenerationFailedError(AutoMcqError):
    """Both the first attempt and the repair round produced unusable output."""

    def __init__(self, issues: list[ValidationIssue], exchange: LlmExchange):
        summary = "; ".join(issue.message for issue in issues)
        super().__init__(
            f"question generation failed after repair: {summary}",
            code="GENERATION_FAILED",
            details=[issue.to_dict() for issue in issues],
        )
        self.issues = issues
        self.exchange = exchange


def _usable_questions(
    raw: str, expected: int
) -> tuple[list[MCQuestion], list[ValidationIssue]]:
    """Parse and validate one completion; return questions or blocking issues.

    A surplus of questions is harmless (the first expected_count are kept);
    a deficit or any invalid record blocks and triggers repair.
    """
    records, parse_issues = parse_questions(raw, expected)
    if any(issue.code == PARSE_FAILURE for issue in parse_issues):
        return [], parse_issues

    blocking = [
        issue
        for issue in parse_issues
        if issue.code == COUNT_MISMATCH and len(records) < expected
    ]
    records = records[:expected]

    questions: list[MCQuestion] = []
    for position, record in enumerate(records):
        question, issues = validate_question(record)
        if issues:
            blocking.extend(
                ValidationIssue(
                    issue.code, f"question {position + 1}: {issue.message}"
                )
                for issue in issues
            )
        elif question is not None:
            questions.append(question)

    if blocking:
        return [], blocking
    return questions, []


def run_generation(
    backend: Backend, request: GenerationRequest
) -> tuple[list[MCQuestion], LlmExchange]:
    """Drive one generation against an existing backend instance."""
    started = time.monotonic()
    messages: list[PromptMessage] = [
        build_system_prompt(),
        build_user_prompt(request),
    ]

    def elapsed() -> float:
        return time.monotonic() - started

    try:
        raw = backend.complete(messages)
    except BackendError as err:
        err.exchange = LlmExchange(
            messages=tuple(messages),
            raw_response="",
            parse_outcome=ParseOutcome.FAILED,
            attempts=1,
            latency_seconds=elapsed(),
        )
        raise

    questions, issues = _usable_questions(raw, request.num_questions)
    if not issues:
        exchange = LlmExchange(
            messages=tuple(messages),
            raw_response=raw,
            parse_outcome=ParseOutcome.OK,
            attempts=1,
            latency_seconds=elapsed(),
        )
        return questions, exchange

    messages.append(build_repair_prompt(raw, issues))
    try:
        repaired_raw = backend.complete(messages)
    except BackendError as err:
        err.exchange = LlmExchange(
            messages=tuple(messages),
            raw_response=raw,
            parse_outcome=ParseOutcome.FAILED,
            attempts=2,
            latency_seconds=elapsed(),
        )
        raise

    questions, repair_issues = _usable_questions(repaired_raw, request.num_questions)
    exchange = LlmExchange(
        messages=tuple(messages),
        raw_response=repaired_raw,
        parse_outcome=ParseOutcome.FAILED if repair_issues else ParseOutcome.REPAIRED,
        attempts=2,
        latency_seconds=elapsed(),
    )
    if repair_issues:
        raise GenerationFailedError(repair_issues, exchange)
    return questions, exchange


def generate_questions(
    config: BackendConfig, request: GenerationRequest
) -> tuple[list[MCQuestion], LlmExchange]:
    """One-shot generation: build a backend from config and run it once."""
    return run_generation(make_backend(config), request)
