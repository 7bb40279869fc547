"""Error codes and exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

# Question validation
EMPTY_STEM = "EMPTY_STEM"
OPTION_COUNT_OUT_OF_RANGE = "OPTION_COUNT_OUT_OF_RANGE"
CORRECT_INDEX_OUT_OF_RANGE = "CORRECT_INDEX_OUT_OF_RANGE"
DUPLICATE_OPTIONS = "DUPLICATE_OPTIONS"
RESERVED_OPTION_TEXT = "RESERVED_OPTION_TEXT"

# Generation request validation
INVALID_REQUEST = "INVALID_REQUEST"

# Quiz assembly / rendering
QUESTION_COUNT_MISMATCH = "QUESTION_COUNT_MISMATCH"
QUIZ_NOT_PUBLISHED = "QUIZ_NOT_PUBLISHED"

# Grading
SHEET_QUIZ_MISMATCH = "SHEET_QUIZ_MISMATCH"
ANSWER_COUNT_MISMATCH = "ANSWER_COUNT_MISMATCH"
ANSWER_INDEX_OUT_OF_RANGE = "ANSWER_INDEX_OUT_OF_RANGE"
UNKNOWN_VOIDED_QUESTION = "UNKNOWN_VOIDED_QUESTION"

# LLM response parsing
PARSE_FAILURE = "PARSE_FAILURE"
COUNT_MISMATCH = "COUNT_MISMATCH"

# Flag lifecycle
FLAG_ALREADY_RESOLVED = "FLAG_ALREADY_RESOLVED"


@dataclass(frozen=True)
class ValidationIssue:
    """One violation found while checking untrusted input.

    Validators return the complete list of issues rather than stopping at
    the first, so callers (and repair prompts) can report everything wrong
    in one pass.
    """

    code: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"code": self.code, "message": self.message}


class AutoMcqError(Exception):
    """Base class for domain errors; carries a stable machine-readable code."""

    def __init__(self, message: str, *, code: str, details: Any = None):
        super().__init__(message)
        self.code = code
        self.details = details


class InvalidRequestError(AutoMcqError):
    """A generation request violated one or more invariants."""

    def __init__(self, issues: list[ValidationIssue]):
        summary = "; ".join(issue.message for issue in issues)
        super().__init__(
            f"invalid generation request: {summary}",
            code=INVALID_REQUEST,
            details=[issue.to_dict() for issue in issues],
        )
        self.issues = issues


class QuizAssemblyError(AutoMcqError):
    pass


class QuizNotPublishedError(AutoMcqError):
    def __init__(self, quiz_id: str):
        super().__init__(
            f"quiz {quiz_id} is not published", code=QUIZ_NOT_PUBLISHED
        )


class GradingError(AutoMcqError):
    pass


class FlagAlreadyResolvedError(AutoMcqError):
    def __init__(self, flag_id: str, status: str):
        super().__init__(
            f"flag {flag_id} is already {status}; resolved flags are terminal",
            code=FLAG_ALREADY_RESOLVED,
        )
