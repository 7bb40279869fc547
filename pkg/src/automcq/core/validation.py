"""Validation of untrusted question records and generation requests.

Validators collect the complete list of violations rather than stopping at
the first one, so a single repair round (or a single 400 response) can name
everything that needs fixing.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping, Sequence

from .constants import (
    DEFAULT_ALLOWED_LANGUAGES,
    FLAG_OPTION_TEXT,
    MAX_OPTIONS,
    MAX_QUESTIONS,
    MIN_OPTIONS,
    MIN_QUESTIONS,
)
from .errors import (
    CORRECT_INDEX_OUT_OF_RANGE,
    INVALID_REQUEST,
    DUPLICATE_OPTIONS,
    EMPTY_STEM,
    OPTION_COUNT_OUT_OF_RANGE,
    QUESTION_COUNT_MISMATCH,
    RESERVED_OPTION_TEXT,
    InvalidRequestError,
    QuizAssemblyError,
    ValidationIssue,
)
from .models import (
    GenerationRequest,
    MCQuestion,
    Quiz,
    new_id,
    normalized_option_text,
)


def _coerce_index(value: Any) -> int | None:
    """Accept ints and integer-looking strings; reject everything else."""
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        stripped = value.strip()
        if stripped.lstrip("-").isdigit():
            return int(stripped)
    return None


def validate_question(
    candidate: Mapping[str, Any],
) -> tuple[MCQuestion | None, list[ValidationIssue]]:
    """Normalize a raw question record into an MCQuestion.

    Returns ``(question, [])`` on success or ``(None, issues)`` with every
    violation found. Tolerates arbitrarily malformed records: missing
    fields, wrong types and out-of-range values all turn into issues.
    """
    issues: list[ValidationIssue] = []

    stem = candidate.get("stem")
    stem = stem.strip() if isinstance(stem, str) else ""
    if not stem:
        issues.append(
            ValidationIssue(EMPTY_STEM, "stem must be a non-empty string")
        )

    raw_options = candidate.get("options")
    options: list[str] = []
    if isinstance(raw_options, (list, tuple)):
        options = [
            opt.strip() if isinstance(opt, str) else str(opt)
            for opt in raw_options
        ]
    if not MIN_OPTIONS <= len(options) <= MAX_OPTIONS:
        issues.append(
            ValidationIssue(
                OPTION_COUNT_OUT_OF_RANGE,
                f"options must be a list of {MIN_OPTIONS} to {MAX_OPTIONS} "
                f"texts, got {len(options)}",
            )
        )

    normalized = [normalized_option_text(opt) for opt in options]
    if len(set(normalized)) != len(normalized):
        issues.append(
            ValidationIssue(
                DUPLICATE_OPTIONS,
                "options must be pairwise distinct after whitespace "
                "normalization and case folding",
            )
        )
    if normalized_option_text(FLAG_OPTION_TEXT) in normalized:
        issues.append(
            ValidationIssue(
                RESERVED_OPTION_TEXT,
                f"option text {FLAG_OPTION_TEXT!r} is reserved for the "
                "flag choice and may not be generated",
            )
        )

    correct_index = _coerce_index(candidate.get("correct_index"))
    if correct_index is None or not 0 <= correct_index < max(len(options), 1):
        issues.append(
            ValidationIssue(
                CORRECT_INDEX_OUT_OF_RANGE,
                f"correct_index {candidate.get('correct_index')!r} is not a "
                f"valid index into {len(options)} options",
            )
        )

    if issues:
        return None, issues

    explanation = candidate.get("explanation")
    explanation = explanation.strip() if isinstance(explanation, str) else None
    topic = candidate.get("topic")
    topic = topic.strip() if isinstance(topic, str) else None

    question = MCQuestion(
        question_id=str(candidate.get("question_id") or new_id()),
        stem=stem,
        options=tuple(options),
        correct_index=correct_index,
        explanation=explanation or None,
        topic=topic or None,
    )
    return question, []


def assemble_quiz(
    request: GenerationRequest,
    questions: Sequence[MCQuestion],
    *,
    quiz_id: str | None = None,
) -> Quiz:
    """Bind validated questions to a request snapshot as a draft quiz."""
    if len(questions) != request.num_questions:
        raise QuizAssemblyError(
            f"request asked for {request.num_questions} questions but "
            f"{len(questions)} were supplied",
            code=QUESTION_COUNT_MISMATCH,
        )
    return Quiz(
        quiz_id=quiz_id or new_id(),
        request=request,
        questions=tuple(questions),
    )


def generation_request_issues(
    payload: Mapping[str, Any],
    *,
    allowed_languages: Iterable[str] = DEFAULT_ALLOWED_LANGUAGES,
) -> list[ValidationIssue]:
    """Check a request payload against the type invariants."""
    issues: list[ValidationIssue] = []

    num = payload.get("num_questions")
    if isinstance(num, bool) or not isinstance(num, int):
        issues.append(
            ValidationIssue(INVALID_REQUEST, "num_questions must be an integer")
        )
    elif not MIN_QUESTIONS <= num <= MAX_QUESTIONS:
        issues.append(
            ValidationIssue(
                INVALID_REQUEST,
                f"num_questions must be between {MIN_QUESTIONS} and "
                f"{MAX_QUESTIONS}, got {num}",
            )
        )

    student_code = payload.get("student_code")
    if not isinstance(student_code, str) or not student_code.strip():
        issues.append(
            ValidationIssue(INVALID_REQUEST, "student_code must be non-empty")
        )

    language = payload.get("language")
    allowed = {lang.lower() for lang in allowed_languages}
    if not isinstance(language, str) or language.strip().lower() not in allowed:
        issues.append(
            ValidationIssue(
                INVALID_REQUEST,
                f"language {language!r} is not in the allow-list "
                f"({', '.join(sorted(allowed))})",
            )
        )

    topics = payload.get("topics", [])
    if not isinstance(topics, (list, tuple)):
        issues.append(
            ValidationIssue(INVALID_REQUEST, "topics must be a list of tags")
        )
    else:
        for position, tag in enumerate(topics):
            if not isinstance(tag, str) or not tag.strip():
                issues.append(
                    ValidationIssue(
                        "INVALID_REQUEST",
                        f"topic tag {position + 1} must be non-empty",
                    )
                )

    student_ref = payload.get("student_ref")
    if not isinstance(student_ref, str) or not student_ref.strip():
        issues.append(
            ValidationIssue(INVALID_REQUEST, "student_ref must be non-empty")
        )

    assignment = payload.get("assignment_text")
    if not isinstance(assignment, str):
        issues.append(
            ValidationIssue(INVALID_REQUEST, "assignment_text must be text")
        )

    provided = payload.get("provided_code")
    if provided is not None and not isinstance(provided, str):
        issues.append(
            ValidationIssue(
                INVALID_REQUEST, "provided_code must be text when present"
            )
        )

    return issues


def parse_generation_request(
    payload: Mapping[str, Any],
    *,
    allowed_languages: Iterable[str] = DEFAULT_ALLOWED_LANGUAGES,
) -> GenerationRequest:
    """Build a GenerationRequest from untrusted input.

    Raises InvalidRequestError carrying every violation found.
    """
    issues = generation_request_issues(payload, allowed_languages=allowed_languages)
    if issues:
        raise InvalidRequestError(issues)
    return GenerationRequest(
        num_questions=payload["num_questions"],
        assignment_text=payload["assignment_text"],
        topics=tuple(tag.strip() for tag in payload.get("topics", [])),
        language=payload["language"].strip().lower(),
        student_code=payload["student_code"],
        student_ref=payload["student_ref"].strip(),
        provided_code=payload.get("provided_code"),
    )
