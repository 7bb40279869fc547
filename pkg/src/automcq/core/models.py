"""Domain types for quizzes, answers, grades and flags.

All types are immutable value objects. Local invariants are enforced at
construction time, so an instance that exists is a valid one; cross-object
rules (a sheet matching its quiz, a flag matching its question) live in the
operations that combine them.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping

from .constants import (
    AI_DISCLAIMER,
    FLAG_ANSWER,
    FLAG_OPTION_TEXT,
    MAX_OPTIONS,
    MIN_OPTIONS,
)


def new_id() -> str:
    return uuid.uuid4().hex


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def normalized_option_text(text: str) -> str:
    """Collapse whitespace and fold case, for option-equality checks."""
    return " ".join(text.split()).casefold()


class QuizStatus(str, Enum):
    DRAFT = "draft"
    PUBLISHED = "published"


class Outcome(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    FLAGGED_PENDING = "flagged_pending"
    VOIDED = "voided"


class FlagStatus(str, Enum):
    PENDING = "pending"
    RESOLVED_VALID = "resolved_valid"
    RESOLVED_INVALID = "resolved_invalid"

    @property
    def is_terminal(self) -> bool:
        return self is not FlagStatus.PENDING


@dataclass(frozen=True)
class GenerationRequest:
    """Parameter bundle for generating one quiz from one submission."""

    num_questions: int
    assignment_text: str
    topics: tuple[str, ...]
    language: str
    student_code: str
    student_ref: str
    provided_code: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "num_questions": self.num_questions,
            "assignment_text": self.assignment_text,
            "topics": list(self.topics),
            "language": self.language,
            "student_code": self.student_code,
            "student_ref": self.student_ref,
            "provided_code": self.provided_code,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GenerationRequest":
        return cls(
            num_questions=data["num_questions"],
            assignment_text=data["assignment_text"],
            topics=tuple(data.get("topics") or ()),
            language=data["language"],
            student_code=data["student_code"],
            student_ref=data["student_ref"],
            provided_code=data.get("provided_code"),
        )


@dataclass(frozen=True)
class MCQuestion:
    """A validated multiple-choice question.

    Construction enforces the shape rules directly; use
    ``validation.validate_question`` to turn untrusted records into
    instances and collect every violation instead of failing fast.
    """

    question_id: str
    stem: str
    options: tuple[str, ...]
    correct_index: int
    explanation: str | None = None
    topic: str | None = None

    def __post_init__(self) -> None:
        if not self.stem.strip():
            raise ValueError("stem must be non-empty")
        if not MIN_OPTIONS <= len(self.options) <= MAX_OPTIONS:
            raise ValueError(
                f"option count {len(self.options)} outside {MIN_OPTIONS}..{MAX_OPTIONS}"
            )
        if not 0 <= self.correct_index < len(self.options):
            raise ValueError(
                f"correct_index {self.correct_index} out of range for "
                f"{len(self.options)} options"
            )
        normalized = [normalized_option_text(opt) for opt in self.options]
        if len(set(normalized)) != len(normalized):
            raise ValueError("options must be pairwise distinct")
        if normalized_option_text(FLAG_OPTION_TEXT) in normalized:
            raise ValueError("an option collides with the reserved flag option text")

    def to_dict(self) -> dict[str, Any]:
        return {
            "question_id": self.question_id,
            "stem": self.stem,
            "options": list(self.options),
            "correct_index": self.correct_index,
            "explanation": self.explanation,
            "topic": self.topic,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MCQuestion":
        return cls(
            question_id=data["question_id"],
            stem=data["stem"],
            options=tuple(data["options"]),
            correct_index=data["correct_index"],
            explanation=data.get("explanation"),
            topic=data.get("topic"),
        )


@dataclass(frozen=True)
class Quiz:
    """An ordered set of questions bound to one generation request."""

    quiz_id: str
    request: GenerationRequest
    questions: tuple[MCQuestion, ...]
    created_at: str = field(default_factory=utc_now_iso)
    disclaimer: str = AI_DISCLAIMER
    status: QuizStatus = QuizStatus.DRAFT

    def __post_init__(self) -> None:
        if len(self.questions) != self.request.num_questions:
            raise ValueError(
                f"quiz has {len(self.questions)} questions but the request "
                f"asked for {self.request.num_questions}"
            )
        ids = [q.question_id for q in self.questions]
        if len(set(ids)) != len(ids):
            raise ValueError("question ids must be unique within a quiz")
        if self.disclaimer != AI_DISCLAIMER:
            raise ValueError("disclaimer must match the configured constant exactly")

    @property
    def question_ids(self) -> tuple[str, ...]:
        return tuple(q.question_id for q in self.questions)

    def question_by_id(self, question_id: str) -> MCQuestion | None:
        for question in self.questions:
            if question.question_id == question_id:
                return question
        return None

    def publish(self) -> "Quiz":
        return replace(self, status=QuizStatus.PUBLISHED)

    def to_dict(self) -> dict[str, Any]:
        return {
            "quiz_id": self.quiz_id,
            "request": self.request.to_dict(),
            "questions": [q.to_dict() for q in self.questions],
            "disclaimer": self.disclaimer,
            "status": self.status.value,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Quiz":
        return cls(
            quiz_id=data["quiz_id"],
            request=GenerationRequest.from_dict(data["request"]),
            questions=tuple(MCQuestion.from_dict(q) for q in data["questions"]),
            created_at=data["created_at"],
            disclaimer=data["disclaimer"],
            status=QuizStatus(data["status"]),
        )


@dataclass(frozen=True)
class AnswerSheet:
    """A student's selections: one entry per question.

    Each entry is either a zero-based option index or ``FLAG_ANSWER`` (-1),
    meaning the student flagged the question instead of answering it.
    Whether indices fit the quiz's questions is checked by grading, which
    has the quiz in hand.
    """

    quiz_id: str
    student_ref: str
    answers: tuple[int, ...]
    submitted_at: str = field(default_factory=utc_now_iso)

    def __post_init__(self) -> None:
        if not self.student_ref.strip():
            raise ValueError("student_ref must be non-empty")
        for position, answer in enumerate(self.answers):
            if not isinstance(answer, int) or isinstance(answer, bool):
                raise ValueError(f"answer {position + 1} must be an integer")
            if answer < FLAG_ANSWER:
                raise ValueError(
                    f"answer {position + 1} must be an option index or "
                    f"{FLAG_ANSWER} (flag)"
                )

    def to_dict(self) -> dict[str, Any]:
        return {
            "quiz_id": self.quiz_id,
            "student_ref": self.student_ref,
            "answers": list(self.answers),
            "submitted_at": self.submitted_at,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AnswerSheet":
        return cls(
            quiz_id=data["quiz_id"],
            student_ref=data["student_ref"],
            answers=tuple(data["answers"]),
            submitted_at=data["submitted_at"],
        )


@dataclass(frozen=True)
class GradeReport:
    """Flag-aware scoring result for one answer sheet.

    Flagged and voided questions are excluded from both numerator and
    denominator, so the score is undefined (None) when every question was
    flagged or voided rather than punitive zero.
    """

    per_question: tuple[Outcome, ...]
    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        correct = sum(1 for o in self.per_question if o is Outcome.CORRECT)
        answered = sum(
            1
            for o in self.per_question
            if o in (Outcome.CORRECT, Outcome.INCORRECT)
        )
        if self.numerator != correct or self.denominator != answered:
            raise ValueError("numerator/denominator inconsistent with outcomes")

    @property
    def score(self) -> Fraction | None:
        """Exact score, or None when no question counted toward the mark."""
        if self.denominator == 0:
            return None
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> dict[str, Any]:
        score = self.score
        return {
            "per_question": [o.value for o in self.per_question],
            "numerator": self.numerator,
            "denominator": self.denominator,
            "score": None if score is None else float(score),
        }


@dataclass(frozen=True)
class FlagRecord:
    """One "doesn't seem right" report with a pending -> resolved lifecycle."""

    flag_id: str
    quiz_id: str
    question_id: str
    student_ref: str
    status: FlagStatus = FlagStatus.PENDING
    resolution_note: str | None = None
    created_at: str = field(default_factory=utc_now_iso)
    resolved_at: str | None = None

    def __post_init__(self) -> None:
        if self.status.is_terminal and self.resolved_at is None:
            raise ValueError("resolved flags must carry resolved_at")
        if not self.status.is_terminal and self.resolved_at is not None:
            raise ValueError("pending flags must not carry resolved_at")

    def resolve(self, status: FlagStatus, note: str | None = None) -> "FlagRecord":
        """Transition pending -> resolved_valid | resolved_invalid.

        Resolved states are terminal; resolving anything else raises.
        """
        from .errors import FlagAlreadyResolvedError

        if self.status.is_terminal:
            raise FlagAlreadyResolvedError(self.flag_id, self.status.value)
        if not status.is_terminal:
            raise ValueError("a flag can only be resolved to a terminal status")
        return replace(
            self,
            status=status,
            resolution_note=note,
            resolved_at=utc_now_iso(),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "flag_id": self.flag_id,
            "quiz_id": self.quiz_id,
            "question_id": self.question_id,
            "student_ref": self.student_ref,
            "status": self.status.value,
            "resolution_note": self.resolution_note,
            "created_at": self.created_at,
            "resolved_at": self.resolved_at,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FlagRecord":
        return cls(
            flag_id=data["flag_id"],
            quiz_id=data["quiz_id"],
            question_id=data["question_id"],
            student_ref=data["student_ref"],
            status=FlagStatus(data["status"]),
            resolution_note=data.get("resolution_note"),
            created_at=data["created_at"],
            resolved_at=data.get("resolved_at"),
        )
