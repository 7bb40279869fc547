"""Quiz service logic: creation, delivery, grading, flags and review.

Grade reports are never stored as truth; they are derived on every read
from (quiz, sheet, current voided set), so resolving a flag as invalid
voids the question in every report read afterwards with no recompute step.
All mutations to one quiz are serialized through a per-quiz lock;
different quizzes never block each other.
"""

from __future__ import annotations

import threading
from typing import Any, Iterable

from ..core.constants import FLAG_ANSWER
from ..core.errors import AutoMcqError, GradingError, InvalidRequestError
from ..core.grading import grade_sheet
from ..core.models import (
    AnswerSheet,
    FlagRecord,
    FlagStatus,
    Outcome,
    Quiz,
    new_id,
    utc_now_iso,
)
from ..core.rendering import render_for_student
from ..core.skeleton import skeleton_targeting_warnings
from ..core.validation import assemble_quiz, parse_generation_request
from ..llm.client import make_backend
from ..llm.config import BackendConfig, BackendError
from ..llm.pipeline import GenerationFailedError, LlmExchange, run_generation
from .store import DocumentStore

ROLE_STUDENT = "student"
ROLE_LECTURER = "lecturer"
ROLES = (ROLE_STUDENT, ROLE_LECTURER)

_QUIZZES = "quizzes"
_SHEETS = "sheets"
_FLAGS = "flags"
_EXCHANGES = "exchanges"
_VOIDS = "voids"


class ServiceError(AutoMcqError):
    """Domain failure mapped onto an HTTP status by the API layer."""

    def __init__(self, status: int, code: str, message: str, details: Any = None):
        super().__init__(message, code=code, details=details)
        self.status = status


def _not_found(what: str, key: str) -> ServiceError:
    return ServiceError(404, "NOT_FOUND", f"{what} {key} does not exist")


class QuizService:
    def __init__(
        self,
        store: DocumentStore,
        backend_config: BackendConfig,
        *,
        allow_resubmission: bool = False,
        allowed_languages: Iterable[str] | None = None,
    ):
        self.store = store
        self.backend = make_backend(backend_config)
        self.allow_resubmission = allow_resubmission
        self.allowed_languages = (
            tuple(allowed_languages) if allowed_languages else None
        )
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _quiz_lock(self, quiz_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(quiz_id, threading.Lock())

    # -- persistence helpers -------------------------------------------------

    def _record_exchange(self, exchange: LlmExchange | None, quiz_id: str | None) -> None:
        if exchange is None:
            return
        self.store.put(
            _EXCHANGES,
            new_id(),
            {"quiz_id": quiz_id, "created_at": utc_now_iso(), **exchange.to_dict()},
        )

    def _load_quiz(self, quiz_id: str) -> tuple[Quiz, list[dict[str, Any]]]:
        doc = self.store.get(_QUIZZES, quiz_id)
        if doc is None:
            raise _not_found("quiz", quiz_id)
        return Quiz.from_dict(doc["quiz"]), doc["warnings"]

    def _voided_ids(self, quiz_id: str) -> set[str]:
        doc = self.store.get(_VOIDS, quiz_id)
        return set(doc["question_ids"]) if doc else set()

    def _sheets_for_quiz(self, quiz_id: str) -> list[AnswerSheet]:
        return [
            AnswerSheet.from_dict(doc)
            for _, doc in self.store.items(_SHEETS)
            if doc["quiz_id"] == quiz_id
        ]

    # -- operations ----------------------------------------------------------

    def create_quiz(self, payload: dict[str, Any]) -> dict[str, Any]:
        """Generate, assemble, publish and persist a quiz; return the student view."""
        try:
            if self.allowed_languages is None:
                request = parse_generation_request(payload)
            else:
                request = parse_generation_request(
                    payload, allowed_languages=self.allowed_languages
                )
        except InvalidRequestError as err:
            raise ServiceError(400, err.code, str(err), details=err.details)

        try:
            questions, exchange = run_generation(self.backend, request)
        except GenerationFailedError as err:
            self._record_exchange(err.exchange, None)
            raise ServiceError(502, err.code, str(err), details=err.details)
        except BackendError as err:
            self._record_exchange(err.exchange, None)
            raise ServiceError(502, err.code, str(err), details=err.details)

        quiz = assemble_quiz(request, questions).publish()
        warnings = skeleton_targeting_warnings(
            quiz.questions, request.provided_code, request.student_code
        )
        with self._quiz_lock(quiz.quiz_id):
            self._record_exchange(exchange, quiz.quiz_id)
            self.store.put(
                _QUIZZES,
                quiz.quiz_id,
                {
                    "quiz": quiz.to_dict(),
                    "warnings": [w.to_dict() for w in warnings],
                },
            )
        return render_for_student(quiz)

    def get_quiz_view(self, quiz_id: str, role: str) -> dict[str, Any]:
        quiz, warnings = self._load_quiz(quiz_id)
        if role == ROLE_LECTURER:
            return {
                "quiz": quiz.to_dict(),
                "skeleton_warnings": warnings,
                "voided_question_ids": sorted(self._voided_ids(quiz_id)),
            }
        return render_for_student(quiz)

    def submit_answers(self, quiz_id: str, payload: dict[str, Any]) -> dict[str, Any]:
        """Grade a submission, open flag records for flagged questions."""
        quiz, _ = self._load_quiz(quiz_id)

        student_ref = payload.get("student_ref")
        if not isinstance(student_ref, str) or not student_ref.strip():
            raise ServiceError(400, "INVALID_SHEET", "student_ref must be non-empty")
        student_ref = student_ref.strip()
        answers = payload.get("answers")
        if not isinstance(answers, list) or not all(
            isinstance(a, int) and not isinstance(a, bool) and a >= FLAG_ANSWER
            for a in answers
        ):
            raise ServiceError(
                400,
                "INVALID_SHEET",
                f"answers must be a list of option indices with {FLAG_ANSWER} "
                "meaning the flag choice",
            )

        with self._quiz_lock(quiz_id):
            sheet_key = f"{quiz_id}:{student_ref}"
            existing = self.store.get(_SHEETS, sheet_key)
            if existing is not None and not self.allow_resubmission:
                prior = self._report_payload(
                    quiz, AnswerSheet.from_dict(existing), self._voided_ids(quiz_id)
                )
                raise ServiceError(
                    409,
                    "DUPLICATE_SUBMISSION",
                    f"student {student_ref} already submitted answers for "
                    f"this quiz",
                    details={"report": prior},
                )

            sheet = AnswerSheet(
                quiz_id=quiz_id,
                student_ref=student_ref,
                answers=tuple(answers),
            )
            voided = self._voided_ids(quiz_id)
            try:
                report = grade_sheet(quiz, sheet, voided)
            except GradingError as err:
                raise ServiceError(400, err.code, str(err))

            self.store.put(_SHEETS, sheet_key, sheet.to_dict())
            for question, answer in zip(quiz.questions, sheet.answers):
                if answer == FLAG_ANSWER:
                    self._open_flag(quiz_id, question.question_id, student_ref)

        return self._report_payload(quiz, sheet, voided, report)

    def _open_flag(self, quiz_id: str, question_id: str, student_ref: str) -> None:
        """Create a pending flag unless one is already open for this pair."""
        for _, doc in self.store.items(_FLAGS):
            if (
                doc["question_id"] == question_id
                and doc["student_ref"] == student_ref
                and doc["status"] == FlagStatus.PENDING.value
            ):
                return
        flag = FlagRecord(
            flag_id=new_id(),
            quiz_id=quiz_id,
            question_id=question_id,
            student_ref=student_ref,
        )
        self.store.put(_FLAGS, flag.flag_id, flag.to_dict())

    def _report_payload(
        self,
        quiz: Quiz,
        sheet: AnswerSheet,
        voided: set[str],
        report=None,
    ) -> dict[str, Any]:
        """Report plus feedback; answers are revealed only for questions the
        student actually answered and that still count."""
        if report is None:
            report = grade_sheet(quiz, sheet, voided)
        feedback = []
        for question, outcome in zip(quiz.questions, report.per_question):
            entry: dict[str, Any] = {
                "question_id": question.question_id,
                "outcome": outcome.value,
            }
            if outcome in (Outcome.CORRECT, Outcome.INCORRECT):
                entry["correct_index"] = question.correct_index
                if question.explanation:
                    entry["explanation"] = question.explanation
            feedback.append(entry)
        return {
            "quiz_id": quiz.quiz_id,
            "student_ref": sheet.student_ref,
            "submitted_at": sheet.submitted_at,
            "report": report.to_dict(),
            "feedback": feedback,
        }

    def get_student_report(self, quiz_id: str, student_ref: str) -> dict[str, Any]:
        """Re-derive one student's graded report with the current voided set."""
        quiz, _ = self._load_quiz(quiz_id)
        doc = self.store.get(_SHEETS, f"{quiz_id}:{student_ref}")
        if doc is None:
            raise _not_found("submission for student", student_ref)
        sheet = AnswerSheet.from_dict(doc)
        return self._report_payload(quiz, sheet, self._voided_ids(quiz_id))

    def list_flags(self, status: str | None = None) -> list[dict[str, Any]]:
        """Flags joined with their question (full form) and the submitted code."""
        if status is not None and status not in {s.value for s in FlagStatus}:
            raise ServiceError(400, "INVALID_STATUS", f"unknown flag status {status!r}")
        results = []
        for _, doc in self.store.items(_FLAGS):
            if status is not None and doc["status"] != status:
                continue
            quiz, _ = self._load_quiz(doc["quiz_id"])
            question = quiz.question_by_id(doc["question_id"])
            results.append(
                {
                    "flag": doc,
                    "question": question.to_dict() if question else None,
                    "student_code": quiz.request.student_code,
                }
            )
        return results

    def resolve_flag(self, flag_id: str, payload: dict[str, Any]) -> dict[str, Any]:
        """Close a pending flag; an invalid question is voided quiz-wide."""
        raw_status = payload.get("status")
        if raw_status not in (
            FlagStatus.RESOLVED_VALID.value,
            FlagStatus.RESOLVED_INVALID.value,
        ):
            raise ServiceError(
                400,
                "INVALID_STATUS",
                "resolution status must be resolved_valid or resolved_invalid",
            )
        note = payload.get("note")
        if note is not None and not isinstance(note, str):
            raise ServiceError(400, "INVALID_NOTE", "note must be text")

        doc = self.store.get(_FLAGS, flag_id)
        if doc is None:
            raise _not_found("flag", flag_id)
        flag = FlagRecord.from_dict(doc)

        with self._quiz_lock(flag.quiz_id):
            current = FlagRecord.from_dict(self.store.get(_FLAGS, flag_id))
            if current.status.is_terminal:
                raise ServiceError(
                    409,
                    "FLAG_ALREADY_RESOLVED",
                    f"flag {flag_id} is already {current.status.value}",
                )
            resolved = current.resolve(FlagStatus(raw_status), note)
            self.store.put(_FLAGS, flag_id, resolved.to_dict())
            if resolved.status is FlagStatus.RESOLVED_INVALID:
                voided = self._voided_ids(flag.quiz_id)
                voided.add(flag.question_id)
                self.store.put(
                    _VOIDS, flag.quiz_id, {"question_ids": sorted(voided)}
                )
        return resolved.to_dict()

    def quiz_report(self, quiz_id: str) -> dict[str, Any]:
        """Aggregate outcome counts per question plus per-student scores."""
        quiz, _ = self._load_quiz(quiz_id)
        voided = self._voided_ids(quiz_id)
        sheets = self._sheets_for_quiz(quiz_id)

        counts = {
            question.question_id: {outcome.value: 0 for outcome in Outcome}
            for question in quiz.questions
        }
        per_student: dict[str, Any] = {}
        for sheet in sheets:
            report = grade_sheet(quiz, sheet, voided)
            for question, outcome in zip(quiz.questions, report.per_question):
                counts[question.question_id][outcome.value] += 1
            per_student[sheet.student_ref] = report.to_dict()

        return {
            "quiz_id": quiz_id,
            "submissions": len(sheets),
            "voided_question_ids": sorted(voided),
            "per_question": [
                {"question_id": question_id, **outcome_counts}
                for question_id, outcome_counts in counts.items()
            ],
            "per_student": per_student,
        }

    def exchange_count(self) -> int:
        return self.store.count(_EXCHANGES)
