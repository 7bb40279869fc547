"""Flag-aware automatic marking."""

from __future__ import annotations

from typing import AbstractSet

from .constants import FLAG_ANSWER
from .errors import (
    ANSWER_COUNT_MISMATCH,
    ANSWER_INDEX_OUT_OF_RANGE,
    SHEET_QUIZ_MISMATCH,
    GradingError,
)
from .models import AnswerSheet, GradeReport, Outcome, Quiz

_EMPTY: frozenset[str] = frozenset()


def grade_sheet(
    quiz: Quiz,
    sheet: AnswerSheet,
    voided: AbstractSet[str] = _EMPTY,
) -> GradeReport:
    """Mark one answer sheet against its quiz.

    Per question: voided questions score ``voided`` regardless of the
    answer; a flag answer on a live question scores ``flagged_pending``;
    otherwise the selected index is compared with the correct one. Flagged
    and voided questions are excluded from the denominator, so flagging in
    good faith never costs marks.

    Pure and deterministic: identical inputs always produce an identical
    report. Reports are therefore derived on demand rather than stored as
    truth.
    """
    if sheet.quiz_id != quiz.quiz_id:
        raise GradingError(
            f"sheet is for quiz {sheet.quiz_id}, not {quiz.quiz_id}",
            code=SHEET_QUIZ_MISMATCH,
        )
    if len(sheet.answers) != len(quiz.questions):
        raise GradingError(
            f"sheet has {len(sheet.answers)} answers for "
            f"{len(quiz.questions)} questions",
            code=ANSWER_COUNT_MISMATCH,
        )

    outcomes: list[Outcome] = []
    for position, (question, answer) in enumerate(zip(quiz.questions, sheet.answers)):
        if answer != FLAG_ANSWER and not 0 <= answer < len(question.options):
            raise GradingError(
                f"answer {position + 1} selects option {answer} but the "
                f"question has {len(question.options)} options",
                code=ANSWER_INDEX_OUT_OF_RANGE,
            )
        if question.question_id in voided:
            outcomes.append(Outcome.VOIDED)
        elif answer == FLAG_ANSWER:
            outcomes.append(Outcome.FLAGGED_PENDING)
        elif answer == question.correct_index:
            outcomes.append(Outcome.CORRECT)
        else:
            outcomes.append(Outcome.INCORRECT)

    numerator = sum(1 for o in outcomes if o is Outcome.CORRECT)
    denominator = numerator + sum(1 for o in outcomes if o is Outcome.INCORRECT)
    return GradeReport(
        per_question=tuple(outcomes),
        numerator=numerator,
        denominator=denominator,
    )
