"""Student-facing quiz views.

The student view is the only serialization that ever leaves the service for
a student role, so it is built from scratch here rather than by redacting
the full quiz: correct indices and explanations never enter the structure
in the first place.
"""

from __future__ import annotations

from typing import Any

from .constants import FLAG_OPTION_TEXT
from .errors import QuizNotPublishedError
from .models import Quiz, QuizStatus


def render_for_student(quiz: Quiz) -> dict[str, Any]:
    """Build the view a student answers from.

    The disclaimer sits above the questions and each question's choices are
    its options with the reserved flag choice appended last. Only published
    quizzes may be rendered.
    """
    if quiz.status is not QuizStatus.PUBLISHED:
        raise QuizNotPublishedError(quiz.quiz_id)
    return {
        "quiz_id": quiz.quiz_id,
        "disclaimer": quiz.disclaimer,
        "created_at": quiz.created_at,
        "questions": [
            {
                "question_id": question.question_id,
                "stem": question.stem,
                "choices": [*question.options, FLAG_OPTION_TEXT],
            }
            for question in quiz.questions
        ],
    }
