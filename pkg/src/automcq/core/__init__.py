"""Domain types, validation, grading, rendering and skeleton heuristics."""

from .constants import (
    AI_DISCLAIMER,
    DEFAULT_ALLOWED_LANGUAGES,
    FLAG_ANSWER,
    FLAG_OPTION_TEXT,
)
from .errors import (
    AutoMcqError,
    FlagAlreadyResolvedError,
    GradingError,
    InvalidRequestError,
    QuizAssemblyError,
    QuizNotPublishedError,
    ValidationIssue,
)
from .grading import grade_sheet
from .models import (
    AnswerSheet,
    FlagRecord,
    FlagStatus,
    GenerationRequest,
    GradeReport,
    MCQuestion,
    Outcome,
    Quiz,
    QuizStatus,
    new_id,
    utc_now_iso,
)
from .rendering import render_for_student
from .skeleton import (
    SkeletonWarning,
    skeleton_targeting_warnings,
    student_authored_lines,
)
from .validation import (
    assemble_quiz,
    generation_request_issues,
    parse_generation_request,
    validate_question,
)

__all__ = [
    "AI_DISCLAIMER",
    "DEFAULT_ALLOWED_LANGUAGES",
    "FLAG_ANSWER",
    "FLAG_OPTION_TEXT",
    "AnswerSheet",
    "AutoMcqError",
    "FlagAlreadyResolvedError",
    "FlagRecord",
    "FlagStatus",
    "GenerationRequest",
    "GradeReport",
    "GradingError",
    "InvalidRequestError",
    "MCQuestion",
    "Outcome",
    "Quiz",
    "QuizAssemblyError",
    "QuizNotPublishedError",
    "QuizStatus",
    "SkeletonWarning",
    "ValidationIssue",
    "assemble_quiz",
    "generation_request_issues",
    "grade_sheet",
    "new_id",
    "parse_generation_request",
    "render_for_student",
    "skeleton_targeting_warnings",
    "student_authored_lines",
    "utc_now_iso",
    "validate_question",
]
