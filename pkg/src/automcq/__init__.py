"""AutoMCQ: personalised multiple-choice code comprehension quizzes.

Generates questions about a student's own submitted code through a
pluggable LLM backend, delivers them with an AI disclaimer and a
"doesn't seem right" flag choice, auto-marks answers, and runs a
lecturer-facing flag review loop that can void bad questions.
"""

from .core import (
    AI_DISCLAIMER,
    FLAG_ANSWER,
    FLAG_OPTION_TEXT,
    AnswerSheet,
    FlagRecord,
    FlagStatus,
    GenerationRequest,
    GradeReport,
    MCQuestion,
    Outcome,
    Quiz,
    QuizStatus,
    assemble_quiz,
    grade_sheet,
    parse_generation_request,
    render_for_student,
    skeleton_targeting_warnings,
    student_authored_lines,
    validate_question,
)
from .llm import BackendConfig, generate_questions, mock_generate, parse_questions
from .prompts import build_repair_prompt, build_system_prompt, build_user_prompt

__version__ = "0.1.0"

__all__ = [
    "AI_DISCLAIMER",
    "FLAG_ANSWER",
    "FLAG_OPTION_TEXT",
    "AnswerSheet",
    "BackendConfig",
    "FlagRecord",
    "FlagStatus",
    "GenerationRequest",
    "GradeReport",
    "MCQuestion",
    "Outcome",
    "Quiz",
    "QuizStatus",
    "assemble_quiz",
    "build_repair_prompt",
    "build_system_prompt",
    "build_user_prompt",
    "generate_questions",
    "grade_sheet",
    "mock_generate",
    "parse_generation_request",
    "parse_questions",
    "render_for_student",
    "skeleton_targeting_warnings",
    "student_authored_lines",
    "validate_question",
]
