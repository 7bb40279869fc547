"""Prompt assembly for question generation.

Every builder here is a deterministic pure function, and the exact text
each produces is frozen by golden-file tests: the generation pipeline, the
mock backend and the repair loop all rely on the layout staying put.

The user-message layout is this project's own reconstruction; only the
system prompt text is an externally fixed constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core.errors import ValidationIssue
from .core.models import GenerationRequest

SYSTEM_ROLE = "system"
USER_ROLE = "user"

SYSTEM_PROMPT_TEXT = (
    "You are an educational assistant specializing in computer science. "
    "Your task is to analyse students' code for the beginner programmer "
    "class and generate thoughtful multiple-choice questions that can help "
    "them understand and improve their coding skills. You should try and "
    "make good distractor options to really test students understanding."
)

# Machine-readable response contract appended to every user prompt and
# restated verbatim by repair prompts. Automatic marking depends on it.
OUTPUT_FORMAT_BLOCK = """Respond with only a JSON array and no surrounding prose. The array must contain exactly the requested number of question objects, each with exactly these fields:
- "stem": string, the question text
- "options": array of exactly 4 strings (one correct answer and three plausible distractors)
- "correct_index": integer between 0 and 3, the index of the correct option
- "explanation": string, shown to the student after they answer
- "topic": string, the topic the question relates to"""

PROVIDED_CODE_ABSENT_LINE = "PROVIDED CODE: none"


@dataclass(frozen=True)
class PromptMessage:
    """One chat message; role is either system or user."""

    role: str
    content: str

    def __post_init__(self) -> None:
        if self.role not in (SYSTEM_ROLE, USER_ROLE):
            raise ValueError(f"unsupported prompt role {self.role!r}")
        if not self.content:
            raise ValueError("prompt content must be non-empty")

    def to_dict(self) -> dict[str, str]:
        return {"role": self.role, "content": self.content}


def build_system_prompt() -> PromptMessage:
    return PromptMessage(role=SYSTEM_ROLE, content=SYSTEM_PROMPT_TEXT)


def _fence(code: str, language: str) -> str:
    return f"```{language}\n{code}\n```"


def build_user_prompt(request: GenerationRequest) -> PromptMessage:
    """Lay out the request as labelled sections in fixed order.

    Section order is NUMBER OF QUESTIONS, ASSIGNMENT, TOPICS, LANGUAGE,
    PROVIDED CODE, STUDENT CODE, followed by the output-format block. Code
    is embedded verbatim inside language-tagged fences; an absent provided
    code becomes the literal line "PROVIDED CODE: none".
    """
    topics_label = ", ".join(request.topics) if request.topics else "none"
    if request.provided_code is None:
        provided_section = PROVIDED_CODE_ABSENT_LINE
    else:
        provided_section = "PROVIDED CODE:\n" + _fence(
            request.provided_code, request.language
        )

    content = "\n\n".join(
        [
            f"NUMBER OF QUESTIONS: {request.num_questions}",
            f"ASSIGNMENT:\n{request.assignment_text}",
            f"TOPICS: {topics_label}",
            f"LANGUAGE: {request.language}",
            provided_section,
            "STUDENT CODE:\n" + _fence(request.student_code, request.language),
            OUTPUT_FORMAT_BLOCK,
        ]
    )
    return PromptMessage(role=USER_ROLE, content=content)


def build_repair_prompt(
    raw_response: str, errors: Sequence[ValidationIssue]
) -> PromptMessage:
    """Ask for a corrected reply, quoting the broken one and every problem."""
    if not errors:
        raise ValueError("build_repair_prompt requires at least one error")
    problem_lines = "\n".join(f"- {e.code}: {e.message}" for e in errors)
    content = (
        "Your previous reply could not be used. It is quoted below between "
        "the markers.\n\n"
        "--- PREVIOUS REPLY START ---\n"
        f"{raw_response}\n"
        "--- PREVIOUS REPLY END ---\n\n"
        "The following problems were found:\n"
        f"{problem_lines}\n\n"
        "Send a corrected reply now.\n\n"
        f"{OUTPUT_FORMAT_BLOCK}"
    )
    return PromptMessage(role=USER_ROLE, content=content)
