"""Skeleton-code heuristics.

Questions should probe the code the student wrote, not the starter code
they were handed. These checks are deliberately cheap line-set operations:
good enough for advisory warnings, never blocking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .models import MCQuestion

# Provided-code lines with fewer significant characters than this are too
# generic (braces, short declarations) to count as quoting the skeleton.
MIN_QUOTED_LINE_CHARS = 20


def _squash(text: str) -> str:
    return " ".join(text.split())


def student_authored_lines(provided_code: str | None, student_code: str) -> set[int]:
    """Indices of student_code lines not present in the provided code.

    Comparison is on trimmed lines; blank lines are never authored. With no
    provided code, every non-blank line counts as the student's own.
    """
    lines = student_code.splitlines()
    if provided_code is None:
        return {i for i, line in enumerate(lines) if line.strip()}
    provided = {line.strip() for line in provided_code.splitlines() if line.strip()}
    return {
        i
        for i, line in enumerate(lines)
        if line.strip() and line.strip() not in provided
    }


@dataclass(frozen=True)
class SkeletonWarning:
    question_id: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"question_id": self.question_id, "message": self.message}


def skeleton_targeting_warnings(
    questions: Iterable[MCQuestion],
    provided_code: str | None,
    student_code: str,
) -> list[SkeletonWarning]:
    """Warn for questions that quote skeleton-only code.

    A question is warned about when its stem or an option contains a
    whitespace-normalized provided-code line of at least
    MIN_QUOTED_LINE_CHARS significant characters that the student never
    wrote (normalized) themselves. Advisory only.
    """
    if not provided_code:
        return []

    student_lines = student_code.splitlines()
    authored = {
        _squash(student_lines[i])
        for i in student_authored_lines(provided_code, student_code)
    }

    skeleton_only = []
    seen: set[str] = set()
    for line in provided_code.splitlines():
        squashed = _squash(line)
        if len(squashed.replace(" ", "")) < MIN_QUOTED_LINE_CHARS:
            continue
        if squashed in authored or squashed in seen:
            continue
        seen.add(squashed)
        skeleton_only.append((squashed, line.strip()))

    warnings: list[SkeletonWarning] = []
    for question in questions:
        texts = [question.stem, *question.options]
        squashed_texts = [_squash(text) for text in texts]
        for squashed, original in skeleton_only:
            if any(squashed in text for text in squashed_texts):
                warnings.append(
                    SkeletonWarning(
                        question_id=question.question_id,
                        message=(
                            "question quotes provided skeleton code: "
                            f"{original!r}"
                        ),
                    )
                )
    return warnings
