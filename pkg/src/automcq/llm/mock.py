"""Deterministic offline question generator.

Real generation is non-reproducible, so tests and offline use run against
this mock: a pure function of (student_code, topics, num_questions) that
emits the same JSON text the wire backend would return. Stems reference
identifiers found in the submitted code so the output reads plausibly.
"""

from __future__ import annotations

import hashlib
import json
import re

from ..core.models import GenerationRequest

_IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# Declaration sites, tried across the bundled languages: class-likes,
# python/js functions, and brace-language method headers.
_DECLARATION_RES = (
    re.compile(r"\b(?:class|interface|struct|enum)\s+([A-Za-z_]\w*)"),
    re.compile(r"\bdef\s+([A-Za-z_]\w*)\s*\("),
    re.compile(r"\bfunction\s+([A-Za-z_]\w*)\s*\("),
    re.compile(r"\b([A-Za-z_]\w*)\s*\([^()\n]*\)\s*\{"),
)

_KEYWORDS = frozenset(
    """
    if else elif for while do switch case break continue return new class
    try catch finally throw throws import package from with as in not and
    or is pass raise lambda def none self print range len str int float
    list dict set tuple bool void double long short byte boolean char
    public private protected static final abstract extends implements
    interface this super true false null function var let const typeof
    undefined console log export default struct typedef include printf
    scanf sizeof unsigned signed main system out println string override
    args enum record module
    """.split()
)


def _interesting_identifiers(code: str) -> list[str]:
    """Names worth asking about, declaration sites first, in source order."""
    declared: list[tuple[int, str]] = []
    for pattern in _DECLARATION_RES:
        for match in pattern.finditer(code):
            name = match.group(1)
            if name.lower() not in _KEYWORDS:
                declared.append((match.start(1), name))
    ordered: list[str] = []
    for _, name in sorted(declared):
        if name not in ordered:
            ordered.append(name)
    if ordered:
        return ordered
    for match in _IDENTIFIER_RE.finditer(code):
        name = match.group()
        if len(name) >= 3 and name.lower() not in _KEYWORDS and name not in ordered:
            ordered.append(name)
    return ordered


def _stable_seed(num_questions: int, topics_label: str, student_code: str) -> int:
    tag = f"{num_questions}\x1f{topics_label}\x1f{student_code}"
    return int(hashlib.sha256(tag.encode("utf-8")).hexdigest()[:16], 16)


def _question_record(
    index: int, seed: int, focus: str | None, topic: str | None
) -> dict:
    if focus is None:
        stem = f"Which statement about the submitted code is correct? (part {index + 1})"
        correct = "The code was written by the student for this assignment."
        distractors = [
            "The code is an unmodified copy of the provided skeleton.",
            "The code contains no executable statements at all.",
            "The code was produced by the marking harness, not the student.",
        ]
        explanation = (
            "The submission is the student's own work for this assignment, "
            "which is what the generated questions are based on."
        )
    else:
        stem = f'Which statement about "{focus}" in your submitted code is correct?'
        correct = f'"{focus}" is declared in the code you submitted.'
        distractors = [
            f'"{focus}" is never mentioned anywhere in your submission.',
            f'"{focus}" is a reserved keyword of the language rather than your own code.',
            f'"{focus}" exists only in the provided skeleton code, not in your work.',
        ]
        explanation = (
            f'Your submission declares "{focus}", so the statement that it '
            "is declared in the code you submitted is the correct one."
        )

    digest = hashlib.sha256(f"{seed}:{index}".encode("utf-8")).digest()
    correct_index = digest[0] % 4
    options = distractors[:correct_index] + [correct] + distractors[correct_index:]
    record = {
        "stem": stem,
        "options": options[:4],
        "correct_index": correct_index,
        "explanation": explanation,
        "topic": topic or "code comprehension",
    }
    return record


def render_mock_response(
    num_questions: int, topics_label: str, student_code: str
) -> str:
    """Shared template engine behind mock_generate and the mock backend."""
    seed = _stable_seed(num_questions, topics_label, student_code)
    identifiers = _interesting_identifiers(student_code)
    topics = [t.strip() for t in topics_label.split(",") if t.strip()]
    records = []
    for index in range(num_questions):
        focus = identifiers[index % len(identifiers)] if identifiers else None
        topic = topics[index % len(topics)] if topics else None
        records.append(_question_record(index, seed, focus, topic))
    return json.dumps(records, indent=2)


def mock_generate(request: GenerationRequest) -> str:
    """Deterministic completion text for a generation request."""
    return render_mock_response(
        request.num_questions, ", ".join(request.topics), request.student_code
    )
