"""Extraction of question records from raw completion text.

Models wrap JSON in prose, fences or outer objects often enough that the
parser scans for the first well-formed JSON array of objects anywhere in
the text instead of trusting the reply to be bare JSON. It is total: any
input, including random bytes, yields a result rather than an exception.
"""

from __future__ import annotations

import json
from typing import Any

from ..core.errors import COUNT_MISMATCH, PARSE_FAILURE, ValidationIssue

_MAX_SCAN_CHARS = 1_000_000  # guard against pathological inputs


def _first_object_array(raw: str) -> list[dict[str, Any]] | None:
    decoder = json.JSONDecoder()
    index = raw.find("[")
    while 0 <= index < _MAX_SCAN_CHARS:
        try:
            value, _ = decoder.raw_decode(raw, index)
        except (ValueError, RecursionError):
            value = None
        # Empty arrays are skipped: prose like "[]" should not shadow a
        # real question array later in the text.
        if (
            isinstance(value, list)
            and value
            and all(isinstance(element, dict) for element in value)
        ):
            return value
        index = raw.find("[", index + 1)
    return None


def parse_questions(
    raw: str | bytes, expected_count: int
) -> tuple[list[dict[str, Any]], list[ValidationIssue]]:
    """Pull raw question records out of completion text.

    Returns ``(records, issues)``. PARSE_FAILURE means no array of objects
    could be extracted at all; COUNT_MISMATCH is reported when the array
    length differs from expected_count, but the records are still returned
    so the caller can decide (truncate a surplus, repair a deficit).
    """
    if isinstance(raw, (bytes, bytearray)):
        raw = raw.decode("utf-8", errors="replace")
    elif not isinstance(raw, str):
        raw = str(raw)

    records = _first_object_array(raw)
    if records is None:
        return [], [
            ValidationIssue(
                PARSE_FAILURE,
                "no JSON array of question objects could be extracted from "
                "the response",
            )
        ]

    issues: list[ValidationIssue] = []
    if len(records) != expected_count:
        issues.append(
            ValidationIssue(
                COUNT_MISMATCH,
                f"expected {expected_count} questions but the response "
                f"contained {len(records)}",
            )
        )
    return records, issues
