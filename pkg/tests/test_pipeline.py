"""The generate-parse-validate-repair pipeline and its audit records."""

import json

import pytest

from automcq.llm.client import MockBackend
from automcq.llm.config import BackendConfig, BackendHttpError
from automcq.llm.pipeline import (
    GenerationFailedError,
    LlmExchange,
    ParseOutcome,
    generate_questions,
    run_generation,
)
from automcq.prompts import OUTPUT_FORMAT_BLOCK


class ScriptedBackend:
    """Returns canned responses in order; records the prompts it saw."""

    def __init__(self, *responses):
        self.responses = list(responses)
        self.calls = []

    def complete(self, messages):
        self.calls.append(list(messages))
        response = self.responses.pop(0)
        if isinstance(response, Exception):
            raise response
        return response


def valid_payload(n):
    return json.dumps(
        [
            {
                "stem": f"Question {i}?",
                "options": [f"o{i}a", f"o{i}b", f"o{i}c", f"o{i}d"],
                "correct_index": i % 4,
                "explanation": "because",
                "topic": "t",
            }
            for i in range(n)
        ]
    )


class TestHappyPath:
    def test_mock_backend_first_try(self, fixture_request):
        questions, exchange = generate_questions(
            BackendConfig(kind="mock"), fixture_request
        )
        assert len(questions) == 2
        assert exchange.parse_outcome is ParseOutcome.OK
        assert exchange.attempts == 1
        assert exchange.raw_response
        assert [m.role for m in exchange.messages] == ["system", "user"]

    def test_surplus_questions_truncated(self, fixture_request):
        backend = ScriptedBackend(valid_payload(5))
        questions, exchange = run_generation(backend, fixture_request)
        assert len(questions) == 2
        assert [q.stem for q in questions] == ["Question 0?", "Question 1?"]
        assert exchange.parse_outcome is ParseOutcome.OK


class TestRepair:
    def test_truncate_fault_repaired_on_second_attempt(self, fixture_request):
        questions, exchange = generate_questions(
            BackendConfig(kind="mock", mock_fault="truncate"), fixture_request
        )
        assert len(questions) == 2
        assert exchange.parse_outcome is ParseOutcome.REPAIRED
        assert exchange.attempts == 2
        assert [m.role for m in exchange.messages] == ["system", "user", "user"]
        assert OUTPUT_FORMAT_BLOCK in exchange.messages[-1].content

    def test_validation_failure_triggers_repair(self, fixture_request):
        bad = json.dumps(
            [
                {"stem": "Q?", "options": ["a", "b", "c", "d"], "correct_index": 9},
                json.loads(valid_payload(1))[0],
            ]
        )
        backend = ScriptedBackend(bad, valid_payload(2))
        questions, exchange = run_generation(backend, fixture_request)
        assert len(questions) == 2
        assert exchange.parse_outcome is ParseOutcome.REPAIRED
        repair_prompt = backend.calls[1][-1].content
        assert "CORRECT_INDEX_OUT_OF_RANGE" in repair_prompt
        assert "question 1" in repair_prompt

    def test_deficit_triggers_repair(self, fixture_request):
        backend = ScriptedBackend(valid_payload(1), valid_payload(2))
        questions, exchange = run_generation(backend, fixture_request)
        assert len(questions) == 2
        assert exchange.parse_outcome is ParseOutcome.REPAIRED
        assert "COUNT_MISMATCH" in backend.calls[1][-1].content

    def test_exactly_one_repair_round(self, fixture_request):
        backend = ScriptedBackend("garbage", "more garbage", valid_payload(2))
        with pytest.raises(GenerationFailedError):
            run_generation(backend, fixture_request)
        assert len(backend.calls) == 2  # never a third attempt


class TestFailure:
    def test_always_truncate_fails_with_exchange(self, fixture_request):
        with pytest.raises(GenerationFailedError) as err:
            generate_questions(
                BackendConfig(kind="mock", mock_fault="always_truncate"),
                fixture_request,
            )
        exchange = err.value.exchange
        assert exchange.parse_outcome is ParseOutcome.FAILED
        assert exchange.attempts == 2
        assert err.value.code == "GENERATION_FAILED"
        assert err.value.issues

    def test_backend_error_passes_through_with_exchange(self, fixture_request):
        failure = BackendHttpError(503, "unavailable")
        backend = ScriptedBackend(failure)
        with pytest.raises(BackendHttpError) as err:
            run_generation(backend, fixture_request)
        assert err.value.exchange is not None
        assert err.value.exchange.attempts == 1
        assert err.value.exchange.parse_outcome is ParseOutcome.FAILED

    def test_backend_error_during_repair_keeps_first_raw(self, fixture_request):
        failure = BackendHttpError(503, "unavailable")
        backend = ScriptedBackend("not json", failure)
        with pytest.raises(BackendHttpError) as err:
            run_generation(backend, fixture_request)
        exchange = err.value.exchange
        assert exchange.attempts == 2
        assert exchange.raw_response == "not json"


class TestExchangeInvariants:
    def test_attempt_bounds(self, fixture_request):
        questions, exchange = generate_questions(
            BackendConfig(kind="mock"), fixture_request
        )
        assert exchange.attempts in (1, 2)

    def test_ok_requires_single_attempt(self):
        from automcq.prompts import build_system_prompt

        with pytest.raises(ValueError):
            LlmExchange(
                messages=(build_system_prompt(),),
                raw_response="x",
                parse_outcome=ParseOutcome.OK,
                attempts=2,
                latency_seconds=0.0,
            )
        with pytest.raises(ValueError):
            LlmExchange(
                messages=(build_system_prompt(),),
                raw_response="x",
                parse_outcome=ParseOutcome.REPAIRED,
                attempts=1,
                latency_seconds=0.0,
            )
        with pytest.raises(ValueError):
            LlmExchange(
                messages=(build_system_prompt(),),
                raw_response="x",
                parse_outcome=ParseOutcome.OK,
                attempts=3,
                latency_seconds=0.0,
            )

    def test_exchange_serializes(self, fixture_request):
        _, exchange = generate_questions(BackendConfig(kind="mock"), fixture_request)
        doc = exchange.to_dict()
        assert doc["parse_outcome"] == "ok"
        assert doc["attempts"] == 1
        assert doc["messages"][0]["role"] == "system"
        assert isinstance(doc["latency_seconds"], float)


def test_raw_response_is_final_attempts_text(fixture_request):
    backend = MockBackend(BackendConfig(kind="mock", mock_fault="truncate"))
    questions, exchange = run_generation(backend, fixture_request)
    records = json.loads(exchange.raw_response)  # final (valid) attempt
    assert len(records) == 2
