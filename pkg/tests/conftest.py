"""Shared fixtures: the Building/Flat worked example, service clients, and
a network guard for offline guarantees."""

from __future__ import annotations

import re
import socket
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from automcq.core.models import GenerationRequest, MCQuestion
from automcq.llm.config import BackendConfig
from automcq.service.app import create_app
from automcq.service.config import ServiceConfig

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

STUDENT_TOKEN = "tok-student"
LECTURER_TOKEN = "tok-lecturer"
TOKENS = {STUDENT_TOKEN: "student", LECTURER_TOKEN: "lecturer"}

STUDENT_AUTH = {"Authorization": f"Bearer {STUDENT_TOKEN}"}
LECTURER_AUTH = {"Authorization": f"Bearer {LECTURER_TOKEN}"}


_ACCEPTANCE_TEST_RE = re.compile(r"test_c(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    """One pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    match = _ACCEPTANCE_TEST_RE.search(report.nodeid)
    if not match:
        return
    outcome = "PASS" if report.passed else "FAIL"
    label = match.group(2).replace("_", " ")
    print(f"\n[acceptance] criterion {match.group(1)} ({label}): {outcome}")


@pytest.fixture(scope="session", autouse=True)
def no_ambient_api_key():
    """The whole suite must run without any API key configured."""
    import os

    os.environ.pop("AUTOMCQ_API_KEY", None)
    yield


@pytest.fixture(scope="session")
def building_code() -> str:
    return (FIXTURES / "Building.java").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def flat_code() -> str:
    return (FIXTURES / "Flat.java").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def assignment_text() -> str:
    return (FIXTURES / "assignment.txt").read_text(encoding="utf-8").strip()


@pytest.fixture
def fixture_request(building_code, flat_code, assignment_text) -> GenerationRequest:
    """The worked example: 2 questions on inheritance/overriding in java."""
    return GenerationRequest(
        num_questions=2,
        assignment_text=assignment_text,
        topics=("inheritance and overriding",),
        language="java",
        student_code=flat_code,
        student_ref="stu-001",
        provided_code=building_code,
    )


@pytest.fixture
def fixture_payload(fixture_request) -> dict:
    return fixture_request.to_dict()


def make_question(
    question_id: str = "q1",
    stem: str = "What does getTax() return?",
    options: tuple[str, ...] = ("A", "B", "C", "D"),
    correct_index: int = 2,
    explanation: str | None = "Because of the override.",
    topic: str | None = "inheritance",
) -> MCQuestion:
    return MCQuestion(
        question_id=question_id,
        stem=stem,
        options=options,
        correct_index=correct_index,
        explanation=explanation,
        topic=topic,
    )


@pytest.fixture
def no_network(monkeypatch):
    """Fail the test if anything tries to open a network connection."""

    def _refuse(*args, **kwargs):
        raise AssertionError("network access attempted during an offline test")

    monkeypatch.setattr(socket.socket, "connect", _refuse)
    monkeypatch.setattr(socket, "create_connection", _refuse)
    monkeypatch.setattr(socket, "getaddrinfo", _refuse)
    yield


@pytest.fixture
def make_client(tmp_path):
    """Factory for TestClients over fresh service instances.

    Keyword arguments are forwarded to BackendConfig (e.g. mock_fault) or
    ServiceConfig (allow_resubmission).
    """
    clients: list[TestClient] = []
    counter = {"n": 0}

    def _make(*, allow_resubmission: bool = False, **backend_kwargs) -> TestClient:
        counter["n"] += 1
        config = ServiceConfig(
            data_dir=tmp_path / f"svc{counter['n']}",
            backend=BackendConfig(kind="mock", **backend_kwargs),
            tokens=dict(TOKENS),
            allow_resubmission=allow_resubmission,
        )
        client = TestClient(create_app(config))
        client.__enter__()
        clients.append(client)
        return client

    yield _make
    for client in clients:
        client.__exit__(None, None, None)
