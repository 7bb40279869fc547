"""Completion backends: OpenAI-compatible HTTP and the offline mock.

A backend instance is safe for concurrent use; an internal admission gate
caps in-flight completions at the configured max_parallel. The service
holds one shared instance per process so the gate actually limits load.
"""

from __future__ import annotations

import os
import re
import threading
import time
from typing import Sequence

import httpx

from ..prompts import SYSTEM_ROLE, PromptMessage
from .config import (
    FAULT_ALWAYS_TRUNCATE,
    FAULT_TRUNCATE,
    KIND_MOCK,
    AuthMissingError,
    BackendConfig,
    BackendHttpError,
    BackendTimeoutError,
    RateLimitedError,
)
from .mock import render_mock_response

RATE_LIMIT_BACKOFF_SECONDS = 2.0

_NUM_RE = re.compile(r"NUMBER OF QUESTIONS:\s*(\d+)")
_TOPICS_RE = re.compile(r"^TOPICS: (.*)$", re.MULTILINE)
_STUDENT_CODE_RE = re.compile(r"STUDENT CODE:\n```[^\n]*\n(.*?)\n```", re.DOTALL)


def _check_messages(messages: Sequence[PromptMessage]) -> None:
    if not messages:
        raise ValueError("messages must be non-empty")
    if messages[0].role != SYSTEM_ROLE:
        raise ValueError("the first message must have the system role")


class MockBackend:
    """Deterministic backend that reads the request back out of the prompt.

    The prompt layout is frozen by golden tests, so the parameters the mock
    needs (count, topics, student code) can be recovered from the first
    user message; arbitrary messages fall back to a single generic
    question. Fault modes corrupt the output to drive repair-path tests:
    "truncate" only corrupts this instance's first completion,
    "always_truncate" corrupts every one.
    """

    def __init__(self, config: BackendConfig):
        self.config = config
        self._gate = threading.BoundedSemaphore(config.max_parallel)
        self._lock = threading.Lock()
        self._completions = 0

    def complete(self, messages: Sequence[PromptMessage]) -> str:
        _check_messages(messages)
        with self._gate:
            text = render_mock_response(*self._extract_params(messages))
            with self._lock:
                call_index = self._completions
                self._completions += 1
            fault = self.config.mock_fault
            if fault == FAULT_ALWAYS_TRUNCATE or (
                fault == FAULT_TRUNCATE and call_index == 0
            ):
                text = text[: max(1, len(text) // 2)]
            return text

    @staticmethod
    def _extract_params(messages: Sequence[PromptMessage]) -> tuple[int, str, str]:
        for message in messages:
            if message.role != SYSTEM_ROLE and _NUM_RE.search(message.content):
                content = message.content
                break
        else:
            return 1, "", messages[-1].content

        num = int(_NUM_RE.search(content).group(1))
        num = min(max(num, 1), 10)
        topics_match = _TOPICS_RE.search(content)
        topics = topics_match.group(1) if topics_match else ""
        if topics == "none":
            topics = ""
        code_match = _STUDENT_CODE_RE.search(content)
        student_code = code_match.group(1) if code_match else content
        return num, topics, student_code


class OpenAiCompatibleBackend:
    """Chat-completions client for any OpenAI-compatible endpoint.

    Sends POST {base_url}/chat/completions with bearer auth read from the
    configured environment variable at call time (never from disk). A 429
    gets one retry after a fixed backoff, then surfaces as RATE_LIMITED.
    """

    def __init__(self, config: BackendConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        self._gate = threading.BoundedSemaphore(config.max_parallel)
        self._url = config.base_url.rstrip("/") + "/chat/completions"
        self._client = httpx.Client(
            timeout=config.timeout_seconds, transport=transport
        )

    def complete(self, messages: Sequence[PromptMessage]) -> str:
        _check_messages(messages)
        api_key = os.environ.get(self.config.api_key_source)
        if not api_key:
            raise AuthMissingError(self.config.api_key_source)

        body = {
            "model": self.config.model_name,
            "messages": [m.to_dict() for m in messages],
        }
        if self.config.temperature is not None:
            body["temperature"] = self.config.temperature
        headers = {"Authorization": f"Bearer {api_key}"}

        with self._gate:
            response = self._post(body, headers)
            if response.status_code == 429:
                time.sleep(RATE_LIMIT_BACKOFF_SECONDS)
                response = self._post(body, headers)
                if response.status_code == 429:
                    raise RateLimitedError()
            if response.status_code >= 400:
                raise BackendHttpError(
                    response.status_code,
                    f"backend returned HTTP {response.status_code}: "
                    f"{response.text[:200]}",
                )
            try:
                content = response.json()["choices"][0]["message"]["content"]
            except (ValueError, LookupError, TypeError):
                raise BackendHttpError(
                    response.status_code,
                    "backend returned a response without "
                    "choices[0].message.content",
                )
            if not isinstance(content, str):
                raise BackendHttpError(
                    response.status_code, "completion content is not text"
                )
            return content

    def _post(self, body: dict, headers: dict) -> httpx.Response:
        try:
            return self._client.post(self._url, json=body, headers=headers)
        except httpx.TimeoutException:
            raise BackendTimeoutError(self.config.timeout_seconds)
        except httpx.HTTPError as exc:
            raise BackendHttpError(0, f"request to backend failed: {exc}")


Backend = MockBackend | OpenAiCompatibleBackend


def make_backend(
    config: BackendConfig, transport: httpx.BaseTransport | None = None
) -> Backend:
    if config.kind == KIND_MOCK:
        return MockBackend(config)
    return OpenAiCompatibleBackend(config, transport=transport)


def complete(config: BackendConfig, messages: Sequence[PromptMessage]) -> str:
    """One-shot completion against a fresh backend instance."""
    return make_backend(config).complete(messages)
