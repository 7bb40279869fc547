"""Backend abstraction: wire client, offline mock, parsing and repair."""

from .client import (
    MockBackend,
    OpenAiCompatibleBackend,
    complete,
    make_backend,
)
from .config import (
    DEFAULT_API_KEY_ENV,
    DEFAULT_MODEL,
    FAULT_ALWAYS_TRUNCATE,
    FAULT_TRUNCATE,
    KIND_MOCK,
    KIND_OPENAI_COMPATIBLE,
    AuthMissingError,
    BackendConfig,
    BackendError,
    BackendHttpError,
    BackendTimeoutError,
    RateLimitedError,
)
from .mock import mock_generate
from .parsing import parse_questions
from .pipeline import (
    GenerationFailedError,
    LlmExchange,
    ParseOutcome,
    generate_questions,
    run_generation,
)

__all__ = [
    "DEFAULT_API_KEY_ENV",
    "DEFAULT_MODEL",
    "FAULT_ALWAYS_TRUNCATE",
    "FAULT_TRUNCATE",
    "KIND_MOCK",
    "KIND_OPENAI_COMPATIBLE",
    "AuthMissingError",
    "BackendConfig",
    "BackendError",
    "BackendHttpError",
    "BackendTimeoutError",
    "GenerationFailedError",
    "LlmExchange",
    "MockBackend",
    "OpenAiCompatibleBackend",
    "ParseOutcome",
    "RateLimitedError",
    "complete",
    "generate_questions",
    "make_backend",
    "mock_generate",
    "parse_questions",
    "run_generation",
]
