"""Backend configuration and error types for question generation."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.errors import AutoMcqError

KIND_OPENAI_COMPATIBLE = "openai_compatible"
KIND_MOCK = "mock"

DEFAULT_MODEL = "gpt-4o-mini"
DEFAULT_API_KEY_ENV = "AUTOMCQ_API_KEY"

# Fault modes the mock backend understands, for exercising the repair path.
FAULT_TRUNCATE = "truncate"  # first completion malformed, later ones valid
FAULT_ALWAYS_TRUNCATE = "always_truncate"  # every completion malformed
_FAULT_MODES = (FAULT_TRUNCATE, FAULT_ALWAYS_TRUNCATE)


@dataclass(frozen=True)
class BackendConfig:
    kind: str = KIND_MOCK
    base_url: str | None = None
    model_name: str = DEFAULT_MODEL
    api_key_source: str = DEFAULT_API_KEY_ENV
    timeout_seconds: float = 30.0
    max_parallel: int = 4
    temperature: float | None = None
    mock_fault: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in (KIND_OPENAI_COMPATIBLE, KIND_MOCK):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == KIND_OPENAI_COMPATIBLE:
            if not self.base_url:
                raise ValueError("openai_compatible backend requires base_url")
            if not self.api_key_source:
                raise ValueError("openai_compatible backend requires api_key_source")
        if self.timeout_seconds <= 0:
            raise ValueError("timeout_seconds must be positive")
        if self.max_parallel < 1:
            raise ValueError("max_parallel must be at least 1")
        if self.mock_fault is not None and self.mock_fault not in _FAULT_MODES:
            raise ValueError(f"unknown mock fault mode {self.mock_fault!r}")


class BackendError(AutoMcqError):
    """Raised when a completion could not be obtained from the backend.

    When raised from inside the generation pipeline, ``exchange`` carries
    the audit record of the failed round-trip so callers can persist it.
    """

    def __init__(self, message: str, *, code: str, details=None):
        super().__init__(message, code=code, details=details)
        self.exchange = None


class AuthMissingError(BackendError):
    def __init__(self, env_var: str):
        super().__init__(
            f"API key environment variable {env_var} is not set",
            code="AUTH_MISSING",
        )
        self.env_var = env_var


class BackendTimeoutError(BackendError):
    def __init__(self, timeout_seconds: float):
        super().__init__(
            f"backend did not respond within {timeout_seconds:g}s",
            code="TIMEOUT",
        )


class BackendHttpError(BackendError):
    def __init__(self, status: int, message: str):
        super().__init__(message, code="HTTP_ERROR", details={"status": status})
        self.status = status


class RateLimitedError(BackendError):
    def __init__(self):
        super().__init__(
            "backend rate-limited the request (after one retry)",
            code="RATE_LIMITED",
        )
