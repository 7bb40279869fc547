"""Service configuration from environment variables and token files."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..llm.config import (
    DEFAULT_MODEL,
    KIND_MOCK,
    KIND_OPENAI_COMPATIBLE,
    BackendConfig,
)
from .state import ROLES

ENV_PORT = "AUTOMCQ_PORT"
ENV_DATA_DIR = "AUTOMCQ_DATA_DIR"
ENV_BACKEND = "AUTOMCQ_BACKEND"
ENV_BASE_URL = "AUTOMCQ_BASE_URL"
ENV_MODEL = "AUTOMCQ_MODEL"
ENV_TOKENS = "AUTOMCQ_TOKENS"

# Used when no token map is configured; fine for local experiments, not for
# anything shared. Documented in the README.
DEV_TOKENS = {"dev-student": "student", "dev-lecturer": "lecturer"}


@dataclass
class ServiceConfig:
    data_dir: Path
    backend: BackendConfig
    tokens: dict[str, str] = field(default_factory=lambda: dict(DEV_TOKENS))
    allow_resubmission: bool = False
    host: str = "127.0.0.1"
    port: int = 8080

    def __post_init__(self) -> None:
        for token, role in self.tokens.items():
            if role not in ROLES:
                raise ValueError(
                    f"token {token!r} maps to unknown role {role!r}; "
                    f"roles are {', '.join(ROLES)}"
                )


def load_token_map(path: str | Path) -> dict[str, str]:
    """Read a JSON object mapping bearer token -> role."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise ValueError(f"{path}: token map must be a JSON object of token -> role")
    return data


def backend_config_from_env(env: Mapping[str, str] = os.environ) -> BackendConfig:
    kind = env.get(ENV_BACKEND, "mock").strip().lower()
    if kind in ("openai", KIND_OPENAI_COMPATIBLE):
        return BackendConfig(
            kind=KIND_OPENAI_COMPATIBLE,
            base_url=env.get(ENV_BASE_URL, "https://api.openai.com/v1"),
            model_name=env.get(ENV_MODEL, DEFAULT_MODEL),
        )
    if kind == KIND_MOCK:
        return BackendConfig(kind=KIND_MOCK)
    raise ValueError(f"{ENV_BACKEND} must be 'mock' or 'openai', got {kind!r}")


def service_config_from_env(env: Mapping[str, str] = os.environ) -> ServiceConfig:
    tokens_path = env.get(ENV_TOKENS)
    tokens = load_token_map(tokens_path) if tokens_path else dict(DEV_TOKENS)
    return ServiceConfig(
        data_dir=Path(env.get(ENV_DATA_DIR, "./automcq-data")),
        backend=backend_config_from_env(env),
        tokens=tokens,
        port=int(env.get(ENV_PORT, "8080")),
    )
