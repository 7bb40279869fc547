"""HTTP service: API app, business logic, persistence, configuration."""

from .app import create_app
from .config import (
    DEV_TOKENS,
    ServiceConfig,
    backend_config_from_env,
    load_token_map,
    service_config_from_env,
)
from .state import ROLE_LECTURER, ROLE_STUDENT, QuizService, ServiceError
from .store import DocumentStore

__all__ = [
    "DEV_TOKENS",
    "DocumentStore",
    "QuizService",
    "ROLE_LECTURER",
    "ROLE_STUDENT",
    "ServiceConfig",
    "ServiceError",
    "backend_config_from_env",
    "create_app",
    "load_token_map",
    "service_config_from_env",
]
