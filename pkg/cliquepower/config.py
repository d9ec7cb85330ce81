"""
Toolkit configuration loaded from environment variables.
"""

import os
from dataclasses import dataclass

from .constants import (
    BRUTEFORCE_BUDGET,
    CACHE_SIZE,
    DEFAULT_LOG_LEVEL,
    DEFAULT_THREADS,
    MAX_TRIANGULATION_N,
    MAX_VERTICES,
    NODE_LIMIT,
)
from .error_handler import ConfigurationError


def _env_bool(key: str, default: bool = False) -> bool:
    """Read an env var as a boolean (true/1/yes → True)."""
    return os.environ.get(key, str(default)).lower() in ("true", "1", "yes")


def _env_int(key: str, default: int, minimum: int = 1) -> int:
    """Read an env var as a positive integer, rejecting garbage."""
    raw = os.environ.get(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError as e:
        raise ConfigurationError(f"{key} must be an integer, got {raw!r}", original_error=e)
    if value < minimum:
        raise ConfigurationError(f"{key} must be >= {minimum}, got {value}")
    return value


@dataclass
class ToolkitConfig:
    """Budgets, guards and runtime knobs shared by every module."""

    bruteforce_budget: int
    max_vertices: int
    max_triangulation_n: int
    node_limit: int
    threads: int
    cache_size: int
    log_level: str
    strict_certify: bool = True

    @classmethod
    def from_env(cls) -> "ToolkitConfig":
        """Build configuration from environment variables."""
        return cls(
            bruteforce_budget=_env_int("CLIQUEPOWER_BRUTEFORCE_BUDGET", BRUTEFORCE_BUDGET),
            max_vertices=_env_int("CLIQUEPOWER_MAX_VERTICES", MAX_VERTICES),
            max_triangulation_n=_env_int("CLIQUEPOWER_MAX_TRIANGULATION_N", MAX_TRIANGULATION_N),
            node_limit=_env_int("CLIQUEPOWER_NODE_LIMIT", NODE_LIMIT),
            threads=_env_int("CLIQUEPOWER_THREADS", DEFAULT_THREADS),
            cache_size=_env_int("CLIQUEPOWER_CACHE_SIZE", CACHE_SIZE),
            log_level=os.environ.get("CLIQUEPOWER_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
            strict_certify=_env_bool("CLIQUEPOWER_STRICT_CERTIFY", True),
        )


# Module-level singleton
toolkit_config = ToolkitConfig.from_env()
