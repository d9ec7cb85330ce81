"""
Centralized error handling for the cliquepower toolkit.

This module provides:
- Custom exception classes
- Error handling decorators
- Exit-code mapping for the command line
- Aggregation of findings from multi-part checks
"""

import functools
from collections.abc import Callable
from enum import Enum
from typing import Any

from .constants import EXIT_DOMAIN_ERROR, EXIT_USAGE_ERROR
from .logging_config import logger


class ErrorCategory(Enum):
    """Categories of errors for consistent handling."""

    INPUT = "input"
    DOMAIN = "domain"
    RESOURCE = "resource"
    CONFIGURATION = "configuration"
    UNKNOWN = "unknown"


class CliquePowerError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(
        self, message: str, category: ErrorCategory = ErrorCategory.UNKNOWN, original_error: Exception | None = None
    ):
        self.message = message
        self.category = category
        self.original_error = original_error
        super().__init__(self.message)


class InputError(CliquePowerError):
    """Malformed arguments, out-of-range indices, unparseable files."""

    def __init__(self, message: str, original_error: Exception | None = None):
        super().__init__(message, ErrorCategory.INPUT, original_error)


class DomainError(CliquePowerError):
    """Well-formed input that the mathematics rejects (invalid embedding, infeasible program, failed certificate)."""

    def __init__(self, message: str, original_error: Exception | None = None):
        super().__init__(message, ErrorCategory.DOMAIN, original_error)


class ResourceError(CliquePowerError):
    """A configured budget or size guard was exceeded."""

    def __init__(self, message: str, limit: int | None = None, original_error: Exception | None = None):
        self.limit = limit
        super().__init__(message, ErrorCategory.RESOURCE, original_error)


class ConfigurationError(CliquePowerError):
    """Configuration and setup errors."""

    def __init__(self, message: str, original_error: Exception | None = None):
        super().__init__(message, ErrorCategory.CONFIGURATION, original_error)


class ErrorHandler:
    """Central error handling utilities."""

    @staticmethod
    def wrap(error: Exception, context: str) -> CliquePowerError:
        """Convert foreign exceptions to toolkit exceptions.

        Args:
            error: The original exception
            context: Where it happened (used in the message)

        Returns:
            CliquePowerError subclass
        """
        if isinstance(error, CliquePowerError):
            return error
        if isinstance(error, ValueError | KeyError | IndexError | TypeError):
            return InputError(f"{context}: {error}", original_error=error)
        if isinstance(error, OSError):
            return InputError(f"{context}: cannot read input ({error})", original_error=error)
        if isinstance(error, MemoryError | RecursionError):
            return ResourceError(f"{context}: resources exhausted ({type(error).__name__})", original_error=error)
        return CliquePowerError(f"Unexpected error in {context}: {error}", original_error=error)

    @staticmethod
    def log_error(error: Exception, context: str = "") -> None:
        """Log error with appropriate level and context.

        Args:
            error: The exception to log
            context: Additional context about where error occurred
        """
        prefix = f"[{context}] " if context else ""

        if isinstance(error, InputError | DomainError):
            logger.warning("%s%s", prefix, error.message)
        elif isinstance(error, ResourceError | ConfigurationError):
            logger.error("%s%s", prefix, error.message)
        elif isinstance(error, CliquePowerError):
            logger.error("%s%s", prefix, error.message)
        else:
            logger.exception("%s%s", prefix, str(error))

    @staticmethod
    def exit_code(error: Exception) -> int:
        """Map an error to the command-line exit code (2 usage/input, 1 otherwise)."""
        if isinstance(error, InputError):
            return EXIT_USAGE_ERROR
        return EXIT_DOMAIN_ERROR


def handle_errors(default_return: Any = None, log_context: str = ""):
    """Decorator that logs toolkit errors and returns a fallback value.

    Args:
        default_return: Value to return on error
        log_context: Context string for logging

    Example:
        @handle_errors(default_return=None, log_context="repro row")
        def compute_row(row):
            ...
    """

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                wrapped_error = ErrorHandler.wrap(e, func.__name__)
                ErrorHandler.log_error(wrapped_error, context=log_context or func.__name__)
                return default_return

        return wrapper

    return decorator


def safe_call(func: Callable, *args, **kwargs) -> tuple[Any | None, Exception | None]:
    """Execute a call safely and return result or error.

    Returns:
        Tuple of (result, error) - one will be None
    """
    try:
        return func(*args, **kwargs), None
    except Exception as e:
        return None, e


class ErrorAggregator:
    """Collect findings from a multi-part check."""

    def __init__(self):
        self.errors = []

    def add(self, error: Exception | str, context: str = ""):
        """Add a finding (an exception or a plain message)."""
        if isinstance(error, str):
            error = DomainError(error)
        self.errors.append({"error": error, "context": context, "message": str(error)})

    def has_errors(self) -> bool:
        """Check if any findings were collected."""
        return len(self.errors) > 0

    def messages(self) -> list[str]:
        """Findings as human-readable lines."""
        return [f"{e['context']}: {e['message']}" if e["context"] else e["message"] for e in self.errors]

    def get_summary(self) -> str:
        """Get a summary of all findings."""
        if not self.errors:
            return "No errors"
        lines = self.messages()
        if len(lines) == 1:
            return lines[0]
        return "\n".join([f"Multiple errors occurred ({len(lines)}):"] + [f"  - {line}" for line in lines])

    def log_all(self):
        """Log all collected findings."""
        for error_info in self.errors:
            ErrorHandler.log_error(error_info["error"], context=error_info["context"])
