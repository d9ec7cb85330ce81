import logging
import time
from typing import TextIO

# Modules import this `logger` rather than calling getLogger(__name__), so
# solver progress from every module shares one name and one level.
logger = logging.getLogger("cliquepower")

DEFAULT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_HANDLER_NAME = "cliquepower-stderr"


class _UTCFormatter(logging.Formatter):
    """ISO-8601 UTC timestamps with milliseconds, e.g. 2024-05-01T12:00:00.250Z."""

    converter = time.gmtime

    def formatTime(self, record, datefmt=None):
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S", self.converter(record.created))
        return f"{stamp}.{int(record.msecs):03d}Z"


def _resolve_level(level: int | str) -> int:
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(level.upper())
    return resolved if isinstance(resolved, int) else logging.INFO


def configure(level: int | str = logging.INFO, fmt: str | None = None, stream: TextIO | None = None) -> None:
    """Configure root logging for the toolkit.

    Safe to call once per command: the handler installed by a previous call
    is replaced, not stacked, and handlers owned by someone else (a test
    runner, an embedding application) are only given our formatter.
    """
    level = _resolve_level(level)
    formatter = _UTCFormatter(fmt=fmt or DEFAULT_FORMAT)

    root = logging.getLogger()
    root.setLevel(level)
    for handler in [h for h in root.handlers if h.get_name() == _HANDLER_NAME]:
        root.removeHandler(handler)
    if stream is not None or not root.handlers:
        handler = logging.StreamHandler(stream)
        handler.set_name(_HANDLER_NAME)
        root.addHandler(handler)
    for handler in root.handlers:
        handler.setFormatter(formatter)

    logger.setLevel(level)
