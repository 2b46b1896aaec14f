"""
Logging configuration for stratzero.

Provides structured logging with:
- JSON formatter for scripted runs (machine-parseable)
- Clean exception formatting for interactive use
- Command / game context via contextvars

Handlers write to stderr so that machine reports on stdout stay clean.
"""

import json
import logging
import sys
import traceback
from contextvars import ContextVar
from datetime import UTC, datetime
from typing import Any

from stratzero.config import get_settings

# Command context - set by the CLI per invocation
command_var: ContextVar[str] = ContextVar("command", default="")
game_var: ContextVar[str] = ContextVar("game", default="")

_STANDARD_ATTRS = frozenset(
    {
        "name",
        "msg",
        "args",
        "created",
        "filename",
        "funcName",
        "levelname",
        "levelno",
        "lineno",
        "module",
        "msecs",
        "pathname",
        "process",
        "processName",
        "relativeCreated",
        "stack_info",
        "exc_info",
        "exc_text",
        "thread",
        "threadName",
        "taskName",
        "message",
    }
)


class JSONFormatter(logging.Formatter):
    """
    JSON formatter for structured logging.

    Output format:
    {
        "timestamp": "2026-01-22T10:30:00.000+00:00",
        "level": "INFO",
        "logger": "stratzero.ser0",
        "message": "classified game",
        "command": "classify",
        "game": "rps.game",
        "extra": {...}
    }
    """

    def format(self, record: logging.LogRecord) -> str:
        log_record: dict[str, Any] = {
            "timestamp": datetime.now(UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        command = command_var.get()
        if command:
            log_record["command"] = command

        game = game_var.get()
        if game:
            log_record["game"] = game

        if record.exc_info:
            log_record["exception"] = {
                "type": record.exc_info[0].__name__ if record.exc_info[0] else "Unknown",
                "message": str(record.exc_info[1]) if record.exc_info[1] else "",
                "traceback": self.formatException(record.exc_info),
            }

        extra = {k: v for k, v in record.__dict__.items() if k not in _STANDARD_ATTRS}
        if extra:
            log_record["extra"] = extra

        # Fractions and enums serialize through str()
        return json.dumps(log_record, default=str)


class CleanExceptionFormatter(logging.Formatter):
    """Formatter that produces short, readable tracebacks for terminal use."""

    MAX_FRAMES = 5
    PACKAGE_MARKER = "/stratzero/"

    def formatException(self, ei) -> str:
        exc_type, exc_value, exc_tb = ei

        exc_name = exc_type.__name__ if exc_type else "Unknown"
        exc_msg = str(exc_value)

        frames = traceback.extract_tb(exc_tb)

        # Only our own frames are interesting
        own_frames = [f for f in frames if self.PACKAGE_MARKER in f.filename and "/site-packages/" not in f.filename]
        if not own_frames:
            own_frames = frames[-3:]
        own_frames = own_frames[-self.MAX_FRAMES :]

        lines = [""]
        lines.append(f"{'─' * 60}")
        lines.append(f"  {exc_name}: {self._truncate(exc_msg, 200)}")
        lines.append(f"{'─' * 60}")

        for frame in own_frames:
            filename = frame.filename.split(self.PACKAGE_MARKER)[-1]
            lines.append(f"  → {filename}:{frame.lineno} in {frame.name}()")
            if frame.line:
                lines.append(f"    {frame.line.strip()}")

        lines.append(f"{'─' * 60}")
        return "\n".join(lines)

    def _truncate(self, text: str, max_len: int) -> str:
        if len(text) <= max_len:
            return text
        return text[: max_len - 3] + "..."


def setup_logging(level: str | None = None, log_format: str | None = None) -> None:
    """
    Configure the stratzero logger tree.

    Args:
        level: Override for settings.log_level (e.g. "DEBUG").
        log_format: Override for settings.log_format ("human" or "json").
    """
    settings = get_settings()
    level_name = (level or settings.log_level).upper()
    numeric_level = logging.getLevelName(level_name)
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    if (log_format or settings.log_format) == "json":
        formatter: logging.Formatter = JSONFormatter()
    else:
        fmt = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
        formatter = CleanExceptionFormatter(fmt, "%H:%M:%S")

    logger = logging.getLogger("stratzero")
    logger.setLevel(numeric_level)
    logger.propagate = False

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(numeric_level)
    handler.setFormatter(formatter)
    logger.addHandler(handler)
