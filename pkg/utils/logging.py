"""
Logging utilities for the revival command line and library.

This module provides:
- JSON formatting for structured file logs, with numpy scalars and arrays
  rendered as plain JSON values
- A compact console formatter for diagnostics on standard error
- Rotating file handlers configured from settings

Standard output is reserved for CSV data and command summaries, so every
handler installed here writes to standard error or to a file.
"""

import json
import logging
import os
import sys
from datetime import UTC, datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

import numpy as np

from config import settings

LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

_RESERVED_ATTRIBUTES = frozenset(
    {
        "name",
        "msg",
        "args",
        "levelname",
        "levelno",
        "pathname",
        "filename",
        "module",
        "exc_info",
        "exc_text",
        "stack_info",
        "lineno",
        "funcName",
        "created",
        "msecs",
        "relativeCreated",
        "thread",
        "threadName",
        "processName",
        "process",
        "taskName",
        "getMessage",
    }
)


def _json_default(value: Any) -> Any:
    """Convert numpy values into JSON-native ones, falling back to str."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    return str(value)


class JSONFormatter(logging.Formatter):
    """
    JSON formatter for structured logging.

    Extra fields passed through ``extra={...}`` are copied into the record.
    """

    def format(self, record: logging.LogRecord) -> str:
        """
        Format log record as JSON.

        Args:
            record: Log record to format

        Returns:
            JSON-formatted log string
        """
        log_data: dict[str, Any] = {
            "timestamp": datetime.now(UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        for key, value in record.__dict__.items():
            if key not in _RESERVED_ATTRIBUTES:
                log_data[key] = value

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data, default=_json_default, ensure_ascii=False)


class ConsoleFormatter(logging.Formatter):
    """
    Console formatter with optional colors for standard error.
    """

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m\033[1m",  # Magenta + Bold
    }

    RESET = "\033[0m"

    def __init__(self, stream=None):
        super().__init__(fmt="%(message)s", datefmt="%H:%M:%S")
        self.use_colors = self._supports_color(stream or sys.stderr)

    def _supports_color(self, stream) -> bool:
        """
        Check if the stream is a terminal that supports color output.
        """
        if not hasattr(stream, "isatty") or not stream.isatty():
            return False

        if os.environ.get("NO_COLOR"):
            return False

        term = os.environ.get("TERM", "").lower()
        if "color" in term or term in ("xterm", "xterm-256color", "screen", "linux"):
            return True

        if os.environ.get("WT_SESSION") or os.environ.get("COLORTERM"):
            return True

        return os.name != "nt"

    def format(self, record: logging.LogRecord) -> str:
        """
        Format log record as ``LEVEL    logger: message``.
        """
        level = record.levelname
        message = f"{record.name}: {record.getMessage()}"

        if self.use_colors:
            level_color = self.COLORS.get(level, "")
            formatted = f"{level_color}{level:<8}{self.RESET} {message}"
        else:
            formatted = f"{level:<8} {message}"

        if record.exc_info:
            formatted += "\n" + self.formatException(record.exc_info)

        return formatted


def resolve_level(name: str | None = None) -> int:
    """
    Map a ``REVIVAL_LOG`` value onto a logging level.

    Args:
        name: One of ``error``, ``info`` or ``debug``; defaults to the setting

    Returns:
        The numeric logging level
    """
    return LEVELS.get((name or settings.REVIVAL_LOG).lower(), logging.INFO)


def setup_logging(level: str | None = None) -> None:
    """
    Set up console and optional file logging.

    Args:
        level: Overrides ``settings.REVIVAL_LOG`` when given
    """
    numeric_level = resolve_level(level)

    if settings.LOG_TO_FILE:
        log_dir = Path(settings.LOG_FILE_PATH)
        log_dir.mkdir(parents=True, exist_ok=True)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    # Remove existing handlers to avoid duplicates
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handlers: list[logging.Handler] = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(ConsoleFormatter(sys.stderr))
    handlers.append(console_handler)

    if settings.LOG_TO_FILE:
        log_file_path = Path(settings.LOG_FILE_PATH) / settings.LOG_FILE_NAME

        file_handler = RotatingFileHandler(
            filename=log_file_path,
            maxBytes=settings.LOG_MAX_BYTES,
            backupCount=settings.LOG_BACKUP_COUNT,
            encoding="utf-8",
        )
        file_handler.setLevel(numeric_level)

        if settings.LOG_JSON_FORMAT:
            file_handler.setFormatter(JSONFormatter())
        else:
            file_handler.setFormatter(ConsoleFormatter(None))

        handlers.append(file_handler)

    for handler in handlers:
        root_logger.addHandler(handler)

    logging.getLogger(__name__).debug(
        "Logging configuration initialized",
        extra={
            "log_level": logging.getLevelName(numeric_level),
            "log_to_file": settings.LOG_TO_FILE,
            "json_format": settings.LOG_JSON_FORMAT,
        },
    )


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with consistent configuration.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)
