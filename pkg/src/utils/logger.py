import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Union

from pythonjsonlogger import jsonlogger

from src.utils.errors import ConfigError

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'


def resolve_level(level: Union[int, str]) -> int:
    """Map a level name such as ``"debug"`` to its numeric value."""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ConfigError(f"unknown logging level {level!r}")
    return value


def setup_logging(
    level: Union[int, str] = logging.INFO,
    log_file: Optional[Union[str, Path]] = None,
    use_json: bool = False,
    stream: Optional[TextIO] = None,
    static_fields: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Set up logging for a toolkit run.

    Reports are written to stdout, so log records go to stderr unless another
    stream is given.

    Args:
        level: Logging level name or number (default: INFO)
        log_file: Optional path to log file
        use_json: Whether to use JSON formatting for logs
        stream: Console stream (default: sys.stderr)
        static_fields: Extra keys stamped on every JSON record, e.g. the command

    Raises:
        ConfigError: If ``level`` is not a known logging level
    """
    level = resolve_level(level)

    if use_json:
        formatter: logging.Formatter = jsonlogger.JsonFormatter(
            JSON_FORMAT, static_fields=dict(static_fields or {})
        )
    else:
        formatter = logging.Formatter(TEXT_FORMAT)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
