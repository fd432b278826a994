"""
Structured logging configuration for excross
JSON logs for CI runs, readable text logs at the shell. Console output goes to
stderr so that reports printed on stdout stay machine-readable.
"""

import logging
import sys
from pathlib import Path
from pythonjsonlogger import jsonlogger

# Try to import settings, fallback to defaults if not available
try:
    from config import settings
except ImportError:
    class FallbackSettings:
        LOG_LEVEL = "INFO"
        LOG_FILE = None
        LOG_FORMAT = "text"
        ENVIRONMENT = "development"
    settings = FallbackSettings()


class CustomJsonFormatter(jsonlogger.JsonFormatter):
    """Custom JSON formatter with additional context."""

    def add_fields(self, log_record, record, message_dict):
        super().add_fields(log_record, record, message_dict)

        log_record['level'] = record.levelname
        log_record['logger'] = record.name
        log_record['module'] = record.module
        log_record['function'] = record.funcName
        log_record['line'] = record.lineno

        log_record['environment'] = settings.ENVIRONMENT


def setup_logging(
    name: str = "excross",
    log_level: str = None,
    log_file: Path = None,
    log_format: str = None
) -> logging.Logger:
    """
    Configure structured logging for the application.

    Args:
        name: Logger name
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional path of a JSON log file
        log_format: Format type ("json" or "text")

    Returns:
        Configured logger instance
    """
    log_level = log_level or settings.LOG_LEVEL
    log_file = log_file or settings.LOG_FILE
    log_format = log_format or settings.LOG_FORMAT
    level = getattr(logging, log_level.upper())

    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    # Remove existing handlers to avoid duplicates
    logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)

    if log_format.lower() == "json":
        console_handler.setFormatter(CustomJsonFormatter(
            '%(timestamp)s %(level)s %(name)s %(message)s'
        ))
    else:
        console_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(funcName)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))

    logger.addHandler(console_handler)

    # File handler (always JSON for easier parsing)
    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(CustomJsonFormatter(
            '%(timestamp)s %(level)s %(name)s %(message)s'
        ))
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str = None) -> logging.Logger:
    """
    Get a logger instance with the current configuration.

    Library modules use names under the "excross." namespace; they share the
    handlers of the root "excross" logger, which is configured on first use.
    """
    if name is None:
        import inspect
        frame = inspect.currentframe().f_back
        name = frame.f_globals['__name__']

    root = logging.getLogger("excross")
    if not root.handlers:
        setup_logging("excross")

    if name == "excross" or name.startswith("excross."):
        return logging.getLogger(name)

    logger = logging.getLogger(name)
    if not logger.handlers:
        return setup_logging(name)
    return logger


if __name__ == "__main__":
    logger = get_logger("excross.logging_demo")

    logger.debug("This is a debug message")
    logger.info("This is an info message")
    logger.warning("Check failed", extra={
        'check': 'associativity',
        'witness': [0, 1, 2],
    })

    print(f"\n✅ Log format: {settings.LOG_FORMAT}", file=sys.stderr)
    print(f"Log level: {settings.LOG_LEVEL}", file=sys.stderr)
    print(f"Log file: {settings.LOG_FILE or '(none)'}", file=sys.stderr)
