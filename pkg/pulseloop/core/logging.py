"""Structured JSON Logging Configuration"""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from pulseloop.config import settings


class CustomJsonFormatter(jsonlogger.JsonFormatter):
    """JSON formatter adding level, logger and run metadata"""

    def add_fields(self, log_record: dict, record: logging.LogRecord, message_dict: dict) -> None:
        super().add_fields(log_record, record, message_dict)

        log_record["level"] = record.levelname
        log_record["logger"] = record.name
        log_record["environment"] = settings.ENVIRONMENT
        log_record["app_name"] = settings.APP_NAME

        if getattr(record, "run_id", None):
            log_record["run_id"] = record.run_id


class RunIdFilter(logging.Filter):
    """Stamps every record with the id of the current command run"""

    def __init__(self, run_id: str) -> None:
        super().__init__()
        self.run_id = run_id

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run_id"):
            record.run_id = self.run_id
        return True


def setup_logging(level: Optional[str] = None, run_id: Optional[str] = None) -> None:
    """
    Configure package logging.

    Output goes to stderr; stdout carries command results (CSV, JSON, tables).
    Structured fields are passed with ``extra=``.
    """
    handler = logging.StreamHandler(sys.stderr)

    if settings.LOG_FORMAT == "json":
        formatter = CustomJsonFormatter(
            fmt="%(asctime)s %(level)s %(name)s %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S"
        )
    else:
        formatter = logging.Formatter(
            fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S"
        )

    handler.setFormatter(formatter)
    if run_id:
        handler.addFilter(RunIdFilter(run_id))

    root_logger = logging.getLogger("pulseloop")
    root_logger.setLevel(getattr(logging, (level or settings.LOG_LEVEL).upper()))
    root_logger.handlers.clear()
    root_logger.addHandler(handler)
    root_logger.propagate = False


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
