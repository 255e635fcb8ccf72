"""Shared plumbing for the prover and corpus services."""

import logging
from abc import ABC
from typing import Any

from tangent_prover.config import Settings, get_settings
from tangent_prover.core.errors import ProverError
from tangent_prover.core.metrics import ERROR_COUNT

logger = logging.getLogger(__name__)


class BaseService(ABC):
    """Settings, a per-class logger and error accounting."""

    def __init__(self, settings: Settings | None = None) -> None:
        self.settings = settings or get_settings()
        self.logger = logging.getLogger(self.__class__.__name__)

    def _record_failure(self, stage: str, error: Exception, **context: Any) -> None:
        """Log a failed stage (load | prove | factor | corpus) and count it by error code.

        Input errors log at WARNING, everything else at ERROR.
        """
        if isinstance(error, ProverError):
            error_type = error.error
            level = logging.WARNING if error.input_error else logging.ERROR
        else:
            error_type = type(error).__name__
            level = logging.ERROR
        where = " ".join(f"{k}={v}" for k, v in context.items())
        self.logger.log(
            level, f"{stage} failed: {error} {where}".strip(), extra={"context": context}
        )
        ERROR_COUNT.labels(error_type=error_type, stage=stage).inc()

    def _log_info(self, message: str, **kwargs: Any) -> None:
        extra = " ".join(f"{k}={v}" for k, v in kwargs.items())
        self.logger.info(f"{message} {extra}".strip())
