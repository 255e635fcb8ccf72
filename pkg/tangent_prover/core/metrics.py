"""Prometheus metrics for the tangent prover."""

import logging
from contextlib import contextmanager

from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

from tangent_prover.config import get_settings

logger = logging.getLogger(__name__)


MONITORING_ENABLED = get_settings().enable_monitoring

if MONITORING_ENABLED:
    logger.info("Prometheus metrics enabled (ENABLE_MONITORING=true)")

    PROOF_RUNS = Counter(
        "proof_runs_total",
        "Total number of prover runs",
        ["route"],  # route: Theorem1 | Theorem2Split | ... | Failure
    )

    PROOF_DURATION = Histogram(
        "proof_duration_seconds",
        "Prover run duration in seconds",
        ["operation"],  # operation: prove | factor | verify | corpus
        buckets=[0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 30.0],
    )

    ERROR_COUNT = Counter(
        "errors_total",
        "Total errors by stage",
        ["error_type", "stage"],  # stage: load | prove | factor | verify
    )
else:
    logger.debug("Prometheus metrics disabled (ENABLE_MONITORING=false)")

    class _NoOpMetric:
        """No-op metric that does nothing."""

        def labels(self, **kwargs):  # noqa: ARG002
            return self

        def inc(self, amount=1):  # noqa: ARG002
            pass

        def time(self):
            @contextmanager
            def _noop():
                yield

            return _noop()

    PROOF_RUNS = _NoOpMetric()
    PROOF_DURATION = _NoOpMetric()
    ERROR_COUNT = _NoOpMetric()


def export_metrics(path: str) -> bool:
    """Write the default registry to a textfile; returns False when monitoring is off."""
    if not MONITORING_ENABLED or not path:
        return False
    write_to_textfile(path, REGISTRY)
    logger.info(f"Metrics written to {path}")
    return True
