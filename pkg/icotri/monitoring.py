"""
Monitoring utilities for icotri.

Provides structured logging and metrics collection for long-running
searches (automorphisms, subdivisions, link reductions) and claim runs.
"""

import json
import time
import logging
from contextlib import contextmanager
from typing import TYPE_CHECKING, Dict, Any, Optional, List, Iterator, Sequence
from datetime import datetime, timezone
from collections import defaultdict
from threading import Lock

if TYPE_CHECKING:
    from .config import VerifierConfig

logger = logging.getLogger(__name__)


class StructuredLogger:
    """
    Logger for claim runs.

    The run context (seed, flip budget, worker count) is bound once and
    written on every line; claim-scoped events add the claim id first.
    Text lines read ``event claim=joins seed=0 flip_budget=10000 jobs=1``;
    JSON lines carry the same fields plus timestamp and level.
    """

    def __init__(self, name: str, use_json: bool = False, **context):
        """
        Args:
            name: Logger name
            use_json: If True, output JSON logs (default: False)
            **context: Fields written on every line
        """
        self.logger = logging.getLogger(name)
        self.use_json = use_json
        self.context = context

    @classmethod
    def for_run(cls, config: 'VerifierConfig', name: str = "icotri.claims") -> 'StructuredLogger':
        return cls(name, use_json=config.log_json, seed=config.seed,
                   flip_budget=config.flip_budget, jobs=config.jobs)

    def bind(self, **fields) -> 'StructuredLogger':
        """A logger for the same stream with extra context fields."""
        return StructuredLogger(self.logger.name, self.use_json, **{**self.context, **fields})

    def _fields(self, claim: Optional[str], fields: Dict[str, Any]) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        if claim is not None:
            out["claim"] = claim
        out.update(self.context)
        out.update(fields)
        return out

    def _format_message(self, level: str, event: str, claim: Optional[str] = None, **fields) -> str:
        values = self._fields(claim, fields)
        if self.use_json:
            entry = {
                "timestamp": datetime.now(timezone.utc).isoformat(),
                "level": level,
                "event": event,
                **values,
            }
            return json.dumps(entry, default=str)
        return " ".join([event] + [f"{k}={_render(v)}" for k, v in values.items()])

    def info(self, event: str, claim: Optional[str] = None, **fields):
        self.logger.info(self._format_message("INFO", event, claim, **fields))

    def warning(self, event: str, claim: Optional[str] = None, **fields):
        self.logger.warning(self._format_message("WARNING", event, claim, **fields))

    def error(self, event: str, claim: Optional[str] = None, **fields):
        self.logger.error(self._format_message("ERROR", event, claim, **fields))

    def debug(self, event: str, claim: Optional[str] = None, **fields):
        self.logger.debug(self._format_message("DEBUG", event, claim, **fields))

    def claim_started(self, claim_id: str):
        self.debug("claim started", claim_id)

    def claim_finished(self, claim_id: str, status: str, elapsed: float,
                       failed_checks: Sequence[str] = ()):
        """Failures go out at WARNING with the failed check names, the rest at DEBUG."""
        if failed_checks:
            self.warning("claim failed", claim_id, status=status, elapsed=f"{elapsed:.3f}",
                         failed=list(failed_checks))
        else:
            self.debug("claim finished", claim_id, status=status, elapsed=f"{elapsed:.3f}")


def _render(value: Any) -> str:
    if isinstance(value, (list, tuple, set, frozenset)):
        return ",".join(str(v) for v in value)
    return str(value)


class MetricsCollector:
    """
    Metrics collector for counting moves, search nodes and claim latency.

    Thread-safe for use from worker threads.
    """

    def __init__(self):
        """Initialize metrics collector."""
        self._lock = Lock()
        self._counters: Dict[str, int] = defaultdict(int)
        self._histograms: Dict[str, List[float]] = defaultdict(list)
        self._errors: List[Dict[str, Any]] = []
        self._max_errors = 100

    def increment(self, metric_name: str, value: int = 1, **tags):
        """
        Increment a counter metric.

        Args:
            metric_name: Name of the metric (e.g., "moves.applied")
            value: Value to increment by (default: 1)
            **tags: Optional tags for the metric
        """
        with self._lock:
            key = self._format_key(metric_name, tags)
            self._counters[key] += value

    def record_latency(self, metric_name: str, latency_seconds: float, **tags):
        """
        Record a latency measurement.

        Args:
            metric_name: Name of the metric (e.g., "claims.latency")
            latency_seconds: Latency in seconds
            **tags: Optional tags for the metric
        """
        with self._lock:
            key = self._format_key(metric_name, tags)
            self._histograms[key].append(latency_seconds)
            if len(self._histograms[key]) > 1000:
                self._histograms[key] = self._histograms[key][-1000:]

    @contextmanager
    def timed(self, metric_name: str, **tags) -> Iterator[None]:
        """Record the wall time of the enclosed block as a latency sample."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.record_latency(metric_name, time.perf_counter() - start, **tags)

    def record_error(self, error_type: str, error_message: str, **context):
        """
        Record an error with context.

        Args:
            error_type: Type of error (e.g., "InvalidMoveError")
            error_message: Error message
            **context: Additional context (claim, step, ...)
        """
        with self._lock:
            self._errors.append({
                "timestamp": datetime.now(timezone.utc).isoformat(),
                "type": error_type,
                "message": error_message,
                **context
            })
            if len(self._errors) > self._max_errors:
                self._errors = self._errors[-self._max_errors:]

    def _format_key(self, metric_name: str, tags: Dict[str, Any]) -> str:
        """Format metric key with tags."""
        if tags:
            tag_str = ",".join(f"{k}={v}" for k, v in sorted(tags.items()))
            return f"{metric_name}[{tag_str}]"
        return metric_name

    def get_counters(self) -> Dict[str, int]:
        """Get all counter metrics."""
        with self._lock:
            return dict(self._counters)

    def get_latency_stats(self, metric_name: str, **tags) -> Optional[Dict[str, float]]:
        """
        Get latency statistics for a metric.

        Returns:
            Dict with count, min, max, avg, p50, p95, or None if no data
        """
        with self._lock:
            values = self._histograms.get(self._format_key(metric_name, tags), [])
            if not values:
                return None
            sorted_values = sorted(values)
            n = len(sorted_values)
            return {
                "count": n,
                "min": sorted_values[0],
                "max": sorted_values[-1],
                "avg": sum(values) / n,
                "p50": sorted_values[int(n * 0.5)],
                "p95": sorted_values[int(n * 0.95)],
            }

    def get_errors(self, limit: int = 10) -> List[Dict[str, Any]]:
        """Get recent errors, most recent first."""
        with self._lock:
            return list(reversed(self._errors[-limit:]))

    def get_summary(self) -> Dict[str, Any]:
        """Get summary of all metrics."""
        return {
            "counters": self.get_counters(),
            "recent_errors": self.get_errors(limit=10),
            "timestamp": datetime.now(timezone.utc).isoformat()
        }

    def reset(self):
        """Reset all metrics (useful for testing)."""
        with self._lock:
            self._counters.clear()
            self._histograms.clear()
            self._errors.clear()


# Global metrics collector instance
_global_metrics = MetricsCollector()


def get_metrics() -> MetricsCollector:
    """Get the global metrics collector instance."""
    return _global_metrics
