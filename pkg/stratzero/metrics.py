"""
Prometheus metrics for stratzero.

Counts classification verdicts, times classify calls and tracks simplex
pivots. The CLI can dump the text exposition with --metrics-out.
"""

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

REGISTRY = CollectorRegistry()

CLASSIFICATIONS = Counter(
    "stratzero_classifications_total",
    "Games classified",
    ["verdict", "reason"],  # reason is "" unless the verdict is a refusal
    registry=REGISTRY,
)

CLASSIFY_LATENCY = Histogram(
    "stratzero_classify_seconds",
    "Wall time of one exact classification",
    buckets=[0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0],
    registry=REGISTRY,
)

LP_PIVOTS = Counter(
    "stratzero_lp_pivots_total",
    "Simplex pivots performed by the exact zero-sum solver",
    registry=REGISTRY,
)


def get_metrics() -> bytes:
    """Generate Prometheus text exposition for the stratzero registry."""
    return generate_latest(REGISTRY)


def record_classification(verdict: str, reason: str | None, seconds: float) -> None:
    """Record one classify() outcome and its duration."""
    CLASSIFICATIONS.labels(verdict=verdict, reason=reason or "").inc()
    CLASSIFY_LATENCY.observe(seconds)


def record_lp_pivots(count: int) -> None:
    LP_PIVOTS.inc(count)
