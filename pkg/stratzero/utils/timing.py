"""
Wall-clock timing for classification runs and the benchmark harness.

Timer measures a block on the monotonic perf_counter_ns clock. log_timing
wraps a function and reports its duration on the stratzero.performance
logger, at DEBUG unless the call is slower than a threshold.
"""

import functools
import logging
import time
from collections.abc import Callable
from typing import ParamSpec, TypeVar

logger = logging.getLogger("stratzero.performance")

P = ParamSpec("P")
T = TypeVar("T")

_NS_PER_S = 1_000_000_000


def log_timing(name: str, slow_ms: float | None = None) -> Callable[[Callable[P, T]], Callable[P, T]]:
    """
    Log how long each call of the wrapped function takes.

    Calls slower than `slow_ms` are logged at INFO, everything else at DEBUG.

    Usage:
        @log_timing("nash.solve_zero_sum_lp", slow_ms=500)
        def solve_zero_sum_lp(a_hat): ...
    """

    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
            with Timer() as timer:
                result = func(*args, **kwargs)
            level = logging.INFO if slow_ms is not None and timer.elapsed_ms > slow_ms else logging.DEBUG
            logger.log(level, "%s: %.1fms", name, timer.elapsed_ms)
            return result

        return wrapper

    return decorator


class Timer:
    """
    Context manager around one timed block.

        with Timer() as timer:
            classify(game)
        timer.elapsed_s

    An exception inside the block propagates; the elapsed time is still set.
    """

    __slots__ = ("_start_ns", "_stop_ns")

    def __init__(self) -> None:
        self._start_ns = 0
        self._stop_ns = 0

    @property
    def elapsed_ns(self) -> int:
        return self._stop_ns - self._start_ns

    @property
    def elapsed_s(self) -> float:
        return self.elapsed_ns / _NS_PER_S

    @property
    def elapsed_ms(self) -> float:
        return self.elapsed_ns / 1_000_000

    def __enter__(self) -> "Timer":
        self._start_ns = time.perf_counter_ns()
        return self

    def __exit__(self, *exc: object) -> None:
        self._stop_ns = time.perf_counter_ns()
