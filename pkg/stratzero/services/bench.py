"""
Benchmark harness for the linear-runtime study.

Each (size, family, rep) task draws its game from a seed derived from the
run seed, times classify alone and records the verdict. A rep classifies
its game several times and keeps the fastest run. Tasks may run on
a thread pool; records always come back in task order.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from stratzero.config import get_settings
from stratzero.constants import ArithmeticMode, Family, Verdict
from stratzero.errors import InvariantBreach, PreconditionError
from stratzero.services.gamegen import classify_float, draw_family_arrays, game_from_arrays
from stratzero.services.ser0 import classify
from stratzero.utils.timing import Timer

logger = logging.getLogger("stratzero.bench")


@dataclass(frozen=True, slots=True)
class BenchRecord:
    m: int
    n: int
    family: Family
    seed: int
    wall_time: float  # seconds, fastest classify run of the rep
    verdict: Verdict
    arithmetic_mode: ArithmeticMode


@dataclass(frozen=True, slots=True)
class BenchSummary:
    """Wall-time statistics of one (family, size, mode) group."""

    family: Family
    m: int
    n: int
    arithmetic_mode: ArithmeticMode
    reps: int
    mean_s: float
    std_s: float
    median_s: float


@dataclass(frozen=True, slots=True)
class _Task:
    m: int
    n: int
    family: Family
    seed: int
    mode: ArithmeticMode
    inner_runs: int


def task_seed(seed: int, m: int, n: int, family: Family, rep: int) -> int:
    """Independent per-task seed; stable across runs and worker counts."""
    family_index = list(Family).index(family)
    state = np.random.SeedSequence([seed, m, n, family_index, rep]).generate_state(1, dtype=np.uint32)
    return int(state[0])


def _classifier(task: _Task) -> Callable[[], Verdict]:
    a, b = draw_family_arrays(task.family, task.m, task.n, task.seed)
    if task.mode == ArithmeticMode.FLOAT:
        a_float, b_float = a.astype(np.float64), b.astype(np.float64)
        return lambda: classify_float(a_float, b_float)[0]
    game = game_from_arrays(a, b)
    return lambda: classify(game).verdict


def _run_task(task: _Task) -> BenchRecord:
    run = _classifier(task)
    with Timer() as timer:
        verdict = run()
    best = timer.elapsed_s
    for _ in range(task.inner_runs - 1):
        with Timer() as timer:
            run()
        best = min(best, timer.elapsed_s)

    if verdict != task.family.expected_verdict:
        raise InvariantBreach(
            f"{task.family} game {task.m}x{task.n} (seed={task.seed}) classified as {verdict} in {task.mode} mode"
        )
    return BenchRecord(task.m, task.n, task.family, task.seed, best, verdict, task.mode)


def bench_run(
    sizes: Sequence[tuple[int, int]],
    reps: int,
    families: Iterable[Family],
    seed: int,
    arithmetic_mode: ArithmeticMode = ArithmeticMode.EXACT,
    workers: int | None = None,
    inner_runs: int | None = None,
) -> list[BenchRecord]:
    """
    Time classify over generated games, size by size, family by family.

    Generation and conversion are excluded from wall_time, which is the
    fastest of `inner_runs` classify runs on the rep's game. Records are
    ordered by size, then family, then rep.

    Raises:
        PreconditionError: empty sizes, reps < 1 or inner_runs < 1.
        InvariantBreach: a game did not classify as its family promises.
    """
    if not sizes:
        raise PreconditionError("bench_run needs at least one size")
    if reps < 1:
        raise PreconditionError(f"reps must be >= 1, got {reps}")
    workers = workers or get_settings().bench_workers
    if inner_runs is None:
        inner_runs = get_settings().bench_inner_runs
    if inner_runs < 1:
        raise PreconditionError(f"inner_runs must be >= 1, got {inner_runs}")

    families = list(families)
    tasks = [
        _Task(m, n, family, task_seed(seed, m, n, family, rep), arithmetic_mode, inner_runs)
        for m, n in sizes
        for family in families
        for rep in range(reps)
    ]
    logger.info("bench: %d tasks, mode=%s, workers=%d, inner_runs=%d", len(tasks), arithmetic_mode, workers, inner_runs)

    if workers == 1:
        return [_run_task(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks))


def summarize(records: Iterable[BenchRecord]) -> list[BenchSummary]:
    """Mean, standard deviation and median wall time per (family, m, n, mode), in first-seen order."""
    groups: dict[tuple[Family, int, int, ArithmeticMode], list[float]] = {}
    for record in records:
        key = (record.family, record.m, record.n, record.arithmetic_mode)
        groups.setdefault(key, []).append(record.wall_time)

    summaries = []
    for (family, m, n, mode), times in groups.items():
        values = np.asarray(times)
        summaries.append(
            BenchSummary(
                family=family,
                m=m,
                n=n,
                arithmetic_mode=mode,
                reps=len(times),
                mean_s=float(values.mean()),
                std_s=float(values.std()),
                median_s=float(np.median(values)),
            )
        )
    return summaries


def scaling_ratios(summaries: Iterable[BenchSummary], family: Family) -> list[tuple[int, int, float]]:
    """
    Median-time ratio between consecutive sizes of one family, ordered by m·n.

    Returns (cells_before, cells_after, ratio) triples; for an O(mn)
    classifier and doubled n (and m) the ratio should sit near 4.
    """
    rows = sorted((s for s in summaries if s.family == family), key=lambda s: s.m * s.n)
    return [
        (before.m * before.n, after.m * after.n, after.median_s / before.median_s)
        for before, after in zip(rows, rows[1:], strict=False)
        if before.median_s > 0
    ]
