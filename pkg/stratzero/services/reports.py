"""
Report documents and their text renderings.

Machine output is a versioned JSON document built from pydantic models;
rationals travel as "p/q" strings so nothing is lost. Human output is an
aligned key/value summary. Benchmark records render as CSV.
"""

import csv
import io
from collections.abc import Sequence
from fractions import Fraction

from pydantic import BaseModel

from stratzero.constants import (
    BENCH_CSV_HEADER,
    REPORT_SCHEMA_VERSION,
    ArithmeticMode,
    Family,
    RankCase,
    Reason,
    ReportFormat,
    SolveStatus,
    Verdict,
)
from stratzero.errors import PreconditionError
from stratzero.services.bench import BenchRecord, summarize
from stratzero.services.exactnum import GameMatrix, render_rational
from stratzero.services.nash import MixedProfile, SolveOutcome
from stratzero.services.ser0 import EquivalenceReport

# =============================================================================
# Document Models
# =============================================================================


class ProfileDocument(BaseModel):
    """A mixed-strategy profile with exact entries."""

    p: list[str]
    q: list[str]
    value: str


class ReportDocument(BaseModel):
    """Classification or solve result for one game."""

    schema_version: int = REPORT_SCHEMA_VERSION
    command: str
    m: int
    n: int
    verdict: Verdict
    verdict_label: str
    gamma: str | None = None
    rank_case: RankCase | None = None
    reason: Reason | None = None
    strictly_competitive: bool | None = None
    a_hat: list[list[str]] | None = None
    b_hat: list[list[str]] | None = None
    status: SolveStatus | None = None
    profile: ProfileDocument | None = None
    value: str | None = None


class BenchRecordDocument(BaseModel):
    m: int
    n: int
    family: Family
    seed: int
    wall_time_s: float
    verdict: Verdict
    mode: ArithmeticMode


class BenchDocument(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    command: str = "bench"
    records: list[BenchRecordDocument]


class OracleDocument(BaseModel):
    """Equilibria found by support enumeration."""

    schema_version: int = REPORT_SCHEMA_VERSION
    command: str = "oracle"
    m: int
    n: int
    max_support: int
    equilibria: list[ProfileDocument]


# =============================================================================
# Builders
# =============================================================================


def _rationals(values: Sequence[Fraction]) -> list[str]:
    return [render_rational(v) for v in values]


def _matrix(matrix: GameMatrix | None) -> list[list[str]] | None:
    return None if matrix is None else [_rationals(row) for row in matrix.entries]


def profile_document(profile: MixedProfile) -> ProfileDocument:
    return ProfileDocument(p=_rationals(profile.p), q=_rationals(profile.q), value=render_rational(profile.value))


def report_document(
    report: EquivalenceReport,
    command: str = "check",
    include_competitive: bool = False,
) -> ReportDocument:
    """Document for check / classify; the strictly-competitive flag is only set for classify."""
    m, n = report.membership_a.residual.shape
    return ReportDocument(
        command=command,
        m=m,
        n=n,
        verdict=report.verdict,
        verdict_label=report.verdict.label,
        gamma=None if report.gamma is None else render_rational(report.gamma),
        rank_case=report.rank_case,
        reason=report.reason,
        strictly_competitive=report.strictly_competitive if include_competitive else None,
        a_hat=_matrix(report.a_hat),
        b_hat=_matrix(report.b_hat),
    )


def solve_document(outcome: SolveOutcome) -> ReportDocument:
    document = report_document(outcome.report, command="solve")
    document.status = outcome.status
    if outcome.profile is not None:
        document.profile = profile_document(outcome.profile)
        document.value = render_rational(outcome.profile.value)
    return document


def bench_record_document(record: BenchRecord) -> BenchRecordDocument:
    return BenchRecordDocument(
        m=record.m,
        n=record.n,
        family=record.family,
        seed=record.seed,
        wall_time_s=record.wall_time,
        verdict=record.verdict,
        mode=record.arithmetic_mode,
    )


def oracle_document(profiles: Sequence[MixedProfile], m: int, n: int, max_support: int) -> OracleDocument:
    return OracleDocument(
        m=m,
        n=n,
        max_support=max_support,
        equilibria=[profile_document(profile) for profile in profiles],
    )


# =============================================================================
# Renderers
# =============================================================================


def _human_value(value: str) -> str:
    """'2/1' -> '2'; other rationals unchanged."""
    return value.removesuffix("/1")


def _human_pairs(pairs: list[tuple[str, str]]) -> str:
    width = max(len(key) for key, _ in pairs)
    return "\n".join(f"{key.ljust(width)} : {value}" for key, value in pairs) + "\n"


def _human_matrix(rows: list[list[str]]) -> list[str]:
    cells = [[_human_value(v) for v in row] for row in rows]
    width = max(len(cell) for row in cells for cell in row)
    return ["  " + " ".join(cell.rjust(width) for cell in row) for row in cells]


def _human_report(document: ReportDocument) -> str:
    pairs = [
        ("game", f"{document.m}x{document.n}"),
        ("verdict", f"{document.verdict_label} ({document.verdict})"),
    ]
    if document.reason is not None:
        pairs.append(("reason", document.reason))
    if document.gamma is not None:
        pairs.append(("gamma", _human_value(document.gamma)))
    if document.rank_case is not None:
        pairs.append(("rank case", document.rank_case))
    if document.strictly_competitive is not None:
        pairs.append(("strictly competitive", "yes" if document.strictly_competitive else "no"))
    if document.status is not None:
        pairs.append(("status", document.status))
    if document.profile is not None:
        pairs.append(("p", " ".join(_human_value(v) for v in document.profile.p)))
        pairs.append(("q", " ".join(_human_value(v) for v in document.profile.q)))
    if document.value is not None:
        pairs.append(("value", _human_value(document.value)))

    text = _human_pairs(pairs)
    if document.a_hat is not None and document.status is None:
        text += "equivalent zero-sum game (row player):\n" + "\n".join(_human_matrix(document.a_hat)) + "\n"
    return text


def _human_oracle(document: OracleDocument) -> str:
    lines = [f"{len(document.equilibria)} equilibria (supports up to {document.max_support})"]
    for index, profile in enumerate(document.equilibria, start=1):
        p = " ".join(_human_value(v) for v in profile.p)
        q = " ".join(_human_value(v) for v in profile.q)
        lines.append(f"  #{index}: p = [{p}]  q = [{q}]  value = {_human_value(profile.value)}")
    return "\n".join(lines) + "\n"


def bench_csv(records: Sequence[BenchRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(BENCH_CSV_HEADER)
    for r in records:
        writer.writerow([r.m, r.n, r.family, r.seed, f"{r.wall_time:.9f}", r.verdict, r.arithmetic_mode])
    return buffer.getvalue()


def bench_summary_table(records: Sequence[BenchRecord]) -> str:
    header = f"{'family':<16}{'m':>6}{'n':>6}{'mode':>7}{'reps':>6}{'mean_s':>12}{'std_s':>12}{'median_s':>12}"
    lines = [header]
    for s in summarize(records):
        lines.append(
            f"{s.family:<16}{s.m:>6}{s.n:>6}{s.arithmetic_mode:>7}{s.reps:>6}"
            f"{s.mean_s:>12.6f}{s.std_s:>12.6f}{s.median_s:>12.6f}"
        )
    return "\n".join(lines) + "\n"


def emit_report(
    subject: EquivalenceReport | SolveOutcome | OracleDocument | Sequence[BenchRecord],
    fmt: ReportFormat = ReportFormat.HUMAN,
    command: str = "check",
) -> str:
    """
    Render a classification report, solve outcome, oracle result or benchmark records.

    CSV only applies to benchmark records.

    Raises:
        PreconditionError: CSV requested for a single-game document.
    """
    match subject:
        case EquivalenceReport():
            document: ReportDocument | OracleDocument = report_document(
                subject, command=command, include_competitive=command == "classify"
            )
        case SolveOutcome():
            document = solve_document(subject)
        case OracleDocument():
            document = subject
        case _:
            records = list(subject)
            if fmt == ReportFormat.CSV:
                return bench_csv(records)
            if fmt == ReportFormat.HUMAN:
                return bench_summary_table(records)
            return BenchDocument(records=[bench_record_document(r) for r in records]).model_dump_json(indent=2) + "\n"

    if fmt == ReportFormat.CSV:
        raise PreconditionError("csv output is only available for benchmark records")
    if fmt == ReportFormat.HUMAN:
        return _human_oracle(document) if isinstance(document, OracleDocument) else _human_report(document)
    return document.model_dump_json(indent=2, exclude_none=True) + "\n"