"""
Centralized constants for stratzero.

Single source of truth for verdict names, rank cases, generator families
and file/report format constants. Grouped by domain.
"""

from enum import StrEnum


class Verdict(StrEnum):
    """Outcome of the strategic-equivalence classification."""

    PURE_STRATEGY_NE = "pure_strategy_ne"
    STRATEGICALLY_ZERO_SUM = "strategically_zero_sum"
    NOT_EQUIVALENT = "not_equivalent_via_pat"

    @property
    def label(self) -> str:
        """Human-readable label for reports."""
        return VERDICT_LABELS[self]


VERDICT_LABELS: dict[str, str] = {
    "pure_strategy_ne": "Pure-strategy NE guaranteed",
    "strategically_zero_sum": "Strategically zero-sum",
    "not_equivalent_via_pat": "Not strategically equivalent via PAT",
}


class RankCase(StrEnum):
    """Which construction produced the equivalent zero-sum game."""

    RANK0 = "rank0"  # D = 0
    RANK1_COL_ONES = "rank1_col_ones"  # D = 1_m u^T (constant columns)
    RANK1_ROW_ONES = "rank1_row_ones"  # D = v 1_n^T (constant rows)
    RANK2 = "rank2"  # general row + column decomposition


class Reason(StrEnum):
    """Why a game was refused."""

    WITNESS_INDEX_MISMATCH = "witness_index_mismatch"
    GAMMA_NON_POSITIVE = "gamma_non_positive"
    D_NOT_IN_M = "d_not_in_m"


class SolveStatus(StrEnum):
    PURE_NE = "pure_ne"
    ZERO_SUM_NE = "zero_sum_ne"
    NO_EQUIVALENCE_FOUND = "no_equivalence_found"


class Family(StrEnum):
    """Generator families of the runtime study."""

    EQUIVALENT = "equivalent"
    PURE_NE = "pure_ne"
    NON_EQUIVALENT = "non_equivalent"

    @property
    def expected_verdict(self) -> Verdict:
        return FAMILY_VERDICTS[self]

    @classmethod
    def from_cli(cls, value: str) -> "Family":
        """Accept the dashed CLI spelling ('pure-ne') as well as the enum value."""
        return cls(value.replace("-", "_"))


FAMILY_VERDICTS: dict[str, Verdict] = {
    "equivalent": Verdict.STRATEGICALLY_ZERO_SUM,
    "pure_ne": Verdict.PURE_STRATEGY_NE,
    "non_equivalent": Verdict.NOT_EQUIVALENT,
}


class ArithmeticMode(StrEnum):
    EXACT = "exact"
    FLOAT = "float"


class ReportFormat(StrEnum):
    HUMAN = "human"
    MACHINE = "machine"
    CSV = "csv"


class GameReportFormat(StrEnum):
    """Formats for single-game commands; CSV is reserved for benchmark records."""

    HUMAN = "human"
    MACHINE = "machine"


class NonEquivalentKind(StrEnum):
    """Sub-families of non-equivalent games."""

    GAMMA_NEGATIVE = "gamma_negative"
    D_BROKEN = "d_broken"


# =============================================================================
# Report / File Format Constants
# =============================================================================

REPORT_SCHEMA_VERSION = 1
BENCH_CSV_HEADER = ("m", "n", "family", "seed", "wall_time_s", "verdict", "mode")
GAME_FILE_COMMENT = "#"


# =============================================================================
# CLI Exit Codes
# =============================================================================

EXIT_OK = 0
EXIT_PARSE_ERROR = 2
EXIT_INVARIANT_BREACH = 3


# =============================================================================
# Benchmark Defaults
# =============================================================================

DEFAULT_BENCH_SIZES = (256, 512, 1024)
DEFAULT_BENCH_REPS = 10
SCALING_BAND = (3.0, 6.0)  # accepted median-time ratio when m and n both double
