"""
Strategic-equivalence classification (SER0).

Pipeline for a game (Ã, B̃):
1. Test Ã and B̃ for membership in M; either inside means a pure NE exists.
2. Match the first-nonzero residual cells and compute gamma = -α2/α1.
3. Refuse when gamma <= 0, otherwise form D = B̃ + gammaÃ.
4. Route D: zero, constant columns, constant rows, or general M member.
5. Build the equivalent zero-sum game (Â, B̂) with Â + B̂ = 0.

All steps are O(mn) Rational operations.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from stratzero.constants import RankCase, Reason, Verdict
from stratzero.errors import DimensionError, InvariantBreach, PreconditionError
from stratzero.metrics import record_classification
from stratzero.services.exactnum import BimatrixGame, GameMatrix, Vector, bilinear_form
from stratzero.services.subspace import (
    MembershipResult,
    is_balanced,
    is_in_subspace_m,
    witness_from_membership,
)
from stratzero.utils.timing import Timer

logger = logging.getLogger("stratzero.ser0")


@dataclass(frozen=True, slots=True)
class GammaResult:
    """gamma = -alpha2 / alpha1 over the shared balanced witness (w, z)."""

    gamma: Fraction
    w: Vector
    z: Vector
    alpha1: Fraction  # wᵀ Ã z
    alpha2: Fraction  # wᵀ B̃ z


@dataclass(frozen=True, slots=True)
class EquivalentGame:
    a_hat: GameMatrix
    b_hat: GameMatrix
    rank_case: RankCase


@dataclass(frozen=True, slots=True)
class EquivalenceReport:
    """Classification of one game. Optional fields are set when the pipeline reached them."""

    verdict: Verdict
    membership_a: MembershipResult
    membership_b: MembershipResult
    strictly_competitive: bool
    gamma: Fraction | None = None
    d_matrix: GameMatrix | None = None
    rank_case: RankCase | None = None
    a_hat: GameMatrix | None = None
    b_hat: GameMatrix | None = None
    reason: Reason | None = None

    @property
    def is_equivalent(self) -> bool:
        return self.verdict == Verdict.STRATEGICALLY_ZERO_SUM


def compute_gamma(
    mem_a: MembershipResult,
    mem_b: MembershipResult,
    a_tilde: GameMatrix,
    b_tilde: GameMatrix,
) -> GammaResult | Reason:
    """
    gamma from the first-nonzero residual cells of Ã and B̃.

    Returns Reason.WITNESS_INDEX_MISMATCH when the two cells differ: then
    one residual vanishes on a balanced pair where the other does not, so
    no PAT relates the matrices.

    Raises:
        PreconditionError: either matrix lies in M.
    """
    if mem_a.in_m or mem_b.in_m:
        raise PreconditionError("gamma is only defined when neither payoff matrix lies in M")
    if a_tilde.shape != b_tilde.shape:
        raise DimensionError(f"payoff matrices differ in shape: {a_tilde.shape} vs {b_tilde.shape}")

    if mem_a.witness_index != mem_b.witness_index:
        return Reason.WITNESS_INDEX_MISMATCH

    witness = witness_from_membership(mem_a)
    assert witness is not None
    return GammaResult(
        gamma=-mem_b.alpha / mem_a.alpha,
        w=witness.w,
        z=witness.z,
        alpha1=mem_a.alpha,
        alpha2=mem_b.alpha,
    )


def gamma_from_witness(
    a_tilde: GameMatrix, b_tilde: GameMatrix, w: Sequence[Fraction], z: Sequence[Fraction]
) -> Fraction:
    """
    gamma = -wᵀB̃z / wᵀÃz for any balanced (w, z) with wᵀÃz != 0.

    For a game that is a PAT of a zero-sum game the value does not depend
    on which balanced pair is used.
    """
    if not is_balanced(w, z):
        raise PreconditionError("w and z must each sum to zero")
    denominator = bilinear_form(w, a_tilde, z)
    if denominator == 0:
        raise PreconditionError("wᵀ Ã z is zero")
    return -bilinear_form(w, b_tilde, z) / denominator


def build_d(a_tilde: GameMatrix, b_tilde: GameMatrix, gamma: Fraction) -> GameMatrix:
    """D = B̃ + gamma Ã."""
    if gamma <= 0:
        raise PreconditionError(f"D is only formed for gamma > 0, got {gamma}")
    return b_tilde + a_tilde.scale(gamma)


def equivalent_game_rank2(
    a_tilde: GameMatrix, b_tilde: GameMatrix, gamma: Fraction, mem_d: MembershipResult
) -> EquivalentGame:
    """
    Â = gammaÃ - R_D and B̂ = B̃ - C_D, with R_D, C_D the parts from D's membership test.

    Raises:
        PreconditionError: D ∉ M, or D is zero / constant-column / constant-row
            (those go through equivalent_game_lowrank).
    """
    if not mem_d.in_m:
        raise PreconditionError("D must lie in M for the rank-2 construction")
    d = mem_d.row_part + mem_d.column_part
    if d.has_constant_columns() or d.has_constant_rows():
        raise PreconditionError("D has constant rows or columns; use the low-rank construction")
    a_hat = a_tilde.scale(gamma) - mem_d.row_part
    b_hat = b_tilde - mem_d.column_part
    return EquivalentGame(a_hat, b_hat, RankCase.RANK2)


def lowrank_case(d: GameMatrix) -> RankCase | None:
    """Which low-rank case D falls into; zero first, then constant columns, then constant rows."""
    if d.is_zero():
        return RankCase.RANK0
    if d.has_constant_columns():
        return RankCase.RANK1_COL_ONES
    if d.has_constant_rows():
        return RankCase.RANK1_ROW_ONES
    return None


def equivalent_game_lowrank(a_tilde: GameMatrix, b_tilde: GameMatrix, gamma: Fraction, d: GameMatrix) -> EquivalentGame:
    """
    Zero-sum game for D = 0, D = 1_m ûᵀ or D = v̂ 1_nᵀ.

    A constant D satisfies both rank-one forms and is handled as constant
    columns.

    Raises:
        PreconditionError: D fits none of the three cases.
    """
    case = lowrank_case(d)
    scaled = a_tilde.scale(gamma)
    match case:
        case RankCase.RANK0:
            return EquivalentGame(scaled, b_tilde, case)
        case RankCase.RANK1_COL_ONES:
            return EquivalentGame(scaled - d, b_tilde, case)
        case RankCase.RANK1_ROW_ONES:
            return EquivalentGame(scaled, b_tilde - d, case)
        case _:
            raise PreconditionError("D has neither constant rows nor constant columns; use the rank-2 construction")


def zero_sum_certificate(a_hat: GameMatrix, b_hat: GameMatrix) -> None:
    """Raise InvariantBreach unless Â + B̂ = 0 exactly."""
    if not (a_hat + b_hat).is_zero():
        raise InvariantBreach("equivalent game is not zero-sum")


def is_strictly_competitive(game: BimatrixGame) -> bool:
    """
    True iff B̃ = -αÃ + β 1_m 1_nᵀ for some α > 0 and β.

    α is pinned by any two cells where Ã differs; the rest is one O(mn)
    constancy check.
    """
    a, b = game.a_tilde, game.b_tilde
    a11, b11 = a.entry(1, 1), b.entry(1, 1)
    differing = next(((i, j) for i, j, value in a.iter_entries() if value != a11), None)
    if differing is None:
        return b.is_constant()

    i, j = differing
    alpha = -(b.entry(i, j) - b11) / (a.entry(i, j) - a11)
    if alpha <= 0:
        return False
    return (b + a.scale(alpha)).is_constant()


def _classify(game: BimatrixGame) -> EquivalenceReport:
    a, b = game.a_tilde, game.b_tilde
    mem_a = is_in_subspace_m(a)
    mem_b = is_in_subspace_m(b)
    competitive = is_strictly_competitive(game)

    if mem_a.in_m or mem_b.in_m:
        logger.debug("payoff matrix in M (a=%s, b=%s): pure-strategy branch", mem_a.in_m, mem_b.in_m)
        return EquivalenceReport(Verdict.PURE_STRATEGY_NE, mem_a, mem_b, competitive)

    def refuse(reason: Reason, **fields) -> EquivalenceReport:
        logger.debug("not equivalent: %s", reason)
        return EquivalenceReport(Verdict.NOT_EQUIVALENT, mem_a, mem_b, competitive, reason=reason, **fields)

    gamma_result = compute_gamma(mem_a, mem_b, a, b)
    if isinstance(gamma_result, Reason):
        return refuse(gamma_result)

    gamma = gamma_result.gamma
    if gamma <= 0:
        return refuse(Reason.GAMMA_NON_POSITIVE, gamma=gamma)

    d = build_d(a, b, gamma)
    if lowrank_case(d) is not None:
        equivalent = equivalent_game_lowrank(a, b, gamma, d)
    else:
        mem_d = is_in_subspace_m(d)
        if not mem_d.in_m:
            return refuse(Reason.D_NOT_IN_M, gamma=gamma, d_matrix=d)
        equivalent = equivalent_game_rank2(a, b, gamma, mem_d)

    zero_sum_certificate(equivalent.a_hat, equivalent.b_hat)
    logger.debug("strategically zero-sum: gamma=%s case=%s", gamma, equivalent.rank_case)
    return EquivalenceReport(
        Verdict.STRATEGICALLY_ZERO_SUM,
        mem_a,
        mem_b,
        competitive,
        gamma=gamma,
        d_matrix=d,
        rank_case=equivalent.rank_case,
        a_hat=equivalent.a_hat,
        b_hat=equivalent.b_hat,
    )


def classify(game: BimatrixGame) -> EquivalenceReport:
    """
    Classify a game as pure-NE, strategically zero-sum, or not equivalent via PAT.

    Failures are verdicts; the only exception raised is InvariantBreach if
    the constructed game fails its zero-sum certificate.
    """
    with Timer() as timer:
        report = _classify(game)
    record_classification(report.verdict, report.reason, timer.elapsed_s)
    return report
