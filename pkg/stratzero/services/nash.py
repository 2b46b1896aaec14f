"""
Nash equilibrium computation and certification.

- verify_ne: exact best-response check against all pure deviations
- pure_ne: pure equilibrium when a payoff matrix lies in M
- solve_zero_sum_lp: exact rational simplex (Bland's rule), one tableau
  gives both players' strategies (primal and dual)
- support_enumeration: exhaustive oracle for small games
- solve_strat_ne: classify, then solve through the equivalent game
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from stratzero.config import get_settings
from stratzero.constants import SolveStatus, Verdict
from stratzero.errors import DimensionError, InvariantBreach, PreconditionError, SizeGuardError
from stratzero.metrics import record_lp_pivots
from stratzero.services.exactnum import (
    ONE,
    ZERO,
    BimatrixGame,
    GameMatrix,
    Vector,
    dot,
    solve_linear_system,
    unit_vector,
)
from stratzero.services.ser0 import EquivalenceReport, classify
from stratzero.services.subspace import MembershipResult
from stratzero.utils.timing import log_timing

logger = logging.getLogger("stratzero.nash")


@dataclass(frozen=True, slots=True)
class MixedProfile:
    """(p, q) on the simplices plus the row player's expected payoff pᵀ A q."""

    p: Vector
    q: Vector
    value: Fraction

    def __post_init__(self) -> None:
        for name, strategy in (("p", self.p), ("q", self.q)):
            if any(x < 0 for x in strategy) or sum(strategy, ZERO) != 1:
                raise PreconditionError(f"{name} is not a probability vector: {strategy}")


@dataclass(frozen=True, slots=True)
class SolveOutcome:
    status: SolveStatus
    report: EquivalenceReport
    profile: MixedProfile | None = None


def pure_profile(m: int, n: int, i: int, j: int, value: Fraction) -> MixedProfile:
    return MixedProfile(unit_vector(m, i), unit_vector(n, j), value)


def _argmax(values: Sequence[Fraction]) -> int:
    """1-based index of the maximum; lowest index wins ties."""
    best = max(values)
    return values.index(best) + 1


def _check_strategies(a: GameMatrix, b: GameMatrix, p: Sequence[Fraction], q: Sequence[Fraction]) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"payoff matrices differ in shape: {a.shape} vs {b.shape}")
    if len(p) != a.rows or len(q) != a.cols:
        raise DimensionError(f"strategies of lengths ({len(p)}, {len(q)}) for a {a.rows}x{a.cols} game")


def expected_payoffs(
    a: GameMatrix, b: GameMatrix, p: Sequence[Fraction], q: Sequence[Fraction]
) -> tuple[Fraction, Fraction]:
    """(pᵀAq, pᵀBq)."""
    _check_strategies(a, b, p, q)
    return dot(p, a.matvec(q)), dot(b.vecmat(p), q)


def verify_ne(a: GameMatrix, b: GameMatrix, p: Sequence[Fraction], q: Sequence[Fraction]) -> bool:
    """
    Exact Nash check: pᵀAq >= e_iᵀAq for all rows and pᵀBq >= pᵀBe_j for all columns.

    Pure deviations suffice because payoffs are linear in the deviating
    player's mixed strategy.
    """
    _check_strategies(a, b, p, q)
    row_payoffs = a.matvec(q)
    column_payoffs = b.vecmat(p)
    row_value = dot(p, row_payoffs)
    column_value = dot(column_payoffs, q)
    return all(row_value >= x for x in row_payoffs) and all(column_value >= y for y in column_payoffs)


def pure_ne(
    game: BimatrixGame, mem_a: MembershipResult, mem_b: MembershipResult
) -> tuple[int, int, MixedProfile]:
    """
    Pure equilibrium (i, j) of a game with Ã ∈ M or B̃ ∈ M.

    Ã ∈ M: the row player's best reply does not depend on the column, so
    i = argmax of Ã's column generator and j = best reply to i in B̃ (or
    argmax of B̃'s row generator when B̃ ∈ M as well). The B̃-only case is
    symmetric. Ties go to the lowest index.

    Raises:
        PreconditionError: neither matrix lies in M.
    """
    a, b = game.a_tilde, game.b_tilde
    if mem_a.in_m:
        i = _argmax(mem_a.column_generator)
        j = _argmax(mem_b.row_generator) if mem_b.in_m else _argmax(b.row(i))
    elif mem_b.in_m:
        j = _argmax(mem_b.row_generator)
        i = _argmax(a.col(j))
    else:
        raise PreconditionError("pure_ne needs at least one payoff matrix in M")

    profile = pure_profile(game.m, game.n, i, j, a.entry(i, j))
    logger.debug("pure equilibrium at (%d, %d)", i, j)
    return i, j, profile


# =============================================================================
# Exact simplex
# =============================================================================


class SimplexTableau:
    """
    Exact tableau for max cᵀy s.t. M y <= b, y >= 0 with b >= 0.

    The slack basis is feasible, so no first phase is needed. The
    objective row stores z_j - c_j; at the optimum its slack entries are
    the dual prices. Entering and leaving variables follow Bland's rule,
    which rules out cycling.
    """

    def __init__(
        self, constraints: Sequence[Sequence[Fraction]], bounds: Sequence[Fraction], costs: Sequence[Fraction]
    ) -> None:
        if len(constraints) != len(bounds):
            raise DimensionError(f"{len(constraints)} constraint rows but {len(bounds)} bounds")
        if any(bound < 0 for bound in bounds):
            raise PreconditionError("bounds must be non-negative for the slack basis to be feasible")
        self.m = len(constraints)
        self.n = len(costs)
        self.rows: list[list[Fraction]] = [
            [*row, *(ONE if k == r else ZERO for k in range(self.m)), bound]
            for r, (row, bound) in enumerate(zip(constraints, bounds, strict=True))
        ]
        self.objective: list[Fraction] = [-c for c in costs] + [ZERO] * (self.m + 1)
        self.basis = [self.n + r for r in range(self.m)]
        self.pivots = 0

    @property
    def width(self) -> int:
        return self.n + self.m

    def _entering(self) -> int | None:
        return next((col for col in range(self.width) if self.objective[col] < 0), None)

    def _leaving(self, col: int) -> int | None:
        candidates = [
            (self.rows[r][-1] / self.rows[r][col], self.basis[r], r) for r in range(self.m) if self.rows[r][col] > 0
        ]
        if not candidates:
            return None
        return min(candidates)[2]

    def pivot(self, r: int, col: int) -> None:
        pivot = self.rows[r][col]
        self.rows[r] = [value / pivot for value in self.rows[r]]
        pivot_row = self.rows[r]
        for other in range(self.m):
            factor = self.rows[other][col]
            if other != r and factor != 0:
                self.rows[other] = [a - factor * b for a, b in zip(self.rows[other], pivot_row, strict=True)]
        factor = self.objective[col]
        if factor != 0:
            self.objective = [a - factor * b for a, b in zip(self.objective, pivot_row, strict=True)]
        self.basis[r] = col
        self.pivots += 1

    def solve(self) -> None:
        """
        Pivot to optimality.

        Raises:
            InvariantBreach: the program is unbounded (cannot happen for the
                bounded programs built by solve_zero_sum_lp).
        """
        while (col := self._entering()) is not None:
            r = self._leaving(col)
            if r is None:
                raise InvariantBreach("linear program is unbounded")
            self.pivot(r, col)

    @property
    def objective_value(self) -> Fraction:
        return self.objective[-1]

    def primal_solution(self) -> Vector:
        solution = [ZERO] * self.n
        for r, var in enumerate(self.basis):
            if var < self.n:
                solution[var] = self.rows[r][-1]
        return tuple(solution)

    def dual_solution(self) -> Vector:
        return tuple(self.objective[self.n : self.n + self.m])


@log_timing("nash.solve_zero_sum_lp", slow_ms=500)
def solve_zero_sum_lp(a_hat: GameMatrix) -> MixedProfile:
    """
    Solve the zero-sum game (Â, -Â) exactly.

    Â is shifted to M = Â + s with every entry >= 1, and the column
    player's program max 1ᵀy s.t. M y <= 1, y >= 0 is solved. Then
    value(M) = 1 / 1ᵀy, q = value(M)·y and p = value(M)·x where x are the
    dual prices (the row player's program).

    Raises:
        InvariantBreach: the returned strategies fail the minimax sandwich.
    """
    shift = ONE - min(value for row in a_hat.entries for value in row)
    shifted = [[value + shift for value in row] for row in a_hat.entries]

    tableau = SimplexTableau(shifted, [ONE] * a_hat.rows, [ONE] * a_hat.cols)
    tableau.solve()
    record_lp_pivots(tableau.pivots)

    shifted_value = ONE / tableau.objective_value
    q = tuple(shifted_value * y for y in tableau.primal_solution())
    p = tuple(shifted_value * x for x in tableau.dual_solution())
    value = shifted_value - shift

    column_payoffs = a_hat.vecmat(p)
    row_payoffs = a_hat.matvec(q)
    if min(column_payoffs) != value or max(row_payoffs) != value:
        raise InvariantBreach("simplex solution fails the minimax certificate")

    logger.debug("zero-sum value %s after %d pivots", value, tableau.pivots)
    return MixedProfile(p, q, value)


# =============================================================================
# Support enumeration oracle
# =============================================================================


def _indifference_strategy(
    payoff_rows: Sequence[Sequence[Fraction]], support: Sequence[int], size: int
) -> Vector | None:
    """
    Mixed strategy on `support` (0-based) making every row of payoff_rows
    pay the same; None when no such probability vector exists.
    """
    k = len(support)
    equations = [[*(row[s] for s in support), -ONE] for row in payoff_rows]
    equations.append([*([ONE] * k), ZERO])
    rhs = [ZERO] * len(payoff_rows) + [ONE]
    solution = solve_linear_system(equations, rhs)
    if solution is None:
        return None
    weights = solution[:k]
    if any(x < 0 for x in weights):
        return None
    strategy = [ZERO] * size
    for s, x in zip(support, weights, strict=True):
        strategy[s] = x
    return tuple(strategy)


def support_enumeration(a: GameMatrix, b: GameMatrix, max_support: int | None = None) -> list[MixedProfile]:
    """
    All equilibria found by enumerating support pairs of size <= max_support.

    For each pair (I, J) the indifference systems are solved exactly (one
    basic solution each), and candidates are kept only if they pass
    verify_ne. Distinct equilibria are returned in enumeration order.

    Raises:
        SizeGuardError: the game exceeds settings.support_enum_max_dim.
        PreconditionError: max_support outside 1..min(m, n).
    """
    if a.shape != b.shape:
        raise DimensionError(f"payoff matrices differ in shape: {a.shape} vs {b.shape}")
    m, n = a.shape
    limit = get_settings().support_enum_max_dim
    if max(m, n) > limit:
        raise SizeGuardError(f"support enumeration refuses {m}x{n} games (limit {limit})")
    if max_support is None:
        max_support = min(m, n)
    if not 1 <= max_support <= min(m, n):
        raise PreconditionError(f"max_support must lie in 1..{min(m, n)}, got {max_support}")

    b_columns = b.transpose().entries
    found: list[MixedProfile] = []
    seen: set[tuple[Vector, Vector]] = set()

    for size_p in range(1, max_support + 1):
        for size_q in range(1, max_support + 1):
            for rows in combinations(range(m), size_p):
                for cols in combinations(range(n), size_q):
                    # q makes the row player indifferent over I; p does the same for the column player over J
                    q = _indifference_strategy([a.entries[r] for r in rows], cols, n)
                    if q is None:
                        continue
                    p = _indifference_strategy([b_columns[c] for c in cols], rows, m)
                    if p is None or (p, q) in seen:
                        continue
                    if verify_ne(a, b, p, q):
                        seen.add((p, q))
                        found.append(MixedProfile(p, q, dot(p, a.matvec(q))))

    logger.debug("support enumeration found %d equilibria", len(found))
    return found


# =============================================================================
# Driver
# =============================================================================


def solve_strat_ne(game: BimatrixGame) -> SolveOutcome:
    """
    Classify the game and solve it through the equivalent game when possible.

    The returned profile always passes verify_ne on the original (Ã, B̃);
    when no equivalence is found the profile is None.
    """
    report = classify(game)

    if report.verdict == Verdict.PURE_STRATEGY_NE:
        _, _, profile = pure_ne(game, report.membership_a, report.membership_b)
        status = SolveStatus.PURE_NE
    elif report.verdict == Verdict.STRATEGICALLY_ZERO_SUM:
        assert report.a_hat is not None
        profile = solve_zero_sum_lp(report.a_hat)
        status = SolveStatus.ZERO_SUM_NE
    else:
        logger.info("no equilibrium found via strategic equivalence (%s)", report.reason)
        return SolveOutcome(SolveStatus.NO_EQUIVALENCE_FOUND, report)

    if not verify_ne(game.a_tilde, game.b_tilde, profile.p, profile.q):
        raise InvariantBreach(f"{status} profile is not an equilibrium of the original game")
    return SolveOutcome(status, report, profile)
