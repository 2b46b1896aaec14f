"""
Randomized Property Runs.

Test Category: Slow (hundreds of generated games per test)
Related Code: stratzero/services/ser0.py, stratzero/services/nash.py,
              stratzero/services/subspace.py, stratzero/services/gamegen.py

Coverage:
- PAT round trip: gamma, zero-sum certificate, NE verified on the original game
- LP value equals the value of every equilibrium the oracle finds
- No sampled mixed deviation beats a verified equilibrium
- Verdicts survive positive scaling and row/column shifts
- Sums of a row part and a column part are members, split back exactly
- Negative and pure families classify as constructed
- Membership test agrees with the four-index characterization
- Wedderburn reduction on larger random matrices
- Exact rank against a minor-based rank
- 2x2 games never fail the D membership test
"""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from stratzero.constants import NonEquivalentKind, Reason, SolveStatus, Verdict
from stratzero.services.exactnum import BimatrixGame, GameMatrix, matrix_rank, unit_vector
from stratzero.services.gamegen import (
    gen_non_equivalent,
    gen_pat_zero_sum,
    gen_pure_ne,
    gen_strictly_competitive,
    non_equivalent_kind,
)
from stratzero.services.nash import (
    expected_payoffs,
    solve_strat_ne,
    solve_zero_sum_lp,
    support_enumeration,
    verify_ne,
)
from stratzero.services.ser0 import classify, is_strictly_competitive
from stratzero.services.subspace import is_in_subspace_m, is_in_subspace_m_brute, wedderburn_decompose, wedderburn_step
from tests.conftest import random_rational_matrix

pytestmark = pytest.mark.slow


def _integer_matrix(rng: np.random.Generator, m: int, n: int, low: int, high: int) -> GameMatrix:
    return GameMatrix.from_integer_array(rng.integers(low, high, (m, n), endpoint=True))


def _determinant(rows: list[list[Fraction]]) -> Fraction:
    if len(rows) == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, pivot in enumerate(rows[0]):
        if pivot:
            minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
            total += (-1) ** j * pivot * _determinant(minor)
    return total


def _rank_by_minors(matrix: GameMatrix) -> int:
    for size in range(min(matrix.shape), 0, -1):
        for rows in combinations(range(matrix.rows), size):
            for cols in combinations(range(matrix.cols), size):
                if _determinant([[matrix.entries[i][j] for j in cols] for i in rows]):
                    return size
    return 0


def test_pat_round_trip(rng):
    for seed in range(200):
        m, n = (int(x) for x in rng.integers(2, 20, 2, endpoint=True))
        game, truth = gen_pat_zero_sum(m, n, seed)
        report = classify(game)
        assert report.verdict == Verdict.STRATEGICALLY_ZERO_SUM
        assert report.gamma == truth.expected_gamma
        assert (report.a_hat + report.b_hat).is_zero()

        outcome = solve_strat_ne(game)
        assert outcome.status == SolveStatus.ZERO_SUM_NE
        assert verify_ne(game.a_tilde, game.b_tilde, outcome.profile.p, outcome.profile.q)


def test_non_equivalent_family(rng):
    for seed in range(200):
        m, n = (int(x) for x in rng.integers(3, 8, 2, endpoint=True))
        if seed % 4 < 2:
            m, n = min(m, 4), min(n, 4)
        game = gen_non_equivalent(m, n, seed)
        report = classify(game)
        assert report.verdict == Verdict.NOT_EQUIVALENT
        if non_equivalent_kind(seed) == NonEquivalentKind.D_BROKEN:
            assert report.reason == Reason.D_NOT_IN_M
        else:
            assert report.reason == Reason.GAMMA_NON_POSITIVE
        if m <= 4 and n <= 4:
            assert support_enumeration(game.a_tilde, game.b_tilde)


def test_pure_family():
    for seed in range(100):
        game = gen_pure_ne(2 + seed % 7, 1 + seed % 5, seed)
        outcome = solve_strat_ne(game)
        assert outcome.report.verdict == Verdict.PURE_STRATEGY_NE
        assert outcome.status == SolveStatus.PURE_NE
        assert verify_ne(game.a_tilde, game.b_tilde, outcome.profile.p, outcome.profile.q)


def test_strictly_competitive_family():
    for seed in range(100):
        assert is_strictly_competitive(gen_strictly_competitive(2 + seed % 6, 2 + seed % 4, seed))


def test_membership_matches_four_index_test(rng):
    for trial in range(1000):
        m, n = (int(x) for x in rng.integers(1, 6, 2, endpoint=True))
        match trial % 3:
            case 0:
                matrix = _integer_matrix(rng, m, n, -3, 3)
            case 1:
                u = rng.integers(-9, 9, n, endpoint=True)
                v = rng.integers(-9, 9, m, endpoint=True)
                matrix = GameMatrix.from_integer_array(u[np.newaxis, :] + v[:, np.newaxis])
            case _:
                u = rng.integers(-9, 9, n, endpoint=True)
                v = rng.integers(-9, 9, m, endpoint=True)
                array = u[np.newaxis, :] + v[:, np.newaxis]
                array[rng.integers(m), rng.integers(n)] += int(rng.integers(1, 4))
                matrix = GameMatrix.from_integer_array(array)
        assert is_in_subspace_m(matrix).in_m == is_in_subspace_m_brute(matrix)


def test_wedderburn_on_low_rank_matrices(rng):
    for _ in range(40):
        m, n = (int(x) for x in rng.integers(2, 10, 2, endpoint=True))
        rank = int(rng.integers(0, min(m, n, 5), endpoint=True))
        array = np.zeros((m, n), dtype=np.int64)
        for _ in range(rank):
            array += np.outer(rng.integers(-5, 5, m, endpoint=True), rng.integers(-5, 5, n, endpoint=True))
        matrix = GameMatrix.from_integer_array(array)

        current = matrix
        while not current.is_zero():
            i, j, _ = next(cell for cell in current.iter_entries() if cell[2] != 0)
            reduced = wedderburn_step(current, unit_vector(n, j), unit_vector(m, i))
            assert matrix_rank(reduced) == matrix_rank(current) - 1
            current = reduced

        terms = wedderburn_decompose(matrix)
        assert len(terms) == matrix_rank(matrix)
        total = GameMatrix.zeros(m, n)
        for term in terms:
            total = total + term
        assert total == matrix


def test_rank_matches_minors(rng):
    for _ in range(300):
        m, n = (int(x) for x in rng.integers(1, 4, 2, endpoint=True))
        matrix = _integer_matrix(rng, m, n, -2, 2)
        assert matrix_rank(matrix) == _rank_by_minors(matrix)


def test_two_by_two_never_fails_d_membership(rng):
    for _ in range(500):
        game = BimatrixGame(_integer_matrix(rng, 2, 2, -9, 9), _integer_matrix(rng, 2, 2, -9, 9))
        assert classify(game).reason != Reason.D_NOT_IN_M


def _rational_vector(rng: np.random.Generator, size: int) -> tuple[Fraction, ...]:
    return random_rational_matrix(rng, 1, size).row(1)


def _mixed_strategy(rng: np.random.Generator, size: int) -> tuple[Fraction, ...]:
    weights = [Fraction(int(x)) for x in rng.integers(0, 9, size, endpoint=True)]
    weights[int(rng.integers(size))] += 1
    total = sum(weights, start=Fraction(0))
    return tuple(x / total for x in weights)


def test_lp_value_matches_oracle_equilibria(rng):
    for _ in range(150):
        m, n = (int(x) for x in rng.integers(1, 4, 2, endpoint=True))
        a = random_rational_matrix(rng, m, n)
        value = solve_zero_sum_lp(a).value
        equilibria = support_enumeration(a, -a)
        assert equilibria
        assert all(profile.value == value for profile in equilibria)


def test_no_mixed_deviation_improves(rng):
    for seed in range(60):
        m, n = (int(x) for x in rng.integers(2, 6, 2, endpoint=True))
        game, _ = gen_pat_zero_sum(m, n, seed)
        profile = solve_strat_ne(game).profile
        a, b = game.a_tilde, game.b_tilde
        row_value, column_value = expected_payoffs(a, b, profile.p, profile.q)
        for _ in range(20):
            assert expected_payoffs(a, b, _mixed_strategy(rng, m), profile.q)[0] <= row_value
            assert expected_payoffs(a, b, profile.p, _mixed_strategy(rng, n))[1] <= column_value


def _shifted(game: BimatrixGame, rng: np.random.Generator) -> tuple[BimatrixGame, Fraction, Fraction]:
    m, n = game.shape
    c1, c2 = (Fraction(int(p), int(q)) for p, q in zip(rng.integers(1, 9, 2), rng.integers(1, 5, 2), strict=True))
    a = game.a_tilde.scale(c1) + GameMatrix.repeat_row(_rational_vector(rng, n), m)
    b = game.b_tilde.scale(c2) + GameMatrix.repeat_column(_rational_vector(rng, m), n)
    return BimatrixGame(a, b), c1, c2


@pytest.mark.parametrize("family", ["equivalent", "pure", "gamma_negative", "d_broken", "random"])
def test_verdict_invariant_under_scale_and_shift(rng, family):
    for seed in range(40):
        m, n = (int(x) for x in rng.integers(3, 6, 2, endpoint=True))
        match family:
            case "equivalent":
                game, _ = gen_pat_zero_sum(m, n, seed)
            case "pure":
                game = gen_pure_ne(m, n, seed)
            case "gamma_negative":
                game = gen_non_equivalent(m, n, seed, kind=NonEquivalentKind.GAMMA_NEGATIVE)
            case "d_broken":
                game = gen_non_equivalent(m, n, seed, kind=NonEquivalentKind.D_BROKEN)
            case _:
                game = BimatrixGame(random_rational_matrix(rng, m, n), random_rational_matrix(rng, m, n))
        before = classify(game)
        transformed, c1, c2 = _shifted(game, rng)
        after = classify(transformed)
        assert after.verdict == before.verdict
        if before.verdict == Verdict.STRATEGICALLY_ZERO_SUM:
            assert after.gamma == before.gamma * c2 / c1


def test_row_plus_column_parts_are_members(rng):
    for _ in range(200):
        m, n = (int(x) for x in rng.integers(1, 12, 2, endpoint=True))
        row_part = GameMatrix.repeat_row(_rational_vector(rng, n), m)
        matrix = row_part + GameMatrix.repeat_column(_rational_vector(rng, m), n)
        result = is_in_subspace_m(matrix)
        assert result.in_m
        assert result.residual.is_zero()
        assert result.row_part + result.column_part == matrix
