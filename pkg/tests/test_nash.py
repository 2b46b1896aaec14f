"""
Nash Equilibrium Tests.

Test Category: Unit
Related Code: stratzero/services/nash.py

Coverage:
- Exact best-response verification
- Pure equilibria of games with a payoff matrix in M
- Exact simplex (Bland's rule) and the zero-sum LP solver
- Support enumeration oracle and its size guard
- solve_strat_ne end to end, cross-checked against the oracle
"""

from fractions import Fraction

import pytest

from stratzero.constants import SolveStatus
from stratzero.errors import PreconditionError, SizeGuardError
from stratzero.services.exactnum import BimatrixGame, GameMatrix
from stratzero.services.gamegen import gen_pat_zero_sum, gen_pure_ne
from stratzero.services.nash import (
    MixedProfile,
    SimplexTableau,
    expected_payoffs,
    pure_ne,
    solve_strat_ne,
    solve_zero_sum_lp,
    support_enumeration,
    verify_ne,
)
from stratzero.services.subspace import is_in_subspace_m
from tests.conftest import RPS_A_HAT, random_rational_matrix

pytestmark = pytest.mark.unit

THIRD = Fraction(1, 3)
UNIFORM3 = (THIRD, THIRD, THIRD)


def _memberships(game: BimatrixGame):
    return is_in_subspace_m(game.a_tilde), is_in_subspace_m(game.b_tilde)


class TestMixedProfile:
    def test_rejects_non_probability_vectors(self):
        with pytest.raises(PreconditionError):
            MixedProfile((Fraction(1), Fraction(1)), (Fraction(1),), Fraction(0))
        with pytest.raises(PreconditionError):
            MixedProfile((Fraction(2), Fraction(-1)), (Fraction(1),), Fraction(0))


class TestVerifyNe:
    def test_pure_equilibrium(self, pure_game):
        p, q = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
        assert verify_ne(pure_game.a_tilde, pure_game.b_tilde, p, q)

    def test_profitable_deviation(self, pure_game):
        """At (2, 1) the row player gains by moving to row 1."""
        p, q = (Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))
        assert not verify_ne(pure_game.a_tilde, pure_game.b_tilde, p, q)

    def test_uniform_rps(self):
        a = GameMatrix.from_rows([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
        assert verify_ne(a, -a, UNIFORM3, UNIFORM3)

    def test_expected_payoffs(self, pure_game):
        p, q = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
        assert expected_payoffs(pure_game.a_tilde, pure_game.b_tilde, p, q) == (3, 5)


class TestPureNe:
    def test_row_matrix_in_m(self, pure_game):
        i, j, profile = pure_ne(pure_game, *_memberships(pure_game))
        assert (i, j) == (1, 2)
        assert profile.value == 3

    def test_column_matrix_in_m(self):
        """B̃ with constant columns: j = argmax of its row, then i = best reply in Ã."""
        game = BimatrixGame.from_rows([[1, 7], [4, 2]], [[1, 6], [1, 6]])
        i, j, _ = pure_ne(game, *_memberships(game))
        assert (i, j) == (1, 2)

    def test_ties_go_to_lowest_index(self):
        game = BimatrixGame.from_rows([[5, 5], [5, 5]], [[2, 2], [2, 2]])
        i, j, _ = pure_ne(game, *_memberships(game))
        assert (i, j) == (1, 1)

    def test_needs_a_matrix_in_m(self, rps_game):
        with pytest.raises(PreconditionError):
            pure_ne(rps_game, *_memberships(rps_game))

    def test_generated_games(self):
        for seed in range(25):
            game = gen_pure_ne(4, 5, seed)
            _, _, profile = pure_ne(game, *_memberships(game))
            assert verify_ne(game.a_tilde, game.b_tilde, profile.p, profile.q)


class TestSimplexTableau:
    def test_box_constraints(self):
        """max x + y s.t. x <= 1, y <= 2."""
        tableau = SimplexTableau([[1, 0], [0, 1]], [Fraction(1), Fraction(2)], [Fraction(1), Fraction(1)])
        tableau.solve()
        assert tableau.objective_value == 3
        assert tableau.primal_solution() == (1, 2)
        assert tableau.dual_solution() == (1, 1)

    def test_negative_bounds_rejected(self):
        with pytest.raises(PreconditionError):
            SimplexTableau([[1]], [Fraction(-1)], [Fraction(1)])


class TestSolveZeroSumLp:
    def test_worked_example(self):
        """The equivalent game of the worked example has value -9 with uniform play."""
        profile = solve_zero_sum_lp(GameMatrix.from_rows(RPS_A_HAT))
        assert profile.value == -9
        assert profile.p == UNIFORM3
        assert profile.q == UNIFORM3

    def test_matching_pennies(self, matching_pennies):
        profile = solve_zero_sum_lp(matching_pennies.a_tilde)
        assert profile.value == 0
        assert profile.p == (Fraction(1, 2), Fraction(1, 2))

    def test_saddle_point(self):
        profile = solve_zero_sum_lp(GameMatrix.from_rows([[3, 1], [4, 2]]))
        assert profile.value == 2
        assert profile.p == (0, 1)
        assert profile.q == (0, 1)

    def test_random_games_pass_minimax(self, rng):
        for _ in range(15):
            a = random_rational_matrix(rng, 4, 5)
            profile = solve_zero_sum_lp(a)
            assert verify_ne(a, -a, profile.p, profile.q)
            assert min(a.vecmat(profile.p)) == profile.value == max(a.matvec(profile.q))

    def test_one_by_one(self):
        profile = solve_zero_sum_lp(GameMatrix.from_rows([[Fraction(-7, 2)]]))
        assert profile.value == Fraction(-7, 2)


class TestSupportEnumeration:
    def test_matching_pennies_unique(self, matching_pennies):
        profiles = support_enumeration(matching_pennies.a_tilde, matching_pennies.b_tilde)
        assert len(profiles) == 1
        assert profiles[0].p == (Fraction(1, 2), Fraction(1, 2))

    def test_coordination_game_has_three(self):
        a = GameMatrix.from_rows([[2, 0], [0, 1]])
        profiles = support_enumeration(a, a)
        assert len(profiles) == 3
        assert any(p.p == (THIRD, 2 * THIRD) and p.q == (THIRD, 2 * THIRD) for p in profiles)

    def test_max_support_one_gives_pure_only(self):
        a = GameMatrix.from_rows([[2, 0], [0, 1]])
        profiles = support_enumeration(a, a, max_support=1)
        assert len(profiles) == 2

    def test_size_guard(self):
        big = GameMatrix.zeros(7, 7)
        with pytest.raises(SizeGuardError):
            support_enumeration(big, big)

    def test_size_guard_follows_settings(self, monkeypatch):
        from stratzero.config import get_settings

        monkeypatch.setenv("STRATZERO_SUPPORT_ENUM_MAX_DIM", "2")
        get_settings.cache_clear()
        game = GameMatrix.zeros(3, 3)
        with pytest.raises(SizeGuardError):
            support_enumeration(game, game)

    def test_bad_max_support(self, matching_pennies):
        with pytest.raises(PreconditionError):
            support_enumeration(matching_pennies.a_tilde, matching_pennies.b_tilde, max_support=3)

    def test_all_results_verify(self, rng):
        for _ in range(10):
            a, b = random_rational_matrix(rng, 3, 3), random_rational_matrix(rng, 3, 3)
            for profile in support_enumeration(a, b):
                assert verify_ne(a, b, profile.p, profile.q)


class TestSolveStratNe:
    def test_worked_example(self, rps_game):
        outcome = solve_strat_ne(rps_game)
        assert outcome.status == SolveStatus.ZERO_SUM_NE
        assert outcome.profile.p == UNIFORM3
        assert outcome.profile.q == UNIFORM3
        assert outcome.profile.value == -9

    def test_pure(self, pure_game):
        outcome = solve_strat_ne(pure_game)
        assert outcome.status == SolveStatus.PURE_NE
        assert (outcome.profile.p, outcome.profile.q) == ((1, 0), (0, 1))

    def test_no_equivalence(self, rps_broken_game):
        outcome = solve_strat_ne(rps_broken_game)
        assert outcome.status == SolveStatus.NO_EQUIVALENCE_FOUND
        assert outcome.profile is None
        assert outcome.report.reason == "d_not_in_m"

    def test_agrees_with_oracle(self):
        """When the oracle finds a unique equilibrium, the solver returns it."""
        for seed in range(12):
            game, _ = gen_pat_zero_sum(3, 3, seed)
            outcome = solve_strat_ne(game)
            assert verify_ne(game.a_tilde, game.b_tilde, outcome.profile.p, outcome.profile.q)
            oracle = support_enumeration(game.a_tilde, game.b_tilde)
            assert oracle
            if len(oracle) == 1:
                assert (oracle[0].p, oracle[0].q) == (outcome.profile.p, outcome.profile.q)
