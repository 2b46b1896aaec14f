"""
Test fixtures for stratzero.

Test Categories:
- @pytest.mark.unit: exact-arithmetic tests on small games (fast)
- @pytest.mark.slow: large property runs and benchmark-shape checks

The worked example used throughout is a PAT of Rock-Paper-Scissors:
Ã = 2A + 1·1uᵀ, B̃ = -4A + 1·v1ᵀ with u = (-1, 8, 0), v = (9, 3, 10),
giving gamma = 2 and an equivalent game of value -9.
"""

import os
from fractions import Fraction

import numpy as np
import pytest

from stratzero.config import get_settings
from stratzero.services.exactnum import BimatrixGame, GameMatrix

RPS_A_TILDE = [[-1, 6, 2], [1, 8, -2], [-3, 10, 0]]
RPS_B_TILDE = [[9, 13, 5], [-1, 3, 7], [14, 6, 10]]
RPS_D = [[7, 25, 9], [1, 19, 3], [8, 26, 10]]
RPS_A_HAT = [[-9, -13, -5], [-5, -9, -13], [-13, -5, -9]]

RPS_GAME_FILE = """\
# PAT of Rock-Paper-Scissors
3 3
-1 6 2
1 8 -2
-3 10 0

9 13 5
-1 3 7
14 6 10
"""


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Every test sees settings built from its own environment."""
    for key in list(os.environ):
        if key.startswith("STRATZERO_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rps_game() -> BimatrixGame:
    """Strategically zero-sum 3x3 game (gamma = 2, rank-2 case)."""
    return BimatrixGame.from_rows(RPS_A_TILDE, RPS_B_TILDE)


@pytest.fixture
def rps_broken_game() -> BimatrixGame:
    """The worked example with b̃_33 moved from 10 to 11, which pushes D out of M."""
    b = [row[:] for row in RPS_B_TILDE]
    b[2][2] = 11
    return BimatrixGame.from_rows(RPS_A_TILDE, b)


@pytest.fixture
def pure_game() -> BimatrixGame:
    """Ã has constant rows (Ã ∈ M); the pure equilibrium is (1, 2)."""
    return BimatrixGame.from_rows([[3, 3], [1, 1]], [[0, 5], [9, 9]])


@pytest.fixture
def lowrank_game() -> BimatrixGame:
    """Ã = I, gamma = 2 and D = [[0, 1], [0, 1]] (constant columns)."""
    return BimatrixGame.from_rows([[1, 0], [0, 1]], [[-2, 1], [0, -1]])


@pytest.fixture
def matching_pennies() -> BimatrixGame:
    """Zero-sum already: unique equilibrium is uniform with value 0."""
    a = [[1, -1], [-1, 1]]
    return BimatrixGame.from_rows(a, [[-x for x in row] for row in a])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260115)


def random_rational_matrix(rng: np.random.Generator, m: int, n: int, bound: int = 9) -> GameMatrix:
    """Entries p/q with |p| <= bound and 1 <= q <= 4."""
    numerators = rng.integers(-bound, bound, size=(m, n), endpoint=True)
    denominators = rng.integers(1, 4, size=(m, n), endpoint=True)
    rows = zip(numerators, denominators, strict=True)
    return GameMatrix.from_rows([[Fraction(int(p), int(q)) for p, q in zip(nr, dr, strict=True)] for nr, dr in rows])
