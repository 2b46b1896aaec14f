"""
Game generators for the three families of the runtime study.

Draws happen on numpy integer arrays (exact for the default payoff range)
and are wrapped into exact GameMatrix games afterwards, so the same draw
can feed both the exact pipeline and the float fast path used by the
benchmark. Every generator is deterministic per seed.

Families:
- equivalent: a PAT of a zero-sum game (A, -A), ground truth retained
- pure_ne: at least one payoff matrix inside M
- non_equivalent: gamma-negative or D-broken games
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from stratzero.config import get_settings
from stratzero.constants import Family, NonEquivalentKind, Reason, Verdict
from stratzero.errors import DimensionError, InvariantBreach
from stratzero.services.exactnum import BimatrixGame, GameMatrix, Vector, as_vector, to_rational
from stratzero.services.ser0 import classify

logger = logging.getLogger("stratzero.gamegen")

ValueRange = tuple[int, int]


@dataclass(frozen=True, slots=True)
class GroundTruth:
    """
    PAT parameters of a generated game:
    Ã = α1 A + β1 1_m uᵀ and B̃ = -α2 A + β2 v 1_nᵀ with α1, α2 > 0.
    """

    base_a: GameMatrix
    alpha1: Fraction
    alpha2: Fraction
    beta1: Fraction
    beta2: Fraction
    u: Vector
    v: Vector

    def __post_init__(self) -> None:
        if self.alpha1 <= 0 or self.alpha2 <= 0:
            raise ValueError("PAT scale factors must be positive")
        if len(self.u) != self.base_a.cols or len(self.v) != self.base_a.rows:
            raise DimensionError("u must have n entries and v must have m entries")

    @property
    def expected_gamma(self) -> Fraction:
        return self.alpha2 / self.alpha1

    def reconstruct(self) -> BimatrixGame:
        m, n = self.base_a.shape
        a_tilde = self.base_a.scale(self.alpha1) + GameMatrix.repeat_row([self.beta1 * x for x in self.u], m)
        b_tilde = -self.base_a.scale(self.alpha2) + GameMatrix.repeat_column([self.beta2 * x for x in self.v], n)
        return BimatrixGame(a_tilde, b_tilde)


def rock_paper_scissors() -> GameMatrix:
    """Row player's payoffs in Rock-Paper-Scissors."""
    return GameMatrix.from_rows([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])


def pat_transform(
    base_a: GameMatrix,
    alpha1: object,
    alpha2: object,
    beta1: object,
    beta2: object,
    u: object,
    v: object,
) -> tuple[BimatrixGame, GroundTruth]:
    """Apply explicit PAT parameters to the zero-sum game (A, -A)."""
    truth = GroundTruth(
        base_a=base_a,
        alpha1=to_rational(alpha1),
        alpha2=to_rational(alpha2),
        beta1=to_rational(beta1),
        beta2=to_rational(beta2),
        u=as_vector(u),  # type: ignore[arg-type]
        v=as_vector(v),  # type: ignore[arg-type]
    )
    return truth.reconstruct(), truth


# =============================================================================
# Integer-array draws
# =============================================================================


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _resolve_range(value_range: ValueRange | None) -> ValueRange:
    return value_range if value_range is not None else get_settings().value_range


def _uniform(rng: np.random.Generator, value_range: ValueRange, size: tuple[int, ...] | int) -> np.ndarray:
    low, high = value_range
    return rng.integers(low, high, size=size, endpoint=True, dtype=np.int64)


def _positive(rng: np.random.Generator, value_range: ValueRange) -> int:
    top = max(abs(value_range[0]), abs(value_range[1]), 1)
    return int(rng.integers(1, top, endpoint=True))


def _nonzero(rng: np.random.Generator, value_range: ValueRange) -> int:
    value = _positive(rng, value_range)
    return value if rng.integers(2) else -value


def integer_residual(matrix: np.ndarray) -> np.ndarray:
    """F - 1_m F_(1) - (F^(1) - 1_m f_11) 1_nᵀ on an integer array (exact)."""
    return matrix - matrix[0:1, :] - (matrix[:, 0:1] - matrix[0, 0])


def first_residual_index(matrix: np.ndarray) -> int | None:
    """Row-major flat index of the first nonzero residual entry; None when the matrix lies in M."""
    nonzero = np.flatnonzero(integer_residual(matrix))
    return int(nonzero[0]) if nonzero.size else None


def _draw_outside_m(rng: np.random.Generator, m: int, n: int, value_range: ValueRange) -> np.ndarray:
    max_redraws = get_settings().max_redraws
    for _ in range(max_redraws):
        matrix = _uniform(rng, value_range, (m, n))
        if first_residual_index(matrix) is not None:
            return matrix
    raise InvariantBreach(f"could not draw a {m}x{n} matrix outside M in {max_redraws} attempts")


def _draw_inside_m(rng: np.random.Generator, m: int, n: int, value_range: ValueRange) -> np.ndarray:
    u = _uniform(rng, value_range, n)
    v = _uniform(rng, value_range, m)
    return u[None, :] + v[:, None]


@dataclass(frozen=True)
class PatDraw:
    """Integer PAT parameters as drawn; see GroundTruth for the exact form."""

    base: np.ndarray
    alpha1: int
    alpha2: int
    beta1: int
    beta2: int
    u: np.ndarray
    v: np.ndarray

    def a_tilde(self) -> np.ndarray:
        return self.alpha1 * self.base + self.beta1 * self.u[None, :]

    def b_tilde(self) -> np.ndarray:
        return -self.alpha2 * self.base + self.beta2 * self.v[:, None]

    def ground_truth(self) -> GroundTruth:
        return GroundTruth(
            base_a=GameMatrix.from_integer_array(self.base),
            alpha1=Fraction(self.alpha1),
            alpha2=Fraction(self.alpha2),
            beta1=Fraction(self.beta1),
            beta2=Fraction(self.beta2),
            u=as_vector(self.u.tolist()),
            v=as_vector(self.v.tolist()),
        )


def draw_pat(rng: np.random.Generator, m: int, n: int, value_range: ValueRange) -> PatDraw:
    """Kernel A outside M (re-drawn otherwise), positive α's, arbitrary β's, u and v."""
    base = _draw_outside_m(rng, m, n, value_range)
    return PatDraw(
        base=base,
        alpha1=_positive(rng, value_range),
        alpha2=_positive(rng, value_range),
        beta1=int(_uniform(rng, value_range, 1)[0]),
        beta2=int(_uniform(rng, value_range, 1)[0]),
        u=_uniform(rng, value_range, n),
        v=_uniform(rng, value_range, m),
    )


def draw_pure_ne(rng: np.random.Generator, m: int, n: int, value_range: ValueRange) -> tuple[np.ndarray, np.ndarray]:
    """One or both payoff matrices inside M, chosen by the stream."""
    layout = int(rng.integers(3))  # 0: Ã in M, 1: B̃ in M, 2: both
    a = _draw_inside_m(rng, m, n, value_range) if layout in (0, 2) else _uniform(rng, value_range, (m, n))
    b = _draw_inside_m(rng, m, n, value_range) if layout in (1, 2) else _uniform(rng, value_range, (m, n))
    return a, b


def draw_gamma_negative(
    rng: np.random.Generator, m: int, n: int, value_range: ValueRange
) -> tuple[np.ndarray, np.ndarray]:
    """B̃ = cÃ + v 1_nᵀ with c > 0: same witness cell, gamma = -c."""
    a = _draw_outside_m(rng, m, n, value_range)
    c = _positive(rng, value_range)
    v = _uniform(rng, value_range, m)
    return a, c * a + v[:, None]


def draw_d_broken(rng: np.random.Generator, m: int, n: int, value_range: ValueRange) -> tuple[np.ndarray, np.ndarray]:
    """
    A PAT game with one entry of B̃ moved off the M residual.

    The entry lies outside row 1 and column 1 and strictly after B̃'s first
    nonzero residual cell, so B̃'s witness (and hence gamma) is unchanged
    while D picks up a nonzero residual there.
    """
    max_redraws = get_settings().max_redraws
    for _ in range(max_redraws):
        pat = draw_pat(rng, m, n, value_range)
        a, b = pat.a_tilde(), pat.b_tilde()
        first = first_residual_index(b)
        assert first is not None
        candidates = [flat for flat in range(first + 1, m * n) if flat // n > 0 and flat % n > 0]
        if not candidates:
            continue
        flat = candidates[int(rng.integers(len(candidates)))]
        b = b.copy()
        b[flat // n, flat % n] += _nonzero(rng, value_range)
        return a, b
    raise InvariantBreach(f"could not perturb a {m}x{n} PAT game off M in {max_redraws} attempts")


def non_equivalent_kind(seed: int) -> NonEquivalentKind:
    """Even seeds draw gamma-negative games, odd seeds D-broken games."""
    return NonEquivalentKind.GAMMA_NEGATIVE if seed % 2 == 0 else NonEquivalentKind.D_BROKEN


def draw_family_arrays(
    family: Family, m: int, n: int, seed: int, value_range: ValueRange | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Integer payoff arrays (Ã, B̃) for one benchmark instance."""
    value_range = _resolve_range(value_range)
    rng = _rng(seed)
    match family:
        case Family.EQUIVALENT:
            pat = draw_pat(rng, m, n, value_range)
            return pat.a_tilde(), pat.b_tilde()
        case Family.PURE_NE:
            return draw_pure_ne(rng, m, n, value_range)
        case Family.NON_EQUIVALENT:
            if non_equivalent_kind(seed) == NonEquivalentKind.GAMMA_NEGATIVE or min(m, n) < 3:
                return draw_gamma_negative(rng, m, n, value_range)
            return draw_d_broken(rng, m, n, value_range)
    raise ValueError(f"unknown family {family!r}")


def game_from_arrays(a: np.ndarray, b: np.ndarray) -> BimatrixGame:
    return BimatrixGame(GameMatrix.from_integer_array(a), GameMatrix.from_integer_array(b))


# =============================================================================
# Exact generators
# =============================================================================


def _require_sizes(m: int, n: int, minimum: int) -> None:
    if m < minimum or n < minimum:
        raise DimensionError(f"need m, n >= {minimum}, got {m}x{n}")


def gen_pat_zero_sum(
    m: int, n: int, seed: int, value_range: ValueRange | None = None
) -> tuple[BimatrixGame, GroundTruth]:
    """
    A game strategically equivalent to a zero-sum game, plus its PAT parameters.

    Raises:
        DimensionError: m or n below 2.
        InvariantBreach: the emitted game does not classify back to its ground truth.
    """
    _require_sizes(m, n, 2)
    pat = draw_pat(_rng(seed), m, n, _resolve_range(value_range))
    game = game_from_arrays(pat.a_tilde(), pat.b_tilde())
    truth = pat.ground_truth()

    report = classify(game)
    if report.verdict != Verdict.STRATEGICALLY_ZERO_SUM or report.gamma != truth.expected_gamma:
        raise InvariantBreach(f"PAT game (seed={seed}) classified as {report.verdict}, gamma={report.gamma}")
    return game, truth


def gen_pure_ne(m: int, n: int, seed: int, value_range: ValueRange | None = None) -> BimatrixGame:
    """A game with at least one payoff matrix inside M (hence a pure NE)."""
    _require_sizes(m, n, 1)
    a, b = draw_pure_ne(_rng(seed), m, n, _resolve_range(value_range))
    return game_from_arrays(a, b)


def gen_non_equivalent(
    m: int,
    n: int,
    seed: int,
    kind: NonEquivalentKind | None = None,
    value_range: ValueRange | None = None,
) -> BimatrixGame:
    """
    A game that is not strategically equivalent to a zero-sum game via PAT.

    The sub-family follows the seed parity unless `kind` is given. D-broken
    games need m, n >= 3 (in 2x2 games D always lies in M); gamma-negative
    games need only m, n >= 2. Draws repeat until classify agrees with the
    constructed reason.
    """
    kind = kind or non_equivalent_kind(seed)
    _require_sizes(m, n, 3 if kind == NonEquivalentKind.D_BROKEN else 2)
    value_range = _resolve_range(value_range)
    expected = Reason.D_NOT_IN_M if kind == NonEquivalentKind.D_BROKEN else Reason.GAMMA_NON_POSITIVE
    draw = draw_d_broken if kind == NonEquivalentKind.D_BROKEN else draw_gamma_negative

    rng = _rng(seed)
    max_redraws = get_settings().max_redraws
    for attempt in range(max_redraws):
        game = game_from_arrays(*draw(rng, m, n, value_range))
        report = classify(game)
        if report.verdict == Verdict.NOT_EQUIVALENT and report.reason == expected:
            return game
        logger.debug("re-drawing %s game (attempt %d): got %s", kind, attempt + 1, report.reason)
    raise InvariantBreach(f"no certified {kind} game after {max_redraws} draws")


def gen_strictly_competitive(m: int, n: int, seed: int, value_range: ValueRange | None = None) -> BimatrixGame:
    """B̃ = -αÃ + β 1_m 1_nᵀ with α > 0."""
    _require_sizes(m, n, 1)
    value_range = _resolve_range(value_range)
    rng = _rng(seed)
    a = _uniform(rng, value_range, (m, n))
    alpha = _positive(rng, value_range)
    beta = int(_uniform(rng, value_range, 1)[0])
    return game_from_arrays(a, -alpha * a + beta)


# =============================================================================
# Float fast path
# =============================================================================


def _abs_max(matrix: np.ndarray) -> float:
    return max(float(matrix.max()), -float(matrix.min()))


def _float_witness(matrix: np.ndarray, tol: float) -> tuple[int, float] | None:
    """First residual entry with |x| > tol·max(1, max|F|), as (flat index, value)."""
    res = np.subtract(matrix, matrix[0:1, :])
    res -= matrix[:, 0:1]
    res += matrix[0, 0]
    np.abs(res, out=res)
    outside = res > tol * max(1.0, _abs_max(matrix))
    flat = int(np.argmax(outside))
    if not outside.flat[flat]:
        return None
    i, j = divmod(flat, matrix.shape[1])
    return flat, float(matrix[i, j] - matrix[0, j] - matrix[i, 0] + matrix[0, 0])


def classify_float(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> tuple[Verdict, Reason | None]:
    """
    The classification pipeline on float64 arrays, for large benchmark games.

    The zero test is relative: |x| <= tol·max(1, max|F|). Only the verdict
    is returned; the equivalent game is still formed so timings cover the
    same work as the exact path.
    """
    tol = get_settings().float_tolerance if tol is None else tol
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"payoff arrays differ in shape: {a.shape} vs {b.shape}")

    wit_a = _float_witness(a, tol)
    wit_b = _float_witness(b, tol)
    if wit_a is None or wit_b is None:
        return Verdict.PURE_STRATEGY_NE, None
    if wit_a[0] != wit_b[0]:
        return Verdict.NOT_EQUIVALENT, Reason.WITNESS_INDEX_MISMATCH

    gamma = -wit_b[1] / wit_a[1]
    if gamma <= 0:
        return Verdict.NOT_EQUIVALENT, Reason.GAMMA_NON_POSITIVE

    d = np.multiply(a, gamma)
    d += b
    if _float_witness(d, tol) is not None:
        return Verdict.NOT_EQUIVALENT, Reason.D_NOT_IN_M

    # Â = γÃ - R_D and B̂ = B̃ - C_D; their sum is accumulated in one buffer
    total = np.multiply(a, gamma)
    total -= d[0:1, :]
    total += b
    total -= d[:, 0:1]
    total += d[0, 0]
    if _abs_max(total) > tol * max(1.0, _abs_max(d)) * 10:
        raise InvariantBreach("float equivalent game is not zero-sum")
    return Verdict.STRATEGICALLY_ZERO_SUM, None
