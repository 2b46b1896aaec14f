"""
Exact rational scalars and dense rational matrices.

Every other service computes on these types. Scalars are
fractions.Fraction (canonical, arbitrary precision); matrices are
immutable row-major tuples of Fractions. Public indexing is 1-based so
that (i, j) reads the same as in the payoff-matrix notation.
"""

import operator
import re
from collections.abc import Callable, Iterable, Iterator, Sequence
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from stratzero.errors import DimensionError, RationalParseError

Rational = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

# integer | p/q | finite base-10 decimal; no exponents, no inf/nan
RATIONAL_PATTERN = re.compile(r"[+-]?(?:\d+/\d+|\d+\.\d*|\.\d+|\d+)", re.ASCII)


# =============================================================================
# Multiplication accounting
# =============================================================================


@dataclass
class MultiplicationCounter:
    """Running tally of scalar Rational multiplications."""

    count: int = 0


_counter_var: ContextVar[MultiplicationCounter | None] = ContextVar("multiplication_counter", default=None)


@contextmanager
def count_multiplications() -> Iterator[MultiplicationCounter]:
    """
    Count scalar multiplications done by matrix-level helpers in this context.

    Usage:
        with count_multiplications() as counter:
            classify(game)
        assert counter.count <= 8 * game.m * game.n
    """
    counter = MultiplicationCounter()
    token = _counter_var.set(counter)
    try:
        yield counter
    finally:
        _counter_var.reset(token)


def tally_multiplications(count: int) -> None:
    counter = _counter_var.get()
    if counter is not None:
        counter.count += count


# =============================================================================
# Scalars and vectors
# =============================================================================


def rational_from_text(token: str) -> Fraction:
    """
    Parse an integer ("-3"), fraction ("p/q") or finite decimal ("0.25").

    Decimals are converted exactly in base 10, never through a float.

    Raises:
        RationalParseError: malformed token or zero denominator.
    """
    text = token.strip()
    if not RATIONAL_PATTERN.fullmatch(text):
        raise RationalParseError(f"not a rational number: {token!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError as e:
        raise RationalParseError(f"zero denominator in {token!r}") from e


def render_rational(value: Fraction) -> str:
    """Render as "p/q" (integers as "p/1") so the text parses back exactly."""
    return f"{value.numerator}/{value.denominator}"


def to_rational(value: Any) -> Fraction:
    """Coerce an int, Fraction, numpy integer or rational text to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return rational_from_text(value)
    if isinstance(value, int | np.integer):
        return Fraction(int(value))
    if isinstance(value, float | np.floating):
        # Exact binary value of the float; callers wanting decimals pass text
        return Fraction(float(value))
    raise RationalParseError(f"cannot convert {type(value).__name__} to a rational")


def as_vector(values: Iterable[Any]) -> Vector:
    return tuple(to_rational(v) for v in values)


def unit_vector(size: int, index: int) -> Vector:
    """e_index of length size (1-based index)."""
    if not 1 <= index <= size:
        raise IndexError(f"unit vector index {index} out of range 1..{size}")
    return tuple(ONE if k == index - 1 else ZERO for k in range(size))


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise DimensionError(f"dot product of lengths {len(x)} and {len(y)}")
    tally_multiplications(len(x))
    return sum((a * b for a, b in zip(x, y, strict=True)), ZERO)


# =============================================================================
# Matrices
# =============================================================================


@dataclass(frozen=True, slots=True)
class GameMatrix:
    """Dense m×n matrix of Fractions, immutable after construction."""

    entries: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise DimensionError("a game matrix needs at least one row and one column")
        width = len(self.entries[0])
        for index, row in enumerate(self.entries, start=1):
            if len(row) != width:
                raise DimensionError(f"row {index} has {len(row)} entries, expected {width}")

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]]) -> "GameMatrix":
        return cls(tuple(as_vector(row) for row in rows))

    @classmethod
    def zeros(cls, m: int, n: int) -> "GameMatrix":
        if m < 1 or n < 1:
            raise DimensionError(f"invalid shape {m}x{n}")
        return cls(tuple((ZERO,) * n for _ in range(m)))

    @classmethod
    def outer(cls, x: Sequence[Fraction], y: Sequence[Fraction]) -> "GameMatrix":
        """x yᵀ."""
        tally_multiplications(len(x) * len(y))
        return cls(tuple(tuple(a * b for b in y) for a in x))

    @classmethod
    def repeat_row(cls, row: Sequence[Fraction], m: int) -> "GameMatrix":
        """1_m rowᵀ: every row equal to `row`."""
        row = tuple(row)
        return cls(tuple(row for _ in range(m)))

    @classmethod
    def repeat_column(cls, column: Sequence[Fraction], n: int) -> "GameMatrix":
        """column 1_nᵀ: every column equal to `column`."""
        return cls(tuple((value,) * n for value in column))

    @classmethod
    def from_integer_array(cls, array: np.ndarray) -> "GameMatrix":
        if array.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got {array.ndim} dimensions")
        return cls(tuple(tuple(Fraction(int(v)) for v in row) for row in array.tolist()))

    # -- shape and access -----------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _check(self, i: int, j: int) -> None:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.rows}x{self.cols} matrix")

    def entry(self, i: int, j: int) -> Fraction:
        self._check(i, j)
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> Vector:
        self._check(i, 1)
        return self.entries[i - 1]

    def col(self, j: int) -> Vector:
        self._check(1, j)
        return tuple(row[j - 1] for row in self.entries)

    def iter_entries(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (i, j, value) in row-major order, 1-based."""
        for i, row in enumerate(self.entries, start=1):
            for j, value in enumerate(row, start=1):
                yield i, j, value

    def transpose(self) -> "GameMatrix":
        return GameMatrix(tuple(zip(*self.entries, strict=True)))

    # -- arithmetic -----------------------------------------------------------

    def _require_same_shape(self, other: "GameMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def _pairwise(self, other: "GameMatrix", op: Callable[[Fraction, Fraction], Fraction]) -> "GameMatrix":
        self._require_same_shape(other)
        pairs = zip(self.entries, other.entries, strict=True)
        return GameMatrix(tuple(tuple(op(a, b) for a, b in zip(r, s, strict=True)) for r, s in pairs))

    def __add__(self, other: "GameMatrix") -> "GameMatrix":
        return self._pairwise(other, operator.add)

    def __sub__(self, other: "GameMatrix") -> "GameMatrix":
        return self._pairwise(other, operator.sub)

    def __neg__(self) -> "GameMatrix":
        return GameMatrix(tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, factor: Fraction | int) -> "GameMatrix":
        factor = to_rational(factor)
        tally_multiplications(self.rows * self.cols)
        return GameMatrix(tuple(tuple(factor * a for a in row) for row in self.entries))

    def matvec(self, z: Sequence[Fraction]) -> Vector:
        """F z."""
        if len(z) != self.cols:
            raise DimensionError(f"vector of length {len(z)} for {self.rows}x{self.cols} matrix")
        return tuple(dot(row, z) for row in self.entries)

    def vecmat(self, w: Sequence[Fraction]) -> Vector:
        """wᵀ F."""
        if len(w) != self.rows:
            raise DimensionError(f"vector of length {len(w)} for {self.rows}x{self.cols} matrix")
        tally_multiplications(self.rows * self.cols)
        return tuple(
            sum((w[i] * self.entries[i][j] for i in range(self.rows)), ZERO) for j in range(self.cols)
        )

    # -- structure tests ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(value == 0 for row in self.entries for value in row)

    def has_constant_columns(self) -> bool:
        """Every column is constant, i.e. all rows are equal (F = 1_m uᵀ)."""
        first = self.entries[0]
        return all(row == first for row in self.entries[1:])

    def has_constant_rows(self) -> bool:
        """Every row is constant, i.e. all columns are equal (F = v 1_nᵀ)."""
        return all(all(value == row[0] for value in row) for row in self.entries)

    def is_constant(self) -> bool:
        return self.has_constant_columns() and self.has_constant_rows()

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


@dataclass(frozen=True, slots=True)
class BimatrixGame:
    """Two-player game (m, n, Ã, B̃): row player gets Ã, column player gets B̃."""

    a_tilde: GameMatrix
    b_tilde: GameMatrix

    def __post_init__(self) -> None:
        if self.a_tilde.shape != self.b_tilde.shape:
            raise DimensionError(f"payoff matrices differ in shape: {self.a_tilde.shape} vs {self.b_tilde.shape}")

    @classmethod
    def from_rows(cls, a_rows: Iterable[Iterable[Any]], b_rows: Iterable[Iterable[Any]]) -> "BimatrixGame":
        return cls(GameMatrix.from_rows(a_rows), GameMatrix.from_rows(b_rows))

    @property
    def m(self) -> int:
        return self.a_tilde.rows

    @property
    def n(self) -> int:
        return self.a_tilde.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.a_tilde.shape


# =============================================================================
# Linear algebra
# =============================================================================


def _row_echelon(rows: list[list[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the first `width` columns; returns (rows, pivot columns)."""
    pivots: list[int] = []
    pivot_row = 0
    for col in range(width):
        if pivot_row == len(rows):
            break
        candidate = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if candidate is None:
            continue
        rows[pivot_row], rows[candidate] = rows[candidate], rows[pivot_row]
        pivot = rows[pivot_row][col]
        rows[pivot_row] = [value / pivot for value in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row], strict=True)]
        pivots.append(col)
        pivot_row += 1
    return rows, pivots


def matrix_rank(matrix: GameMatrix) -> int:
    """Exact rank by rational Gauss-Jordan elimination (no tolerance)."""
    rows = [list(row) for row in matrix.entries]
    _, pivots = _row_echelon(rows, matrix.cols)
    return len(pivots)


def bilinear_form(w: Sequence[Fraction], matrix: GameMatrix, z: Sequence[Fraction]) -> Fraction:
    """
    Exact wᵀ F z.

    Rows with w_i = 0 are skipped, so sparse witnesses such as e_l - e_i
    cost O(n) instead of O(mn).
    """
    if len(w) != matrix.rows or len(z) != matrix.cols:
        raise DimensionError(
            f"bilinear form with w of length {len(w)}, z of length {len(z)} on a {matrix.rows}x{matrix.cols} matrix"
        )
    total = ZERO
    for weight, row in zip(w, matrix.entries, strict=True):
        if weight != 0:
            total += weight * dot(row, z)
    return total


def solve_linear_system(coefficients: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """
    Solve M x = b exactly.

    Returns one solution (free variables set to zero) or None when the
    system is inconsistent.
    """
    if len(coefficients) != len(rhs):
        raise DimensionError(f"{len(coefficients)} equations but {len(rhs)} right-hand sides")
    if not coefficients:
        return ()
    width = len(coefficients[0])
    augmented = [[*map(to_rational, row), to_rational(b)] for row, b in zip(coefficients, rhs, strict=True)]
    reduced, pivots = _row_echelon(augmented, width)

    for row in reduced[len(pivots) :]:
        if row[width] != 0:
            return None

    solution = [ZERO] * width
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][width]
    return tuple(solution)
