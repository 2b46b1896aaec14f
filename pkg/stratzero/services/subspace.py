"""
The subspace M(m×n) = {1_m uᵀ + v 1_nᵀ}.

Membership testing, residual decomposition, balanced-witness extraction
and Wedderburn rank reduction. The reference cell is fixed at (1, 1) and
the residual is scanned row-major, so identical inputs always produce
identical results.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from stratzero.errors import DimensionError, PreconditionError
from stratzero.services.exactnum import (
    ZERO,
    GameMatrix,
    Vector,
    bilinear_form,
    dot,
    unit_vector,
)

logger = logging.getLogger("stratzero.subspace")

REFERENCE_CELL = (1, 1)


@dataclass(frozen=True, slots=True)
class MembershipResult:
    """
    Outcome of the M-membership test.

    When in_m, F = row_part + column_part exactly and (l, k) = (m, n).
    Otherwise residual[l, k] = alpha != 0 is the first nonzero residual
    entry in row-major order.
    """

    in_m: bool
    alpha: Fraction
    l: int  # noqa: E741
    k: int
    row_part: GameMatrix  # R = 1_m F_(i)
    column_part: GameMatrix  # C = (F^(j) - 1_m f_ij) 1_nᵀ
    residual: GameMatrix  # F̂ = F - R - C
    ref_i: int = REFERENCE_CELL[0]
    ref_j: int = REFERENCE_CELL[1]

    @property
    def witness_index(self) -> tuple[int, int]:
        return (self.l, self.k)

    @property
    def column_generator(self) -> Vector:
        """The vector F^(j) - 1_m f_ij that generates the column part."""
        return self.column_part.col(1)

    @property
    def row_generator(self) -> Vector:
        """The row F_(i) that generates the row part."""
        return self.row_part.row(1)


@dataclass(frozen=True, slots=True)
class WzWitness:
    """Balanced pair (w, z) with 1ᵀw = 0, 1ᵀz = 0 and value = wᵀ F z != 0."""

    w: Vector
    z: Vector
    value: Fraction


def residual(matrix: GameMatrix, i: int, j: int) -> tuple[GameMatrix, GameMatrix, GameMatrix]:
    """
    Split F around reference cell (i, j).

    Returns (F̂, R, C) with R = 1_m F_(i), C = (F^(j) - 1_m f_ij) 1_nᵀ and
    F̂ = F - R - C. Row i and column j of F̂ are zero by construction.

    Raises:
        IndexError: (i, j) outside the matrix.
    """
    pivot = matrix.entry(i, j)
    row_part = GameMatrix.repeat_row(matrix.row(i), matrix.rows)
    column_part = GameMatrix.repeat_column([value - pivot for value in matrix.col(j)], matrix.cols)
    return matrix - row_part - column_part, row_part, column_part


def is_in_subspace_m(matrix: GameMatrix) -> MembershipResult:
    """
    Test F ∈ M and return both the first-nonzero witness and the decomposition.

    One pass serves both uses: the (alpha, l, k) triple feeds the gamma
    computation, the (R, C) parts feed the rank-2 zero-sum construction.
    """
    ref_i, ref_j = REFERENCE_CELL
    f_hat, row_part, column_part = residual(matrix, ref_i, ref_j)

    for l, k, value in f_hat.iter_entries():  # noqa: E741
        if value != 0:
            return MembershipResult(False, value, l, k, row_part, column_part, f_hat, ref_i, ref_j)

    return MembershipResult(True, ZERO, matrix.rows, matrix.cols, row_part, column_part, f_hat, ref_i, ref_j)


def witness_from_membership(result: MembershipResult) -> WzWitness | None:
    """w = e_l - e_i, z = e_k - e_j for a matrix outside M; None when inside."""
    if result.in_m:
        return None
    m, n = result.residual.shape
    w = tuple(a - b for a, b in zip(unit_vector(m, result.l), unit_vector(m, result.ref_i), strict=True))
    z = tuple(a - b for a, b in zip(unit_vector(n, result.k), unit_vector(n, result.ref_j), strict=True))
    return WzWitness(w=w, z=z, value=result.alpha)


def witness_wz(matrix: GameMatrix) -> WzWitness | None:
    """Balanced witness certifying F ∉ M, or None when F ∈ M."""
    return witness_from_membership(is_in_subspace_m(matrix))


def is_balanced(w: Sequence[Fraction], z: Sequence[Fraction]) -> bool:
    return sum(w, ZERO) == 0 and sum(z, ZERO) == 0


def is_in_subspace_m_brute(matrix: GameMatrix) -> bool:
    """
    Four-index characterization: F ∈ M iff f_st - f_sq - f_pt + f_pq = 0
    for every pair of rows (s, p) and columns (t, q). O(m²n²).
    """
    rows = range(1, matrix.rows + 1)
    cols = range(1, matrix.cols + 1)
    f = matrix.entry
    return all(
        f(s, t) - f(s, q) - f(p, t) + f(p, q) == 0 for s, p in product(rows, rows) for t, q in product(cols, cols)
    )


# =============================================================================
# Wedderburn rank reduction
# =============================================================================


def wedderburn_step(c_k: GameMatrix, x: Sequence[Fraction], y: Sequence[Fraction]) -> GameMatrix:
    """
    C_{k+1} = C_k - w1⁻¹ C_k x yᵀ C_k with w1 = yᵀ C_k x.

    The result has rank exactly one less than C_k.

    Raises:
        PreconditionError: w1 = 0 (the rank would not drop).
    """
    if len(x) != c_k.cols or len(y) != c_k.rows:
        raise DimensionError(f"x of length {len(x)}, y of length {len(y)} for a {c_k.rows}x{c_k.cols} matrix")
    cx = c_k.matvec(x)
    w1 = dot(y, cx)
    if w1 == 0:
        raise PreconditionError("yᵀ C x is zero; the Wedderburn step needs a nonzero pivot")
    ytc = c_k.vecmat(y)
    return c_k - GameMatrix.outer([value / w1 for value in cx], ytc)


def wedderburn_decompose(matrix: GameMatrix) -> list[GameMatrix]:
    """
    Split C into rank(C) rank-one terms W_k with C = Σ W_k exactly.

    Each step uses x = e_c, y = e_r at the first nonzero entry (r, c) in
    row-major order, i.e. a nonzero row and a nonzero column of C_k.
    """
    terms: list[GameMatrix] = []
    current = matrix
    while True:
        pivot = next(((r, c) for r, c, value in current.iter_entries() if value != 0), None)
        if pivot is None:
            break
        r, c = pivot
        after = wedderburn_step(current, unit_vector(current.cols, c), unit_vector(current.rows, r))
        terms.append(current - after)
        current = after
    logger.debug("wedderburn decomposition produced %d rank-one terms", len(terms))
    return terms


def balanced_value(w: Sequence[Fraction], matrix: GameMatrix, z: Sequence[Fraction]) -> Fraction:
    """wᵀ F z for a balanced pair; rejects unbalanced vectors."""
    if not is_balanced(w, z):
        raise PreconditionError("w and z must each sum to zero")
    return bilinear_form(w, matrix, z)
