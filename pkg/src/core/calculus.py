"""
Calculus Helpers

Gradients, Jacobian and Hessian determinants over the polynomial ring,
and extraction of the tangency cofactor h with X(f) = f * h.
"""

import logging
from typing import Sequence

from src.core.errors import NotTangentError
from src.core.polynomial import Polynomial, VectorField

logger = logging.getLogger(__name__)

# Matrices up to this size are expanded by cofactors, larger ones by Bareiss elimination
COFACTOR_EXPANSION_LIMIT = 3


def gradient(f: Polynomial) -> list[Polynomial]:
    """Formal partial derivatives (f_0, ..., f_n)."""
    return [f.diff(i) for i in range(f.nvars)]


def _cofactor_expansion(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = Polynomial.zero(matrix[0][0].nvars)
    for col in range(size):
        entry = matrix[0][col]
        if entry.is_zero:
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = entry * _cofactor_expansion(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def _bareiss(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    rows = [list(row) for row in matrix]
    size = len(rows)
    nvars = rows[0][0].nvars
    sign = 1
    previous = Polynomial.constant(1, nvars)
    for k in range(size - 1):
        if rows[k][k].is_zero:
            swap = next((i for i in range(k + 1, size) if not rows[i][k].is_zero), None)
            if swap is None:
                return Polynomial.zero(nvars)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                numerator = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                rows[i][j] = numerator.exact_div(previous)
            rows[i][k] = Polynomial.zero(nvars)
        previous = pivot
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials."""
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("Determinant needs a non-empty square matrix")
    if size <= COFACTOR_EXPANSION_LIMIT:
        return _cofactor_expansion(matrix)
    return _bareiss(matrix)


def jacobian_matrix(X: VectorField) -> list[list[Polynomial]]:
    if len(X) != X.nvars:
        raise ValueError(f"Vector field has {len(X)} components in {X.nvars} variables")
    return [[component.diff(j) for j in range(X.nvars)] for component in X]


def jacobian_det(X: VectorField) -> Polynomial:
    """J = det(dX^i/dx_j)."""
    return determinant(jacobian_matrix(X))


def hessian_det(f: Polynomial) -> Polynomial:
    """Hess(f) = det(d^2 f / dx_i dx_j)."""
    first = gradient(f)
    return determinant([[fi.diff(j) for j in range(f.nvars)] for fi in first])


def cofactor(X: VectorField, f: Polynomial) -> Polynomial:
    """Cofactor h with X(f) = f * h.

    Raises:
        NotTangentError: X(f) is not divisible by f; the error carries the remainder
    """
    if f.is_zero:
        raise ValueError("Cofactor needs a nonzero polynomial")
    if len(X) != f.nvars:
        raise ValueError(f"Vector field has {len(X)} components, f has {f.nvars} variables")
    derivative = X.apply(f)
    quotient, remainder = derivative.divmod(f)
    if not remainder.is_zero:
        logger.debug(f"Tangency fails: remainder has {len(remainder)} terms")
        raise NotTangentError(remainder)
    return quotient
