"""
Bilinear Forms

Weighted ELK-style forms b, b' -> L(NF(b * b' * weight)) on quotient algebras,
their exact inertia by symmetric congruence diagonalization, the relative
signature sgn(B, h, J), and division by powers of an element inside an algebra.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from sympy import ImmutableMatrix, Matrix, Rational

from src.core.algebra import (
    AlgebraElement,
    QuotientAlgebra,
    Subspace,
    annihilator,
    socle,
    solve_particular,
    to_fraction,
)
from src.core.errors import NotDivisibleError, NotGorensteinError, RadicalMismatchError, SocleZeroError
from src.core.polynomial import Polynomial

logger = logging.getLogger(__name__)


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class Functional:
    """Linear map from the algebra to the rationals, one weight per basis monomial."""

    coeffs: tuple[Rational, ...]

    def __call__(self, coords: Sequence) -> Rational:
        return sum((w * c for w, c in zip(self.coeffs, coords)), Rational(0))

    def row(self) -> Matrix:
        return Matrix(1, len(self.coeffs), list(self.coeffs))


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)


@dataclass(frozen=True)
class GramForm:
    """Symmetric Gram matrix over an explicit basis, with its inertia."""

    matrix: ImmutableMatrix
    inertia: Inertia

    @classmethod
    def of(cls, matrix: Matrix) -> "GramForm":
        matrix = ImmutableMatrix(matrix)
        if matrix != matrix.T:
            raise ValueError("Gram matrix is not symmetric")
        return cls(matrix, signature(matrix))

    @property
    def size(self) -> int:
        return self.matrix.rows

    def to_strings(self) -> list[list[str]]:
        return [[str(self.matrix[i, j]) for j in range(self.size)] for i in range(self.size)]


@dataclass(frozen=True)
class RelativeForm:
    """The weighted form on the full algebra together with its verified radical."""

    functional: Functional
    gram: GramForm
    radical: Subspace

    @property
    def signature(self) -> int:
        return self.gram.inertia.signature


# ============================================================================
# FUNCTIONALS
# ============================================================================

def choose_functional(A: QuotientAlgebra, J: Polynomial) -> Functional:
    """Signed dual of the largest standard monomial occurring in NF(J).

    Raises:
        SocleZeroError: J is zero in the algebra
    """
    coords = A.coords(J)
    support = [k for k, c in enumerate(coords) if c != 0]
    if not support:
        raise SocleZeroError("The class used to normalize the functional is zero")
    k = support[-1]
    weights = [Rational(0)] * A.dimension
    weights[k] = Rational(1) if coords[k] > 0 else Rational(-1)
    return Functional(tuple(weights))


def random_admissible_functional(
    A: QuotientAlgebra, J: Polynomial, rng: np.random.Generator, spread: int = 5
) -> Functional:
    """Random integer functional L with L([J]) > 0."""
    coords = A.coords(J)
    if all(c == 0 for c in coords):
        raise SocleZeroError("The class used to normalize the functional is zero")
    while True:
        weights = [Rational(int(w)) for w in rng.integers(-spread, spread + 1, size=A.dimension)]
        value = sum((w * c for w, c in zip(weights, coords)), Rational(0))
        if value > 0:
            return Functional(tuple(weights))
        if value < 0:
            return Functional(tuple(-w for w in weights))


# ============================================================================
# GRAM MATRICES AND INERTIA
# ============================================================================

def weighted_matrix(A: QuotientAlgebra, L: Functional, weight: Polynomial) -> Matrix:
    """P with P[k, l] = L(NF(weight * m_k * m_l)) over the full monomial basis."""
    row = L.row() * A.mult_matrix(weight)
    return Matrix.vstack(
        *[row * A.mult_matrix(A.basis_polynomial(k)) for k in range(A.dimension)]
    )


def gram(A: QuotientAlgebra, L: Functional, weight: Polynomial, space: Subspace) -> GramForm:
    """Gram matrix of (b, b') -> L(NF(b * b' * weight)) over the basis of a subspace."""
    if space.is_zero:
        return GramForm.of(Matrix(0, 0, []))
    basis = space.matrix()
    return GramForm.of(basis.T * weighted_matrix(A, L, weight) * basis)


def signature(matrix: Matrix) -> Inertia:
    """Inertia of a symmetric rational matrix by exact congruence diagonalization."""
    size = matrix.rows
    a = [[to_fraction(matrix[i, j]) for j in range(size)] for i in range(size)]
    active = list(range(size))
    n_plus = n_minus = 0
    while active:
        pivot_index = next((i for i in active if a[i][i] != 0), None)
        if pivot_index is None:
            pair = next(
                ((i, j) for i in active for j in active if i < j and a[i][j] != 0), None
            )
            if pair is None:
                break
            i, j = pair
            # Row and column j added to i so that a[i][i] = 2 a[i][j]
            for t in range(size):
                a[i][t] += a[j][t]
            for t in range(size):
                a[t][i] += a[t][j]
            pivot_index = i
        pivot = a[pivot_index][pivot_index]
        if pivot > 0:
            n_plus += 1
        else:
            n_minus += 1
        active.remove(pivot_index)
        for i in active:
            if a[i][pivot_index] != 0:
                factor = a[i][pivot_index] / pivot
                for j in active:
                    a[i][j] -= factor * a[pivot_index][j]
                a[i][pivot_index] = Fraction(0)
        for j in active:
            a[pivot_index][j] = Fraction(0)
    return Inertia(n_plus, n_minus, size - n_plus - n_minus)


# ============================================================================
# RELATIVE SIGNATURE
# ============================================================================

def relative_form(
    B: QuotientAlgebra, h: Polynomial, J: Polynomial, functional: Optional[Functional] = None
) -> RelativeForm:
    """Weighted form L(b b' h) on B with its radical checked against Ann(h).

    Raises:
        NotGorensteinError: the socle of B is not one dimensional
        SocleZeroError: J is zero in B
        RadicalMismatchError: the radical of the form differs from Ann(h)
    """
    socle_dim = socle(B).dim
    if socle_dim != 1:
        raise NotGorensteinError(socle_dim)
    L = functional or choose_functional(B, J)
    if L(B.coords(J)) <= 0:
        raise ValueError("Functional must be positive on the class of J")
    form = gram(B, L, h, Subspace.full(B.dimension))
    radical = Subspace.span(B.dimension, form.matrix.nullspace())
    if radical != annihilator(B, h):
        raise RadicalMismatchError(
            f"Radical of the weighted form has dimension {radical.dim}, "
            f"the annihilator of the weight has dimension {annihilator(B, h).dim}"
        )
    logger.debug(f"Relative form on {B!r}: inertia {form.inertia.as_tuple()}")
    return RelativeForm(L, form, radical)


def sgn_rel(
    B: QuotientAlgebra, h: Polynomial, J: Polynomial, functional: Optional[Functional] = None
) -> int:
    """Relative signature sgn(B, h, J) = n_plus - n_minus of L(b b' h)."""
    return relative_form(B, h, J, functional).signature


# ============================================================================
# DIVISION
# ============================================================================

def divide_in_algebra(
    A: QuotientAlgebra, target: AlgebraElement, divisor: Polynomial, power: int
) -> AlgebraElement:
    """Some u with divisor^power * u = target; free echelon variables are set to zero.

    Raises:
        NotDivisibleError: target is outside the image of divisor^power
    """
    matrix = A.mult_matrix(divisor) ** power
    solution = solve_particular(Matrix(matrix), target.column())
    if solution is None:
        raise NotDivisibleError(f"Element is not divisible by the power {power} of the divisor")
    return AlgebraElement(tuple(solution))
