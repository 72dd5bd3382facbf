"""
Quotient Algebras

Finite-dimensional local quotient algebras O/I as concrete linear-algebra
objects: coordinates over the standard-monomial basis, multiplication
matrices, annihilators, principal ideals, socles and further quotients.
Exact linear algebra is delegated to sympy matrices over the rationals.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from sympy import ImmutableMatrix, Matrix, Rational, zeros

from src.core.calculus import cofactor, gradient
from src.core.polynomial import Monomial, Polynomial, VectorField
from src.core.sbasis import MonomialOrder, StandardBasis, normal_form, standard_basis, standard_monomials

logger = logging.getLogger(__name__)


def to_rational(value) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return Rational(value)


def to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def solve_particular(M: Matrix, target: Matrix) -> Optional[Matrix]:
    """Solution of M x = target with every free variable set to zero, or None."""
    if M.cols == 0:
        return zeros(0, 1) if all(v == 0 for v in target) else None
    reduced, pivots = M.row_join(target).rref()
    if M.cols in pivots:
        return None
    solution = zeros(M.cols, 1)
    for row, col in enumerate(pivots):
        solution[col, 0] = reduced[row, M.cols]
    return solution


# ============================================================================
# SUBSPACES
# ============================================================================

@dataclass(frozen=True)
class Subspace:
    """Linear subspace of an algebra, stored in canonical reduced echelon form."""

    ambient_dim: int
    vectors: tuple[tuple[Rational, ...], ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [[to_rational(x) for x in v] for v in vectors]
        if not rows:
            return cls(ambient_dim, ())
        if any(len(row) != ambient_dim for row in rows):
            raise ValueError(f"Spanning vectors must have length {ambient_dim}")
        reduced, pivots = Matrix(rows).rref()
        return cls(ambient_dim, tuple(tuple(reduced.row(i)) for i in range(len(pivots))))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(ambient_dim, Matrix.eye(ambient_dim).tolist())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def is_zero(self) -> bool:
        return not self.vectors

    def matrix(self) -> Matrix:
        """Basis vectors as the columns of an ambient_dim x dim matrix."""
        if not self.vectors:
            return zeros(self.ambient_dim, 0)
        return Matrix(self.vectors).T

    def contains_vector(self, vector: Sequence) -> bool:
        vector = [to_rational(x) for x in vector]
        if all(x == 0 for x in vector):
            return True
        if not self.vectors:
            return False
        return Matrix(list(self.vectors) + [vector]).rank() == self.dim

    def contains(self, other: "Subspace") -> bool:
        if other.is_zero:
            return True
        if self.is_zero:
            return False
        return Matrix(list(self.vectors) + list(other.vectors)).rank() == self.dim

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("Subspaces live in different ambient spaces")
        if self.is_zero or other.is_zero:
            return Subspace.zero(self.ambient_dim)
        U, W = self.matrix(), other.matrix()
        kernel = U.row_join(-W).nullspace()
        return Subspace.span(self.ambient_dim, [U * v[: self.dim, :] for v in kernel])

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in v] for v in self.vectors]


# ============================================================================
# ALGEBRA
# ============================================================================

@dataclass(frozen=True)
class AlgebraElement:
    """Coordinate vector over the standard-monomial basis of a QuotientAlgebra."""

    coords: tuple[Rational, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def column(self) -> Matrix:
        return Matrix(len(self.coords), 1, list(self.coords))


class QuotientAlgebra:
    """Finite-dimensional quotient O/I with a fixed standard-monomial basis."""

    def __init__(self, basis: StandardBasis):
        self.standard_basis = basis
        self.order = basis.order
        self.nvars = basis.nvars
        self.monomials: tuple[Monomial, ...] = tuple(standard_monomials(basis))
        self.dimension = len(self.monomials)
        self._index = {m: i for i, m in enumerate(self.monomials)}
        self._monomial_coords: dict[Monomial, tuple[Rational, ...]] = {}
        self._mult_cache: dict[Polynomial, ImmutableMatrix] = {}

    def __repr__(self) -> str:
        return f"QuotientAlgebra(dim={self.dimension}, order={self.order.kind.value})"

    def basis_polynomial(self, index: int) -> Polynomial:
        return Polynomial.monomial(self.monomials[index])

    def _coords_of_monomial(self, mon: Monomial) -> tuple[Rational, ...]:
        cached = self._monomial_coords.get(mon)
        if cached is not None:
            return cached
        coords = [Rational(0)] * self.dimension
        bound = self.standard_basis.truncation_degree
        if not (self.order.is_local and bound is not None and sum(mon) >= bound):
            reduced = normal_form(Polynomial.monomial(mon), self.standard_basis)
            for m, c in reduced.items():
                coords[self._index[m]] = to_rational(c)
        result = tuple(coords)
        self._monomial_coords[mon] = result
        return result

    def coords(self, p: Polynomial) -> tuple[Rational, ...]:
        """Coordinates of the class of p."""
        if p.nvars != self.nvars:
            raise ValueError("Polynomial and algebra use different variable counts")
        total = [Rational(0)] * self.dimension
        for mon, coeff in p.items():
            c = to_rational(coeff)
            for k, v in enumerate(self._coords_of_monomial(mon)):
                if v != 0:
                    total[k] += c * v
        return tuple(total)

    def element(self, p: Polynomial) -> AlgebraElement:
        return AlgebraElement(self.coords(p))

    def lift(self, coords: Sequence) -> Polynomial:
        """Polynomial supported on standard monomials with the given coordinates."""
        return Polynomial(
            self.nvars,
            {m: to_fraction(c) for m, c in zip(self.monomials, coords) if c != 0},
        )

    def mult_matrix(self, p: Polynomial) -> ImmutableMatrix:
        """Matrix of b -> NF(p * b); column j holds the coordinates of p * m_j."""
        cached = self._mult_cache.get(p)
        if cached is not None:
            return cached
        columns = [self.coords(p.mul_term(m, 1)) for m in self.monomials]
        matrix = ImmutableMatrix(self.dimension, self.dimension, lambda i, j: columns[j][i])
        self._mult_cache[p] = matrix
        return matrix

    def element_matrix(self, element: AlgebraElement) -> ImmutableMatrix:
        return self.mult_matrix(self.lift(element.coords))

    def variable_matrices(self) -> list[ImmutableMatrix]:
        return [self.mult_matrix(Polynomial.variable(i, self.nvars)) for i in range(self.nvars)]


def build_algebra(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> QuotientAlgebra:
    """Quotient of the local ring (or polynomial ring for a global order) by gens.

    Raises:
        InfiniteDimensionalError: the quotient is not finite dimensional
        UnitIdealError: the generators do not vanish at the origin
    """
    if not gens:
        raise ValueError("build_algebra needs at least one generator")
    order = order or MonomialOrder.local(gens[0].nvars)
    algebra = QuotientAlgebra(standard_basis(gens, order))
    logger.debug(f"Built {algebra!r} from {len(gens)} generators")
    return algebra


# ============================================================================
# SUBSPACE OPERATIONS
# ============================================================================

def annihilator(A: QuotientAlgebra, h: Polynomial) -> Subspace:
    """Ann(h) = {g : g h = 0}, the kernel of the multiplication matrix of h."""
    return Subspace.span(A.dimension, A.mult_matrix(h).nullspace())


def ideal_image(A: QuotientAlgebra, p: Polynomial, power: int) -> Subspace:
    """The principal ideal (p^power) as a subspace; power 0 gives the full algebra."""
    if power < 0:
        raise ValueError("power must be non-negative")
    if power == 0:
        return Subspace.full(A.dimension)
    matrix = A.mult_matrix(p) ** power
    return Subspace.span(A.dimension, matrix.columnspace())


def principal_ideal(A: QuotientAlgebra, p: Polynomial) -> Subspace:
    return ideal_image(A, p, 1)


def socle(A: QuotientAlgebra) -> Subspace:
    """Annihilator of the maximal ideal: common kernel of multiplication by every variable."""
    stacked = Matrix.vstack(*A.variable_matrices())
    return Subspace.span(A.dimension, stacked.nullspace())


def quotient_dim(A: QuotientAlgebra, p: Polynomial) -> int:
    """dim A/(p) = dim A - rank of multiplication by p."""
    return A.dimension - A.mult_matrix(p).rank()


def is_ideal(A: QuotientAlgebra, space: Subspace) -> bool:
    """True when the subspace is closed under multiplication by every variable."""
    for matrix in A.variable_matrices():
        for vector in space.vectors:
            image = matrix * Matrix(len(vector), 1, list(vector))
            if not space.contains_vector(list(image)):
                return False
    return True


# ============================================================================
# ANNIHILATOR TRANSPORT
# ============================================================================

@dataclass(frozen=True)
class AnnihilatorTransport:
    """Linear relation g -> k with g h = f k between Ann_B(h) and Ann_A(f)."""

    graph: Subspace  # inside B (+) A
    domain: Subspace  # projection to B
    image: Subspace  # projection to A
    expected_domain: Subspace  # Ann_B(h)
    expected_image: Subspace  # Ann_A(f)
    dim_b: int
    dim_a: int

    @property
    def is_function(self) -> bool:
        return self.graph.dim == self.domain.dim

    @property
    def is_injective(self) -> bool:
        return self.graph.dim == self.image.dim

    @property
    def is_bijection(self) -> bool:
        return (
            self.is_function
            and self.is_injective
            and self.domain == self.expected_domain
            and self.image == self.expected_image
        )

    def _solve(self, vector: Sequence, forward: bool) -> tuple[Rational, ...]:
        graph = self.graph.matrix()
        top, bottom = graph[: self.dim_b, :], graph[self.dim_b:, :]
        source, target = (top, bottom) if forward else (bottom, top)
        rhs = Matrix(len(vector), 1, [to_rational(x) for x in vector])
        weights = solve_particular(source, rhs)
        if weights is None:
            raise ValueError("Vector lies outside the transport's domain")
        return tuple(target * weights)

    def apply(self, g: Sequence) -> tuple[Rational, ...]:
        """Image in A of an element of Ann_B(h) given by coordinates."""
        return self._solve(g, forward=True)

    def inverse(self, k: Sequence) -> tuple[Rational, ...]:
        return self._solve(k, forward=False)


def annihilator_transport(f: Polynomial, X: VectorField) -> AnnihilatorTransport:
    """Realize g -> k with g h = f k for a field X tangent to f.

    The relation is solved in the finite algebra O/(I_A * I_B), whose zero set is
    the origin, and then projected to B = O/I_B and A = O/I_A.
    """
    h = cofactor(X, f)
    partials = gradient(f)
    A = build_algebra(partials)
    B = build_algebra(list(X.components))
    products = [p * x for p in partials for x in X if not (p * x).is_zero]
    E = build_algebra(products)

    system = E.mult_matrix(h).row_join(-E.mult_matrix(f))
    to_b = Matrix([B.coords(E.basis_polynomial(k)) for k in range(E.dimension)]).T
    to_a = Matrix([A.coords(E.basis_polynomial(k)) for k in range(E.dimension)]).T
    pairs = []
    for solution in system.nullspace():
        g = to_b * solution[: E.dimension, :]
        k = to_a * solution[E.dimension:, :]
        pairs.append(list(g) + list(k))
    graph = Subspace.span(B.dimension + A.dimension, pairs)
    domain = Subspace.span(B.dimension, [v[: B.dimension] for v in graph.vectors])
    image = Subspace.span(A.dimension, [v[B.dimension:] for v in graph.vectors])
    logger.debug(
        f"Annihilator transport: dim E = {E.dimension}, graph {graph.dim}, "
        f"domain {domain.dim}, image {image.dim}"
    )
    return AnnihilatorTransport(
        graph=graph,
        domain=domain,
        image=image,
        expected_domain=annihilator(B, h),
        expected_image=annihilator(A, f),
        dim_b=B.dimension,
        dim_a=A.dimension,
    )
