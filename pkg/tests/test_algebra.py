import pytest
from hypothesis import given, settings
from sympy import Matrix

from conftest import XY, XYZ, polynomials
from src.core.algebra import (
    Subspace,
    annihilator,
    annihilator_transport,
    build_algebra,
    ideal_image,
    is_ideal,
    principal_ideal,
    quotient_dim,
    socle,
)
from src.core.indices import canonical_odd_field
from src.core.parser import parse_poly


@pytest.fixture
def monomial_algebra(poly):
    """O / (x^2, y^3) with basis 1, x, y, xy, y^2, xy^2."""
    return build_algebra([poly("x^2"), poly("y^3")])


def test_coordinates_and_lift(monomial_algebra, poly):
    A = monomial_algebra
    assert A.dimension == 6
    assert A.coords(poly("x*y^2 + 2*x^2 - y")) == (0, 0, -1, 0, 0, 1)
    assert A.lift(A.coords(poly("3 + x*y"))) == poly("3 + x*y")


def test_socle_is_spanned_by_the_top_monomial(monomial_algebra, poly):
    A = monomial_algebra
    S = socle(A)
    assert S.dim == 1
    assert A.lift(S.vectors[0]) == poly("x*y^2")


def test_annihilators(monomial_algebra, poly):
    A = monomial_algebra
    assert annihilator(A, poly("x")).dim == 3
    assert annihilator(A, poly("x*y")).dim == 4
    assert annihilator(A, poly("1 + x")).is_zero


def test_quotients_and_ideals(monomial_algebra, poly):
    A = monomial_algebra
    assert quotient_dim(A, poly("x")) == 3
    assert quotient_dim(A, poly("1 - y")) == 0
    assert is_ideal(A, principal_ideal(A, poly("y")))
    assert not is_ideal(A, Subspace.span(A.dimension, [A.coords(poly("1"))]))
    assert ideal_image(A, poly("y"), 0) == Subspace.full(6)
    assert ideal_image(A, poly("y"), 3).is_zero


def test_subspace_operations():
    U = Subspace.span(3, [[1, 0, 0], [0, 1, 0]])
    W = Subspace.span(3, [[0, 1, 0], [0, 0, 1]])
    assert U.intersect(W) == Subspace.span(3, [[0, 2, 0]])
    assert U.contains_vector([2, -1, 0])
    assert not U.contains_vector([0, 0, 1])
    assert Subspace.full(3).contains(U)
    assert not U.contains(W)
    assert Subspace.zero(3).is_zero


def test_non_gorenstein_socle(poly):
    A = build_algebra([poly("x^2"), poly("x*y^2"), poly("y^3")])
    assert A.dimension == 5
    assert socle(A).dim == 2


# ============================================================================
# MULTIPLICATION MATRICES
# ============================================================================

_ALGEBRAS = [
    build_algebra([parse_poly(t, XY) for t in ("x^2", "y^3")]),
    build_algebra([parse_poly(t, XY) for t in ("3*x^2", "4*y^3 + x")]),
    build_algebra([parse_poly(t, XY) for t in ("3*x^2 - 3*y^2", "-6*x*y")]),
]


@pytest.mark.parametrize("A", _ALGEBRAS, ids=["monomial", "a5", "d4"])
def test_variable_matrices_commute(A):
    Mx, My = A.variable_matrices()
    assert Mx * My == My * Mx


@pytest.mark.parametrize("A", _ALGEBRAS, ids=["monomial", "a5", "d4"])
@settings(max_examples=200, deadline=None)
@given(p=polynomials(2), q=polynomials(2))
def test_multiplication_is_a_representation(A, p, q):
    assert A.mult_matrix(p * q) == A.mult_matrix(p) * A.mult_matrix(q)
    assert A.mult_matrix(p) * A.mult_matrix(q) == A.mult_matrix(q) * A.mult_matrix(p)
    assert Matrix(A.coords(p * q)) == A.mult_matrix(p) * Matrix(A.coords(q))


# ============================================================================
# ANNIHILATOR TRANSPORT
# ============================================================================

@pytest.mark.parametrize(
    "f",
    [
        "x^2 + y^2 + z^2",
        "x^3 + y^2 + z^2",
        "x^4 + y^2 + z^2",
        "x^5 + y^2 + z^2",
        "x^6 + y^2 + z^2",
        "x^2 + y^2 - z^2",
        "x^3 - y^2 - z^2",
        "-x^4 + y^2 + z^2",
        "2*x^3 + 3*y^2 + z^2",
        "x^3 + x^4 + y^2 + z^2",
        "x^2 - 2*y^2 + 5*z^2",
    ],
)
def test_transport_is_a_bijection_for_the_odd_field(f):
    p = parse_poly(f, XYZ)
    transport = annihilator_transport(p, canonical_odd_field(p))
    assert transport.is_bijection
    assert transport.domain.dim == transport.image.dim
    for g in transport.domain.vectors:
        assert transport.inverse(transport.apply(g)) == tuple(g)
