import pytest
import sympy
from hypothesis import given, settings

from conftest import XY, XYZ, polynomials
from src.core.algebra import build_algebra
from src.core.errors import BudgetExceededError, InfiniteDimensionalError, UnitIdealError
from src.core.parser import parse_poly
from src.core.sbasis import (
    MonomialOrder,
    normal_form,
    standard_basis,
    standard_monomials,
    weak_normal_form,
)


def _gens(texts, variables=XY):
    return [parse_poly(t, variables) for t in texts]


def _sympy_leading_monomials(texts, variables):
    symbols = sympy.symbols(variables)
    exprs = [sympy.parse_expr(t.replace("^", "**"), local_dict=dict(zip(variables, symbols))) for t in texts]
    basis = sympy.groebner(exprs, *symbols, order="grevlex")
    return {sympy.Poly(g, *symbols).monoms(order="grevlex")[0] for g in basis.exprs}


# ============================================================================
# GLOBAL ORDER AGAINST SYMPY
# ============================================================================

@pytest.mark.parametrize(
    "texts, variables",
    [
        (["x^2 - y", "y^2 - x"], XY),
        (["x^2 - y", "x*y - 1"], XY),
        (["x*y", "x^2 - y^2"], XY),
        (["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], XY),
        (["x^2 + y^2 - 1", "x - y"], XY),
        (["x^2*y - z", "y^2 - x*z", "z^2 - x"], XYZ),
        (["x + y + z", "x*y + y*z + x*z", "x*y*z - 1"], XYZ),
    ],
)
def test_global_leading_monomials_match_sympy(texts, variables):
    basis = standard_basis(_gens(texts, variables), MonomialOrder.global_(len(variables)))
    assert set(basis.leading_monomials) == _sympy_leading_monomials(texts, variables)


def test_global_quotient_dimension_matches_sympy_staircase():
    texts = ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]
    A = build_algebra(_gens(texts), MonomialOrder.global_(2))
    leads = _sympy_leading_monomials(texts, XY)
    count = sum(
        1
        for i in range(10)
        for j in range(10)
        if not any(i >= a and j >= b for a, b in leads)
    )
    assert A.dimension == count == 3


# ============================================================================
# LOCAL ORDER
# ============================================================================

@pytest.mark.parametrize(
    "f, mu",
    [
        ("x^2 + y^2", 1),
        ("x^3 + y^2", 2),
        ("x^5 + y^2", 4),
        ("x^2*y + y^3", 4),
        ("x^2*y + y^4", 5),
        ("x^3 + y^4", 6),
        ("x^3 + x*y^3", 7),
        ("x^3 + y^5", 8),
    ],
)
def test_milnor_numbers_of_simple_singularities(f, mu):
    p = parse_poly(f, XY)
    A = build_algebra([p.diff(0), p.diff(1)])
    assert A.dimension == mu


def test_local_algebra_ignores_zeros_away_from_origin():
    gens = _gens(["2*x + 3*x^2", "y"])
    assert build_algebra(gens).dimension == 1
    assert build_algebra(gens, MonomialOrder.global_(2)).dimension == 2


def test_weak_normal_form_decides_local_membership(poly):
    order = MonomialOrder.local(2)
    unit_multiple = [poly("x^2 + x^3")]
    assert weak_normal_form(poly("x^2"), unit_multiple, order).is_zero
    assert not weak_normal_form(poly("x^2"), unit_multiple, MonomialOrder.global_(2)).is_zero


def test_socle_monomial_staircase():
    basis = standard_basis(_gens(["x^2", "y^3"]), MonomialOrder.local(2))
    assert standard_monomials(basis) == [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]


def test_unit_ideal_is_rejected():
    with pytest.raises(UnitIdealError):
        build_algebra(_gens(["x + 1", "y"]))


def test_non_isolated_zero_is_rejected():
    with pytest.raises(InfiniteDimensionalError):
        build_algebra(_gens(["x*y", "x^2"]))


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        standard_basis(_gens(["x^2 - y", "x*y - 1"]), MonomialOrder.global_(2), budget=0)


def test_order_names():
    assert MonomialOrder.from_name("local", 2).is_local
    assert not MonomialOrder.from_name("global", 2).is_local


# ============================================================================
# NORMAL FORM PROPERTIES
# ============================================================================

_LOCAL = standard_basis(_gens(["3*x^2", "4*y^3"]), MonomialOrder.local(2))
_LOCAL_MIXED = standard_basis(_gens(["3*x^2 + y^3", "3*x*y^2 + x"]), MonomialOrder.local(2))
_GLOBAL = standard_basis(_gens(["x^2 - y", "y^2 - x"]), MonomialOrder.global_(2))


@pytest.mark.parametrize("basis", [_LOCAL, _LOCAL_MIXED, _GLOBAL], ids=["monomial", "mixed", "global"])
@settings(max_examples=200, deadline=None)
@given(p=polynomials(2, max_degree=4))
def test_normal_form_is_idempotent(basis, p):
    reduced = normal_form(p, basis)
    assert normal_form(reduced, basis) == reduced
    staircase = set(standard_monomials(basis))
    assert all(m in staircase for m, _ in reduced.items())


@pytest.mark.parametrize("basis", [_LOCAL, _LOCAL_MIXED, _GLOBAL], ids=["monomial", "mixed", "global"])
@settings(max_examples=200, deadline=None)
@given(p=polynomials(2, max_degree=4), q=polynomials(2, max_degree=4))
def test_normal_form_is_linear(basis, p, q):
    assert normal_form(2 * p - q, basis) == normal_form(p, basis).scale(2) - normal_form(q, basis)


@settings(max_examples=200, deadline=None)
@given(p=polynomials(2, max_degree=3), g=polynomials(2, max_degree=2))
def test_ideal_members_reduce_to_zero(p, g):
    member = p * parse_poly("3*x^2", XY) + g * parse_poly("4*y^3", XY)
    assert normal_form(member, _LOCAL).is_zero
