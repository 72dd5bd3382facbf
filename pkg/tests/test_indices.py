from fractions import Fraction

import pytest

from conftest import XY, XYZ
from src.core.errors import NotTangentError, ParityError
from src.core.indices import (
    FormulaVariant,
    calibrate_variant,
    canonical_hamiltonian,
    canonical_odd_field,
    elk_index,
    euler_characteristics,
    flag,
    gsv_complex,
    gsv_real,
    gsv_real_terms,
    odd_complement_holds,
    sigma,
    smoothed_relative_multiplicity,
)
from src.core.parser import parse_poly, parse_vector_field


def _f(text, variables=XY):
    return parse_poly(text, variables)


def _X(texts, variables=XY):
    return parse_vector_field(texts, variables)


# ============================================================================
# POINCARE-HOPF INDEX
# ============================================================================

@pytest.mark.parametrize(
    "components, expected",
    [
        (["x", "y"], 1),
        (["x", "-y"], -1),
        (["x^2", "y"], 0),
        (["x^2 - y^2", "2*x*y"], 2),
        (["x^2 - y^2", "-2*x*y"], -2),
        (["x^2", "y^3"], 0),
        (["x^3", "y"], 1),
    ],
)
def test_elk_index_of_plane_fields(components, expected):
    assert elk_index(_X(components)) == expected


def test_elk_index_in_three_variables():
    assert elk_index(_X(["x", "y", "z"], XYZ)) == 1
    assert elk_index(_X(["2*x", "2*y", "-2*z"], XYZ)) == -1


# ============================================================================
# EVEN CASE
# ============================================================================

@pytest.mark.parametrize(
    "f, components, complex_index, real_index",
    [
        ("x^2 - y^2", ["x", "y"], 0, (2, 2)),
        ("x^3 - y^2", ["2*x", "3*y"], -1, (1, 1)),
        ("x^2 - y^2", ["-2*y", "-2*x"], 0, (0, 0)),
        ("x^3 - y^2", ["-2*y", "-3*x^2"], 0, (0, 0)),
        ("x^2 + y^2", ["2*y", "-2*x"], 0, (0, 0)),
    ],
)
def test_even_case_indices(f, components, complex_index, real_index):
    p, X = _f(f), _X(components)
    assert gsv_complex(p, X) == complex_index
    assert gsv_real(p, X) == real_index


@pytest.mark.parametrize("f", ["x^2 - y^2", "x^3 - y^2", "x^2 + y^2", "x^2*y + y^3", "x^3 + y^4"])
def test_hamiltonian_field_has_vanishing_indices(f):
    p = _f(f)
    X = canonical_hamiltonian(p)
    assert gsv_real(p, X) == (0, 0)
    assert gsv_complex(p, X) == 0


def test_even_case_terms_are_side_independent():
    terms = gsv_real_terms(_f("x^3 - y^2"), _X(["2*x", "3*y"]))
    assert terms.even
    assert terms.cofactor == 6
    assert terms.values(FormulaVariant.REDUCED) == terms.values(FormulaVariant.AS_PUBLISHED)


def test_not_tangent_field_is_rejected():
    with pytest.raises(NotTangentError):
        gsv_real(_f("x^2 + y^2"), _X(["1", "0"]))


# ============================================================================
# ODD CASE
# ============================================================================

def test_calibration_selects_the_reduced_variant():
    assert calibrate_variant() is FormulaVariant.REDUCED


@pytest.mark.parametrize(
    "f, variables, components, sigmas, real_index, complex_index",
    [
        ("x^2 + y^2 - z^2", XYZ, ["x", "y", "z"], (0, -1), (0, 2), 2),
        ("x^2 + y^2 + z^2", XYZ, ["x", "y", "z"], (0, 1), (2, 0), 2),
        ("x^2", ("x",), ["x"], (0, 1), (2, 0), 2),
        ("x^3", ("x",), ["x"], (0, 0), (1, 1), 3),
        ("x^3 + y^2 + z^2", XYZ, ["x^3 + y^2 + z^2", "2*z", "-2*y"], (0, 0), (1, 1), 3),
    ],
)
def test_odd_case_indices(f, variables, components, sigmas, real_index, complex_index):
    p, X = _f(f, variables), _X(components, variables)
    assert sigma(p).sigmas == sigmas
    assert gsv_real(p, X, FormulaVariant.REDUCED) == real_index
    assert gsv_complex(p, X) == complex_index


def test_as_published_variant_adds_the_hessian_term():
    p, X = _f("x^2 + y^2 - z^2", XYZ), _X(["x", "y", "z"], XYZ)
    terms = gsv_real_terms(p, X)
    assert terms.sgn_a_hess == -1
    assert terms.values(FormulaVariant.AS_PUBLISHED) == (-1, 1)
    assert terms.values(FormulaVariant.REDUCED) == (0, 2)


def test_sigma_vector_sums():
    s = sigma(_f("x^2 + y^2 - z^2", XYZ))
    assert (s.k_plus, s.k_minus) == (-1, 1)


def test_flag_of_a_quasihomogeneous_function():
    chain = flag(_f("x^3 + y^2 + z^2", XYZ))
    assert chain.depth == 1
    assert chain.dims == [2, 2, 0]
    assert chain.quotient_dims == [0, 0, 2]


_DEPTH_TWO = "x^4 + y^5 + x^2*y^3"


@pytest.mark.parametrize(
    "f, dims",
    [(_DEPTH_TWO, [12, 11, 1, 0]), ("x^5 + y^5 + x^3*y^3", [16, 15, 1, 0])],
)
def test_flag_of_a_non_quasihomogeneous_function(f, dims):
    chain = flag(_f(f))
    assert chain.depth == 2
    assert chain.dims == dims
    assert chain.quotient_dims == [0, 1, dims[0] - 1, dims[0]]


def test_sigma_beyond_the_first_flag_member():
    assert sigma(_f(_DEPTH_TWO)).sigmas == (-1, 0, -1)


def test_odd_case_with_a_depth_two_flag():
    p = _f(_DEPTH_TWO + " + z^2", XYZ)
    terms = gsv_real_terms(p, canonical_odd_field(p))
    assert terms.sigma.sigmas == (-1, 0, -1)
    assert (terms.sigma.k_plus, terms.sigma.k_minus) == (-1, -1)
    assert terms.sgn_b_h_j == 1
    assert terms.sgn_a_hess == 0
    assert terms.values(FormulaVariant.REDUCED) == (0, 0)
    assert terms.values(FormulaVariant.AS_PUBLISHED) == (0, 0)


def test_odd_complement_relation():
    assert odd_complement_holds(0, 2)
    assert odd_complement_holds(1, 1)
    assert not odd_complement_holds(2, 2)


# ============================================================================
# CANONICAL FIELDS
# ============================================================================

def test_canonical_fields_need_the_right_parity():
    with pytest.raises(ParityError):
        canonical_hamiltonian(_f("x^2 + y^2 + z^2", XYZ))
    with pytest.raises(ParityError):
        canonical_odd_field(_f("x^2 + y^2"))
    with pytest.raises(ParityError):
        canonical_odd_field(_f("x^2", ("x",)))


def test_odd_field_components():
    p = _f("x^3 + y^2 + z^2", XYZ)
    X = canonical_odd_field(p, Fraction(1, 10))
    assert X[0] == p - Fraction(1, 10)
    assert X[1] == _f("2*z", XYZ)
    assert X[2] == _f("-2*y", XYZ)


@pytest.mark.parametrize(
    "f, expected",
    [("x^2 + y^2 + z^2", 2), ("x^3 + y^2 + z^2", 3)],
)
@pytest.mark.parametrize("t", [Fraction(1, 10), Fraction(-1, 10)])
def test_smoothed_relative_multiplicity_is_conserved(f, expected, t):
    p = _f(f, XYZ)
    assert smoothed_relative_multiplicity(p, t) == expected
    assert gsv_complex(p, canonical_odd_field(p)) == expected


def test_smoothed_multiplicity_matches_complex_index():
    p = _f("x^3 + y^2 + z^2", XYZ)
    assert smoothed_relative_multiplicity(p, Fraction(1, 7)) == gsv_complex(p, canonical_odd_field(p))


def test_smoothed_multiplicity_counts_zeros_away_from_the_origin():
    # x^2 + x^3 = t has a third root near x = -1
    p = _f("x^2 + x^3 + y^2 + z^2", XYZ)
    assert smoothed_relative_multiplicity(p, Fraction(1, 10)) == 3
    assert gsv_complex(p, canonical_odd_field(p)) == 2


# ============================================================================
# EULER CHARACTERISTICS
# ============================================================================

@pytest.mark.parametrize(
    "f, variables, expected",
    [
        ("x^2 + y^2 - z^2", XYZ, (0, 2)),
        ("x^2 + y^2 + z^2", XYZ, (2, 0)),
        ("x^2", ("x",), (2, 0)),
        ("x^3 - y^2", XY, (1, 1)),
        ("x^2 - y^2", XY, (0, 0)),
    ],
)
def test_euler_characteristics(f, variables, expected):
    assert euler_characteristics(_f(f, variables)) == expected
