import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, eye

from conftest import XY, variables_for
from src.config.settings import settings as engine_settings
from src.core.algebra import AlgebraElement, annihilator, build_algebra
from src.core.calculus import hessian_det, jacobian_det
from src.core.errors import NotDivisibleError, NotGorensteinError, SocleZeroError
from src.core.forms import (
    choose_functional,
    divide_in_algebra,
    random_admissible_functional,
    relative_form,
    sgn_rel,
    signature,
)
from src.core.indices import (
    FormulaVariant,
    canonical_hamiltonian,
    canonical_odd_field,
    elk_index,
    field_algebra,
    flag,
    gsv_real,
    milnor_algebra,
    sigma_forms,
)
from src.core.parser import parse_poly, parse_vector_field
from src.core.polynomial import Polynomial


# ============================================================================
# INERTIA
# ============================================================================

@st.composite
def congruent_pairs(draw):
    """A symmetric integer matrix S and a unimodular P."""
    n = draw(st.integers(1, 4))
    entries = draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n))
    A = Matrix(n, n, entries)
    S = A + A.T
    lower, upper = eye(n), eye(n)
    for i in range(n):
        for j in range(i):
            lower[i, j] = draw(st.integers(-2, 2))
            upper[j, i] = draw(st.integers(-2, 2))
    return S, lower * upper


@settings(max_examples=200, deadline=None)
@given(congruent_pairs())
def test_inertia_is_invariant_under_congruence(pair):
    S, P = pair
    inertia = signature(S)
    assert signature(P.T * S * P) == inertia
    assert inertia.n_plus + inertia.n_minus == S.rank()


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[2, 0, 0], [0, -1, 0], [0, 0, 0]], (1, 1, 1)),
        ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], (2, 1, 0)),
        ([[1, 2], [2, 4]], (1, 0, 1)),
    ],
)
def test_inertia_examples(rows, expected):
    assert signature(Matrix(rows)).as_tuple() == expected


# ============================================================================
# RELATIVE FORMS
# ============================================================================

def test_relative_form_radical_is_the_annihilator(poly, field):
    X = field(["x^2", "y^3"])
    B = field_algebra(X)
    h = poly("x")
    form = relative_form(B, h, jacobian_det(X))
    assert form.radical == annihilator(B, h)
    assert form.gram.inertia.n_zero == 3


def test_non_gorenstein_algebra_is_rejected(poly):
    B = build_algebra([poly("x^2"), poly("x*y^2"), poly("y^3")])
    with pytest.raises(NotGorensteinError) as info:
        relative_form(B, poly("1"), poly("x*y"))
    assert info.value.socle_dim == 2


def test_functional_needs_a_nonzero_class(poly):
    B = build_algebra([poly("x^2"), poly("y^3")])
    with pytest.raises(SocleZeroError):
        choose_functional(B, poly("x^2"))


def test_canonical_functional_is_positive_on_the_socle(poly):
    B = build_algebra([poly("x^2"), poly("y^3")])
    J = poly("-6*x*y^2")
    L = choose_functional(B, J)
    assert L(B.coords(J)) > 0


# ============================================================================
# FUNCTIONAL INDEPENDENCE
# ============================================================================

_SINGULARITIES = [
    ("x^2 - y^2", ["x", "y"]),
    ("x^3 - y^2", ["2*x", "3*y"]),
    ("x^2 + y^4", ["2*x", "y"]),
    ("x^3 + y^3", ["x", "y"]),
    ("x^2*y + y^3", ["x", "y"]),
    ("x^2 - y^3", ["3*x", "2*y"]),
    ("x^4 - y^2", ["x", "2*y"]),
    ("x^2 - y^2", None),
    ("x^2 + y^2 - z^2", ["x", "y", "z"]),
    ("x^2 + y^2 + z^2", ["x", "y", "z"]),
    ("x^3 + y^2 + z^2", ["2*x", "3*y", "3*z"]),
    ("x^3 + y^2 + z^2", None),
    ("x^3", ["x"]),
    ("x^2", ["x"]),
    ("x^4", ["x"]),
]


def _problem(f_text, field_texts):
    variables = variables_for(3 if "z" in f_text else 2 if "y" in f_text else 1)
    f = parse_poly(f_text, variables)
    if field_texts is not None:
        return f, parse_vector_field(field_texts, variables)
    if len(variables) % 2 == 0:
        return f, canonical_hamiltonian(f)
    return f, canonical_odd_field(f)


@pytest.mark.parametrize("f_text, field_texts", _SINGULARITIES)
def test_indices_do_not_depend_on_the_functional(f_text, field_texts):
    f, X = _problem(f_text, field_texts)
    A, B = milnor_algebra(f), field_algebra(X)
    J, hess = jacobian_det(X), hessian_det(f)
    expected = gsv_real(f, X, FormulaVariant.REDUCED)
    expected_elk = elk_index(X)
    rng = np.random.default_rng(20240613)
    for _ in range(engine_settings.functional_trials):
        functional_b = random_admissible_functional(B, J, rng)
        functional_a = random_admissible_functional(A, hess, rng)
        assert gsv_real(f, X, FormulaVariant.REDUCED, functional_b, functional_a) == expected
        assert elk_index(X, functional_b) == expected_elk


def test_random_functional_is_admissible(poly):
    B = build_algebra([poly("x^2"), poly("y^3")])
    J = poly("x*y^2 - 5*y")
    rng = np.random.default_rng(1)
    for _ in range(20):
        assert random_admissible_functional(B, J, rng)(B.coords(J)) > 0


def test_sign_of_functional_fixes_the_orientation(poly, field):
    X = field(["x^3", "y"])
    B = field_algebra(X)
    J = jacobian_det(X)
    assert sgn_rel(B, poly("1"), J) == 1
    assert sgn_rel(B, poly("1"), -J) == -1


# ============================================================================
# DIVISION
# ============================================================================

_DIVISION_ALGEBRA = build_algebra([parse_poly("x^3", XY), parse_poly("y^2", XY)])

# Milnor algebra whose flag has two nonzero members, K_2 spanned by one class
_FLAG_F = parse_poly("x^4 + y^5 + x^2*y^3", XY)
_FLAG_A = milnor_algebra(_FLAG_F)
_FLAG = flag(_FLAG_F, _FLAG_A)
_FLAG_L = choose_functional(_FLAG_A, hessian_det(_FLAG_F))
_FLAG_ANN = annihilator(_FLAG_A, _FLAG_F)


def _product(A, u, v):
    return A.coords(A.lift(u) * A.lift(v))


@settings(max_examples=200, deadline=None)
@given(
    shift=st.lists(st.integers(-5, 5), min_size=_FLAG_ANN.dim, max_size=_FLAG_ANN.dim),
    a_scale=st.integers(-3, 3).filter(bool),
    b_scale=st.integers(-3, 3).filter(bool),
)
def test_flag_form_does_not_depend_on_the_chosen_quotient(shift, a_scale, b_scale):
    A, f, L = _FLAG_A, _FLAG_F, _FLAG_L
    [k] = _FLAG.subspaces[2].vectors
    a = tuple(a_scale * c for c in k)
    b = tuple(b_scale * c for c in k)
    u = divide_in_algebra(A, AlgebraElement(a), f, 1).coords
    other = tuple(
        c + sum(s * v[i] for s, v in zip(shift, _FLAG_ANN.vectors)) for i, c in enumerate(u)
    )
    assert A.coords(f * A.lift(other)) == a
    assert L(_product(A, u, b)) == L(_product(A, other, b))
    assert L(_product(A, other, a)) < 0


def test_flag_forms_are_symmetric():
    forms = sigma_forms(_FLAG_F, A=_FLAG_A, chain=_FLAG)
    assert [form.size for form in forms] == [12, 11, 1]
    for form in forms:
        assert form.matrix == form.matrix.T
    assert [form.inertia.signature for form in forms] == [-1, 0, -1]


def test_division_outside_the_image():
    A = _DIVISION_ALGEBRA
    with pytest.raises(NotDivisibleError):
        divide_in_algebra(A, A.element(Polynomial.constant(1, 2)), parse_poly("x", XY), 1)
