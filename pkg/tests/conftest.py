import os

import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from src.core.parser import parse_poly, parse_vector_field
from src.core.polynomial import Polynomial

np.seterr(all="warn")

hypothesis.settings.register_profile("default", deadline=None, max_examples=50)
hypothesis.settings.register_profile("ci", deadline=None, max_examples=200, derandomize=True)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=5)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

XY = ("x", "y")
XYZ = ("x", "y", "z")


def variables_for(nvars: int) -> tuple[str, ...]:
    return {1: ("x",), 2: XY, 3: XYZ}[nvars]


def polynomials(nvars: int, max_degree: int = 3, max_terms: int = 4, bound: int = 4):
    """Sparse polynomials with small integer coefficients."""
    monomials = st.tuples(*[st.integers(0, max_degree)] * nvars).filter(lambda m: sum(m) <= max_degree)
    terms = st.dictionaries(monomials, st.integers(-bound, bound), max_size=max_terms)
    return terms.map(lambda t: Polynomial(nvars, t))


@pytest.fixture
def poly():
    def build(text: str, variables=XY) -> Polynomial:
        return parse_poly(text, variables)
    return build


@pytest.fixture
def field():
    def build(texts, variables=XY):
        return parse_vector_field(texts, variables)
    return build


@pytest.fixture
def write_problem(tmp_path):
    """Write a YAML problem document into a temporary corpus directory."""
    def write(name: str, body: str):
        path = tmp_path / f"{name}.yaml"
        path.write_text(body, encoding="utf-8")
        return path
    return write
