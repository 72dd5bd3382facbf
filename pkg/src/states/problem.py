"""
Problem Files

Self-describing YAML problem documents: the variables, the hypersurface f,
the vector field X, computation options and optional expected values used
by the corpus runner.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.core.errors import InputError, ProblemFileError
from src.core.parser import VARIABLE_NAME, parse_poly, parse_vector_field
from src.core.polynomial import Polynomial, VectorField
from src.utils.helper import load_yaml_document


def _rational_text(value) -> Optional[str]:
    if value is None:
        return None
    if isinstance(value, bool):
        raise ValueError("expected an exact rational, got a boolean")
    if isinstance(value, float):
        raise ValueError(f"{value} is a float; write rationals as exact p/q strings")
    try:
        return str(Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"'{value}' is not an exact rational of the form p/q") from exc


class OracleOptions(BaseModel):
    """Which definition-based validators run alongside the formulas."""

    degree: bool = Field(False, description="Compare elk with the certified topological degree")
    curve_gsv: bool = Field(False, description="Compare gsv_plus/gsv_minus with the fiber-smoothing oracle (two variables)")


class ProblemOptions(BaseModel):
    order: Literal["local", "global"] = Field("local", description="Monomial order of the quotient algebras")
    variant: Optional[Literal["reduced", "as-published"]] = Field(
        None, description="Odd-case formula variant; settings.default_variant when omitted"
    )
    oracle: OracleOptions = Field(default_factory=OracleOptions)
    box_radius: Optional[str] = Field(None, description="Half-width of the oracle box or disk, exact p/q")
    epsilon: Optional[str] = Field(None, description="Magnitude of the smoothing level for curve_gsv, exact p/q")

    @field_validator("box_radius", "epsilon", mode="before")
    @classmethod
    def _exact(cls, value):
        text = _rational_text(value)
        if text is not None and Fraction(text) <= 0:
            raise ValueError("must be positive")
        return text


class Expectations(BaseModel):
    """Expected values checked by `validate`; omitted entries are not compared."""

    elk: Optional[int] = None
    gsv_complex: Optional[int] = None
    gsv_plus: Optional[int] = None
    gsv_minus: Optional[int] = None
    chi_plus: Optional[int] = None
    chi_minus: Optional[int] = None
    dim_a: Optional[int] = None
    dim_b: Optional[int] = None
    sigma: Optional[list[int]] = None
    depth: Optional[int] = None
    error: Optional[str] = Field(None, description="Name of the error class the problem must raise")

    def items(self) -> list[tuple[str, object]]:
        return [(k, v) for k, v in self.model_dump().items() if v is not None and k != "error"]


class ProblemFile(BaseModel):
    """One problem: variables, optional f, optional X, options and expectations."""

    name: str = Field("", description="Display name; the file stem when empty")
    variables: list[str] = Field(description="Ordered variable names x_0..x_n")
    f: Optional[str] = Field(None, description="Hypersurface equation")
    X: Optional[list[str]] = Field(None, description="Vector field components, one per variable")
    options: ProblemOptions = Field(default_factory=ProblemOptions)
    expected: Expectations = Field(default_factory=Expectations)

    @field_validator("variables")
    @classmethod
    def _valid_names(cls, value: list[str]) -> list[str]:
        if not value:
            raise ValueError("at least one variable is required")
        for name in value:
            if not VARIABLE_NAME.match(name):
                raise ValueError(f"'{name}' is not a valid variable name")
        if len(set(value)) != len(value):
            raise ValueError("variable names must be distinct")
        return value

    @field_validator("f", mode="before")
    @classmethod
    def _f_as_text(cls, value):
        return None if value is None else str(value)

    @field_validator("X", mode="before")
    @classmethod
    def _x_as_text(cls, value):
        return None if value is None else [str(v) for v in value]

    @model_validator(mode="after")
    def _consistent(self) -> "ProblemFile":
        if self.f is None and self.X is None:
            raise ValueError("a problem needs f, X or both")
        if self.X is not None and len(self.X) != len(self.variables):
            raise ValueError(
                f"X has {len(self.X)} components but there are {len(self.variables)} variables"
            )
        return self

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ProblemFile":
        """Read and validate a problem file.

        Raises:
            ProblemFileError: unreadable file, invalid YAML or schema violation
        """
        path = Path(path)
        document = load_yaml_document(path)
        try:
            problem = cls.model_validate(document)
        except ValidationError as exc:
            raise ProblemFileError(f"{path}: {exc}") from exc
        if not problem.name:
            problem = problem.model_copy(update={"name": path.stem})
        return problem

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def polynomial(self) -> Optional[Polynomial]:
        return None if self.f is None else parse_poly(self.f, self.variables)

    def field(self) -> Optional[VectorField]:
        return None if self.X is None else parse_vector_field(self.X, self.variables)

    def with_overrides(self, **options) -> "ProblemFile":
        """Copy with command-line overrides applied to the options; None values are ignored."""
        updates = {k: v for k, v in options.items() if v is not None}
        if not updates:
            return self
        try:
            merged = ProblemOptions.model_validate({**self.options.model_dump(), **updates})
        except ValidationError as exc:
            raise InputError(f"Invalid option override: {exc}") from exc
        return self.model_copy(update={"options": merged})

    class Config:
        extra = "forbid"
