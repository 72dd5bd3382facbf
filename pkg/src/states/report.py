"""
Index Reports

Structured results of every command. All exact quantities are stored as
integers or `p/q` strings, so a report serialized to JSON parses back to an
equal report.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class Dimensions(BaseModel):
    dim_a: Optional[int] = Field(None, description="dim A, the Milnor number of f")
    dim_b: Optional[int] = Field(None, description="dim B, the multiplicity of the zero of X")
    dim_b_mod_f: Optional[int] = Field(None, description="dim B/(f)")
    dim_a_mod_f: Optional[int] = Field(None, description="dim A/(f)")
    dim_b_mod_h: Optional[int] = Field(None, description="dim B/(h)")
    dim_b_rel_h: Optional[int] = Field(None, description="dim B/Ann(h)")
    global_dim_a: Optional[int] = Field(None, description="dim of the global quotient by the partials of f")
    global_dim_b: Optional[int] = Field(None, description="dim of the global quotient by the components of X")


class Signatures(BaseModel):
    sgn_b_h_j: Optional[int] = Field(None, description="sgn(B, h, J)")
    sgn_a_h_hess: Optional[int] = Field(None, description="sgn(A, h, Hess f), even parity")
    sgn_a_hess: Optional[int] = Field(None, description="sgn(A, Hess f), odd parity")


class FlagReport(BaseModel):
    depth: int
    dims: list[int] = Field(description="dim K_0, ..., dim K_{depth+1}")
    quotient_dims: list[int] = Field(description="dim A/K_m for the same range")
    sigmas: list[int] = Field(description="sigma_0, ..., sigma_depth")
    k_plus: int
    k_minus: int


class Indices(BaseModel):
    elk: Optional[int] = None
    gsv_complex: Optional[int] = None
    gsv_plus: Optional[int] = None
    gsv_minus: Optional[int] = None


class VariantValues(BaseModel):
    variant: str
    gsv_plus: int
    gsv_minus: int


class GramReport(BaseModel):
    """A bilinear form of the computation; the matrix is kept only on request."""

    label: str
    size: int
    inertia: list[int] = Field(description="(n_plus, n_minus, n_zero)")
    signature: int
    matrix: Optional[list[list[str]]] = None


class AlgebraSummary(BaseModel):
    generators: list[str]
    order: str
    dimension: int
    monomials: list[str] = Field(description="Standard monomial basis")
    socle: list[str] = Field(description="Basis of the socle as polynomials")
    pairs_considered: int
    pairs_reduced: int


class OracleComparison(BaseModel):
    """An oracle value next to the formula value it validates."""

    name: str
    value: int
    method: str
    certified: bool
    expected: Optional[int] = None
    agrees: Optional[bool] = None
    effort: dict[str, int] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)


class IndexReport(BaseModel):
    """Everything a command computed for one problem."""

    command: str
    name: str = ""
    variables: list[str]
    parity: Optional[str] = Field(None, description="'even' or 'odd' by the number of variables")
    f: Optional[str] = None
    X: Optional[list[str]] = None
    cofactor: Optional[str] = Field(None, description="h with X(f) = f h")
    order: str = "local"
    dims: Dimensions = Field(default_factory=Dimensions)
    signatures: Signatures = Field(default_factory=Signatures)
    flag: Optional[FlagReport] = None
    indices: Indices = Field(default_factory=Indices)
    variant: Optional[str] = None
    variants: list[VariantValues] = Field(default_factory=list)
    euler: Optional[list[int]] = Field(None, description="(1 + Ind(grad f), 1 + Ind(-grad f))")
    algebra: Optional[AlgebraSummary] = None
    grams: list[GramReport] = Field(default_factory=list)
    oracles: list[OracleComparison] = Field(default_factory=list)
    annotations: list[str] = Field(default_factory=list)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "IndexReport":
        return cls.model_validate_json(text)


class ValidationRow(BaseModel):
    """Outcome of one corpus problem."""

    name: str
    path: str
    status: str = Field(description="'pass', 'fail' or 'error'")
    checked: int = 0
    mismatches: list[str] = Field(default_factory=list)
    error: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"
