"""Problem-file and report models."""

from .problem import Expectations, OracleOptions, ProblemFile, ProblemOptions
from .report import (
    AlgebraSummary,
    Dimensions,
    FlagReport,
    GramReport,
    IndexReport,
    Indices,
    OracleComparison,
    Signatures,
    ValidationRow,
    VariantValues,
)

__all__ = [
    'AlgebraSummary',
    'Dimensions',
    'Expectations',
    'FlagReport',
    'GramReport',
    'IndexReport',
    'Indices',
    'OracleComparison',
    'OracleOptions',
    'ProblemFile',
    'ProblemOptions',
    'Signatures',
    'ValidationRow',
    'VariantValues',
]
