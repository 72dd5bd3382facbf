"""Definition-based validators for the index formulas."""

from .conservation import conservation_check, real_zeros, tangent_generators, trace_form_signature
from .curve import curve_gsv
from .degree import degree, local_degree, preimage_count
from .intervals import Box, certified_sign, fiber_side_sampled
from .verdict import OracleVerdict

__all__ = [
    'Box',
    'OracleVerdict',
    'certified_sign',
    'conservation_check',
    'curve_gsv',
    'degree',
    'fiber_side_sampled',
    'local_degree',
    'preimage_count',
    'real_zeros',
    'tangent_generators',
    'trace_form_signature',
]
