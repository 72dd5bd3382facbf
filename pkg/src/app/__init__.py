"""Problem pipeline: from a problem file to an IndexReport."""

from .pipeline import IndexPipeline, compare_expectations, validate_problem

__all__ = [
    'IndexPipeline',
    'compare_expectations',
    'validate_problem',
]
