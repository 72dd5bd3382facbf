"""
Engine Settings

Centralized budgets and defaults for the algebra engine, the oracles and the CLI.
Every field can be overridden through a GSV_-prefixed environment variable or a .env file.
"""

from fractions import Fraction

from pydantic import field_validator
from pydantic_settings import BaseSettings


class EngineSettings(BaseSettings):
    """Budgets and defaults shared by all commands."""

    # Standard-basis completion
    pair_budget: int = 100000  # Pair reductions before BudgetExceededError

    # Degree oracle
    degree_cell_budget: int = 20000  # Cell splits before the uncertified fallback
    box_radius: str = "1"  # Default box half-width, exact p/q
    box_shrink_limit: int = 20  # Halvings tried when the boundary meets a zero
    fallback_grid: int = 7  # Newton start points per axis for the fallback count

    # Curve oracle
    curve_samples: int = 2048  # Boundary circle samples when locating crossings
    curve_max_steps: int = 20000  # Predictor-corrector steps per traced arc

    # Index formulas
    default_variant: str = "reduced"  # "reduced" or "as-published"
    functional_trials: int = 20  # Random admissible functionals in independence checks

    # Runner
    parallel_workers: int = 4  # Process pool size for validate
    log_level: str = "WARNING"

    @field_validator("box_radius")
    @classmethod
    def _positive_radius(cls, value: str) -> str:
        if Fraction(value) <= 0:
            raise ValueError("box_radius must be positive")
        return value

    @field_validator("default_variant")
    @classmethod
    def _known_variant(cls, value: str) -> str:
        if value not in ("reduced", "as-published"):
            raise ValueError("default_variant must be 'reduced' or 'as-published'")
        return value

    class Config:
        env_prefix = "GSV_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"  # Ignore extra environment variables


# Global instance
settings = EngineSettings()
