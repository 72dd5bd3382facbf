"""
Engine Errors

Exception hierarchy shared by the algebra engine, the oracles and the CLI.
Each family carries the process exit code the CLI reports for it.
"""

from typing import Optional

from src.utils.constants import EXIT_INPUT_ERROR, EXIT_PRECONDITION


class EngineError(Exception):
    """Base class for every error raised by the engine."""

    exit_code: int = EXIT_INPUT_ERROR


# ============================================================================
# INPUT ERRORS (exit 1)
# ============================================================================

class InputError(EngineError):
    """Malformed user input: expressions, problem files, options."""

    exit_code = EXIT_INPUT_ERROR


class ExpressionSyntaxError(InputError):
    """Expression text does not follow the polynomial grammar."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


class UnknownVariableError(InputError):
    """Expression names a variable that the problem does not declare."""

    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"Unknown variable '{name}' at position {position}")


class NegativeExponentError(InputError):
    """Exponent is negative; only polynomial inputs are accepted."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(f"Negative exponent at position {position}")


class ProblemFileError(InputError):
    """Problem file could not be read or is inconsistent."""


# ============================================================================
# MATHEMATICAL PRECONDITION FAILURES (exit 2)
# ============================================================================

class PreconditionError(EngineError):
    """A mathematical precondition of an operation does not hold."""

    exit_code = EXIT_PRECONDITION


class NotTangentError(PreconditionError):
    """X(f) is not divisible by f."""

    def __init__(self, remainder, message: Optional[str] = None):
        self.remainder = remainder
        super().__init__(message or f"Vector field is not tangent: X(f) mod f = {remainder}")


class InfiniteDimensionalError(PreconditionError):
    """Quotient algebra is infinite dimensional (singularity not algebraically isolated)."""


class UnitIdealError(PreconditionError):
    """Generators do not vanish at the origin, the local algebra is zero."""


class NotGorensteinError(PreconditionError):
    """Socle of the algebra is not one dimensional."""

    def __init__(self, socle_dim: int):
        self.socle_dim = socle_dim
        super().__init__(f"Socle has dimension {socle_dim}, expected 1")


class RadicalMismatchError(PreconditionError):
    """Radical of the weighted form differs from the annihilator of the weight."""


class SocleZeroError(PreconditionError):
    """Class used to normalize the functional is zero in the algebra."""


class NotDivisibleError(PreconditionError):
    """Target element lies outside the image of the divisor power."""


class ParityError(PreconditionError):
    """Construction requires the other parity of the ambient dimension."""


class BudgetExceededError(PreconditionError):
    """Standard-basis completion exceeded its pair budget."""


class BoundaryZeroError(PreconditionError):
    """Vector field vanishes on the boundary of the box."""


class TracingFailureError(PreconditionError):
    """Numerical curve tracing did not converge."""


class NonTransversalBoundaryError(PreconditionError):
    """Fiber meets the boundary circle non-transversally."""


# ============================================================================
# ORACLE INTERNALS
# ============================================================================

class BudgetExhaustedError(EngineError):
    """Boundary subdivision ran out of budget; callers fall back to an uncertified count."""

    exit_code = EXIT_PRECONDITION
