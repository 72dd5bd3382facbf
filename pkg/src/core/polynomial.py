"""
Sparse Polynomials

Exact-rational sparse multivariate polynomials and vector fields.
Values are immutable after construction and safe to share between threads
and worker processes.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterator, Mapping, Optional, Sequence, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


# ============================================================================
# MONOMIAL HELPERS
# ============================================================================

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when the monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def degrevlex_key(m: Monomial) -> tuple:
    """Sort key of the graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def graded_lex_key(m: Monomial) -> tuple:
    """Sort key of the graded lexicographic order used for rendering."""
    return (sum(m), m)


# ============================================================================
# POLYNOMIAL
# ============================================================================

class Polynomial:
    """Sparse polynomial with Fraction coefficients in a fixed number of variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mon, coeff in (terms or {}).items():
            mon = tuple(mon)
            if len(mon) != nvars:
                raise ValueError(f"Monomial {mon} does not have {nvars} exponents")
            if any(e < 0 for e in mon):
                raise ValueError(f"Monomial {mon} has a negative exponent")
            value = Fraction(coeff)
            if value:
                clean[mon] = clean.get(mon, Fraction(0)) + value
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "Polynomial":
        value = Fraction(value)
        return cls._wrap(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"Variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._wrap(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): coeff})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    @property
    def low_degree(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        return min((sum(m) for m in self._terms), default=-1)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, mon: Monomial) -> Fraction:
        return self._terms.get(tuple(mon), Fraction(0))

    def leading_term(self, key: Callable[[Monomial], tuple]) -> tuple[Monomial, Fraction]:
        """Largest term under the order given by a sort key."""
        if not self._terms:
            raise ValueError("Zero polynomial has no leading term")
        mon = max(self._terms, key=key)
        return mon, self._terms[mon]

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"Variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for mon, coeff in other._terms.items():
            value = terms.get(mon, 0) + coeff
            if value:
                terms[mon] = value
            else:
                terms.pop(mon, None)
        return Polynomial._wrap(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self.nvars)
        return Polynomial._wrap(self.nvars, {m: c * factor for m, c in self._terms.items()})

    def mul_term(self, mon: Monomial, coeff: Scalar) -> "Polynomial":
        """Multiply by the single term coeff * mon."""
        coeff = Fraction(coeff)
        if not coeff:
            return Polynomial.zero(self.nvars)
        return Polynomial._wrap(
            self.nvars, {mono_mul(m, mon): c * coeff for m, c in self._terms.items()}
        )

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mon = mono_mul(m1, m2)
                terms[mon] = terms.get(mon, 0) + c1 * c2
        return Polynomial._wrap(self.nvars, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __getstate__(self):
        return (self.nvars, self._terms)

    def __setstate__(self, state):
        self.nvars, self._terms = state
        self._hash = None

    # ------------------------------------------------------------------
    # Division
    # ------------------------------------------------------------------

    def divmod(
        self, divisor: "Polynomial", key: Callable[[Monomial], tuple] = degrevlex_key
    ) -> tuple["Polynomial", "Polynomial"]:
        """Multivariate division by a single divisor under a global order.

        Returns:
            (quotient, remainder) with self = quotient * divisor + remainder and no
            remainder term divisible by the leading monomial of the divisor.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial")
        lead, lead_coeff = divisor.leading_term(key)
        quotient: dict[Monomial, Fraction] = {}
        remainder: dict[Monomial, Fraction] = {}
        rest = dict(self._terms)
        while rest:
            mon = max(rest, key=key)
            coeff = rest[mon]
            if mono_divides(lead, mon):
                q_mon = mono_div(mon, lead)
                q_coeff = coeff / lead_coeff
                quotient[q_mon] = q_coeff
                for d_mon, d_coeff in divisor._terms.items():
                    target = mono_mul(q_mon, d_mon)
                    value = rest.get(target, 0) - q_coeff * d_coeff
                    if value:
                        rest[target] = value
                    else:
                        rest.pop(target, None)
            else:
                remainder[mon] = coeff
                del rest[mon]
        return Polynomial._wrap(self.nvars, quotient), Polynomial._wrap(self.nvars, remainder)

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero:
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return quotient

    # ------------------------------------------------------------------
    # Calculus and evaluation
    # ------------------------------------------------------------------

    def diff(self, index: int) -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for mon, coeff in self._terms.items():
            e = mon[index]
            if e:
                lowered = mon[:index] + (e - 1,) + mon[index + 1:]
                terms[lowered] = coeff * e
        return Polynomial._wrap(self.nvars, terms)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for mon, coeff in self._terms.items():
            value = coeff
            for x, e in zip(point, mon):
                if e:
                    value *= x ** e
            total += value
        return total

    def to_numpy(self) -> Callable:
        """Float evaluator accepting scalars or numpy arrays, one argument per variable."""
        compiled = [(float(c), m) for m, c in self._terms.items()]

        def evaluate(*coords):
            total = 0.0
            for coeff, mon in compiled:
                value = coeff
                for x, e in zip(coords, mon):
                    if e:
                        value = value * x ** e
                total = total + value
            return total

        return evaluate

    def taylor_shift(self, center: Sequence[Scalar]) -> "Polynomial":
        """Polynomial q with q(d) = self(center + d)."""
        center = [Fraction(c) for c in center]
        shifted = [Polynomial.variable(i, self.nvars) + c for i, c in enumerate(center)]
        powers: list[list[Polynomial]] = []
        for i in range(self.nvars):
            top = max((m[i] for m in self._terms), default=0)
            row = [Polynomial.constant(1, self.nvars)]
            for _ in range(top):
                row.append(row[-1] * shifted[i])
            powers.append(row)
        result = Polynomial.zero(self.nvars)
        for mon, coeff in self._terms.items():
            term = Polynomial.constant(coeff, self.nvars)
            for i, e in enumerate(mon):
                if e:
                    term = term * powers[i][e]
            result = result + term
        return result

    def truncate(self, bound: int) -> "Polynomial":
        """Drop every term of total degree >= bound."""
        return Polynomial._wrap(
            self.nvars, {m: c for m, c in self._terms.items() if sum(m) < bound}
        )

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        """Serialize with terms in descending graded-lex order and `p/q` coefficients."""
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        pieces = []
        for mon in sorted(self._terms, key=graded_lex_key, reverse=True):
            coeff = self._terms[mon]
            factors = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, mon) if e
            )
            if not factors:
                text = str(coeff)
            elif coeff == 1:
                text = factors
            elif coeff == -1:
                text = f"-{factors}"
            else:
                text = f"{coeff}*{factors}"
            pieces.append(text)
        rendered = pieces[0]
        for text in pieces[1:]:
            rendered += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
        return rendered

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"


# ============================================================================
# VECTOR FIELD
# ============================================================================

@dataclass(frozen=True)
class VectorField:
    """Polynomial vector field X = sum X^i d/dx_i."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise ValueError("Vector field needs at least one component")
        nvars = components[0].nvars
        if any(c.nvars != nvars for c in components):
            raise ValueError("Vector field components use different variable counts")

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Polynomial:
        return self.components[index]

    def __neg__(self) -> "VectorField":
        return VectorField(tuple(-c for c in self.components))

    def __add__(self, other: "VectorField") -> "VectorField":
        if len(other) != len(self):
            raise ValueError("Vector fields have different component counts")
        return VectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, factor: Scalar) -> "VectorField":
        return VectorField(tuple(c.scale(factor) for c in self.components))

    def apply(self, f: Polynomial) -> Polynomial:
        """Derivative of f along the field: sum X^i df/dx_i."""
        total = Polynomial.zero(f.nvars)
        for i, component in enumerate(self.components):
            total = total + component * f.diff(i)
        return total

    def render(self, names: Optional[Sequence[str]] = None) -> list[str]:
        return [c.render(names) for c in self.components]
