"""
Expression Parser

Recursive-descent parser for the polynomial grammar:

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | NAME | '(' expr ')'

NUMBER is an integer or a `p/q` rational literal. Juxtaposition is rejected.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from src.core.errors import ExpressionSyntaxError, NegativeExponentError, UnknownVariableError
from src.core.polynomial import Polynomial, VectorField

logger = logging.getLogger(__name__)

VARIABLE_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

_TOKEN_PATTERN = re.compile(
    r"""
    (?P<NUMBER>\d+(?:/\d+)?)
  | (?P<NAME>[a-zA-Z][a-zA-Z0-9_]*)
  | (?P<OP>[-+*^()])
  | (?P<SPACE>\s+)
  | (?P<MISMATCH>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    for match in _TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        if kind == "SPACE":
            continue
        if kind == "MISMATCH":
            raise ExpressionSyntaxError(
                f"Unexpected character '{match.group()}'", text, match.start()
            )
        tokens.append(Token(kind, match.group(), match.start()))
    tokens.append(Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = {name: i for i, name in enumerate(variables)}
        self.nvars = len(variables)
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: Token) -> ExpressionSyntaxError:
        return ExpressionSyntaxError(message, self.text, token.position)

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text:
            found = token.text or "end of input"
            raise self.error(f"Expected '{text}' but found '{found}'", token)
        return self.advance()

    def parse(self) -> Polynomial:
        if self.current.kind == "END":
            raise self.error("Empty expression", self.current)
        value = self.expr()
        if self.current.kind != "END":
            raise self.error(f"Expected an operator before '{self.current.text}'", self.current)
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.current.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.current.text == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self) -> Polynomial:
        if self.current.text == "-":
            self.advance()
            return -self.unary()
        if self.current.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.current.text != "^":
            return base
        caret = self.advance()
        token = self.current
        if token.text == "-":
            raise NegativeExponentError(token.position)
        if token.kind != "NUMBER" or "/" in token.text:
            raise self.error("Exponent must be a non-negative integer", token if token.kind != "END" else caret)
        self.advance()
        return base ** int(token.text)

    def atom(self) -> Polynomial:
        token = self.current
        if token.kind == "NUMBER":
            self.advance()
            numerator, _, denominator = token.text.partition("/")
            if denominator and int(denominator) == 0:
                raise self.error("Zero denominator in rational literal", token)
            value = Fraction(int(numerator), int(denominator) if denominator else 1)
            return Polynomial.constant(value, self.nvars)
        if token.kind == "NAME":
            self.advance()
            if token.text not in self.variables:
                raise UnknownVariableError(token.text, token.position)
            return Polynomial.variable(self.variables[token.text], self.nvars)
        if token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        found = token.text or "end of input"
        raise self.error(f"Unexpected '{found}'", token)


def check_variables(variables: Sequence[str]) -> None:
    if not variables:
        raise ValueError("At least one variable is required")
    for name in variables:
        if not VARIABLE_NAME.match(name):
            raise ValueError(f"Invalid variable name '{name}'")
    if len(set(variables)) != len(variables):
        raise ValueError(f"Duplicate variable names in {list(variables)}")


def parse_poly(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse an expression over the named variables into an expanded polynomial.

    Args:
        text: Expression such as "x^2 + 1/2*y"
        variables: Ordered variable names; position i is variable x_i

    Returns:
        The canonical sparse polynomial
    """
    check_variables(variables)
    poly = _Parser(text, variables).parse()
    logger.debug(f"Parsed '{text}' into {len(poly)} terms")
    return poly


def parse_vector_field(texts: Sequence[str], variables: Sequence[str]) -> VectorField:
    if len(texts) != len(variables):
        raise ValueError(
            f"Vector field has {len(texts)} components for {len(variables)} variables"
        )
    return VectorField(tuple(parse_poly(text, variables) for text in texts))
