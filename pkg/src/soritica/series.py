"""Exact arithmetic over finite formal series in a positive infinitesimal.

The symbol ``e`` denotes a fixed positive infinitesimal.  A series is a
finite sum of terms ``c * e^q`` with rational coefficient ``c`` and
rational exponent ``q``.  Because ``e`` is infinitesimal, terms with
*smaller* exponents dominate: a series with negative leading exponent is
infinitely large, one with positive leading exponent is infinitely small.
All values are immutable and all operations are pure.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Tuple

__all__ = [
    "EpsSeries",
    "ParseError",
    "ZERO",
    "ONE",
    "EPS",
    "OMEGA",
    "INFINITE_VALUATION",
    "parse_series",
]

#: Sentinel valuation of the zero series (larger than every rational).
INFINITE_VALUATION = math.inf


class ParseError(ValueError):
    """Raised on malformed textual input; carries the failing offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}")


@total_ordering
@dataclass(frozen=True)
class EpsSeries:
    """A finite formal series in ``e``, kept in canonical form.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs with strictly
    increasing exponents and no zero coefficients; the empty tuple is 0.
    """

    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @staticmethod
    def from_terms(pairs: Iterable[Tuple[Fraction, Fraction]]) -> "EpsSeries":
        merged: dict[Fraction, Fraction] = {}
        for exp, coeff in pairs:
            exp = _as_fraction(exp)
            coeff = _as_fraction(coeff)
            merged[exp] = merged.get(exp, Fraction(0)) + coeff
        terms = tuple(
            (exp, merged[exp]) for exp in sorted(merged) if merged[exp] != 0
        )
        return EpsSeries(terms)

    @staticmethod
    def from_rational(value) -> "EpsSeries":
        value = _as_fraction(value)
        if value == 0:
            return EpsSeries()
        return EpsSeries(((Fraction(0), value),))

    @staticmethod
    def monomial(exponent, coefficient=1) -> "EpsSeries":
        coefficient = _as_fraction(coefficient)
        if coefficient == 0:
            return EpsSeries()
        return EpsSeries(((_as_fraction(exponent), coefficient),))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def valuation(self):
        """Least exponent, or the +inf sentinel for the zero series."""
        if not self.terms:
            return INFINITE_VALUATION
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[0][1]

    def sign(self) -> int:
        """Sign of the series: the sign of its dominant coefficient."""
        c = self.leading_coefficient
        return (c > 0) - (c < 0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, EpsSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return EpsSeries.from_rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return EpsSeries.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries(tuple((exp, -coeff) for exp, coeff in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return EpsSeries.from_terms(
            (ea + eb, ca * cb)
            for ea, ca in self.terms
            for eb, cb in other.terms
        )

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("series powers must be non-negative integers")
        result = ONE
        for _ in range(power):
            result = result * self
        return result

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def compare(self, other) -> int:
        """Three-way comparison: -1, 0, or 1."""
        return (self - other).sign()

    # -- numeric sampling --------------------------------------------------

    def evaluate(self, eps_value: float) -> float:
        """Substitute a concrete small positive value for ``e``."""
        return sum(float(c) * eps_value ** float(q) for q, c in self.terms)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (exp, coeff) in enumerate(self.terms):
            mag = abs(coeff)
            if exp == 0:
                body = str(mag)
            else:
                base = "e" if exp == 1 else f"e^({exp})"
                body = base if mag == 1 else f"{mag}*{base}"
            if i == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"EpsSeries({self})"


ZERO = EpsSeries()
ONE = EpsSeries.from_rational(1)
#: The positive infinitesimal witness.
EPS = EpsSeries.monomial(1)
#: The infinitely large witness 1/e.
OMEGA = EpsSeries.monomial(-1)


# -- expression parsing ----------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_£⊘][A-Za-z_0-9]*)"
    r"|(?P<op>\^|\*|\+|-|\(|\))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class ExprParser:
    """Recursive-descent parser for ``+ - *`` expressions over series.

    Subclasses may extend :meth:`parse_name` to add further primaries
    (the external-number parser adds neutrix symbols this way).
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    # hooks ---------------------------------------------------------------

    def from_rational(self, value: Fraction):
        return EpsSeries.from_rational(value)

    def make_eps_power(self, exponent: Fraction):
        return EpsSeries.monomial(exponent)

    def parse_name(self, token: Token):
        if token.text == "e":
            if self.peek().kind == "op" and self.peek().text == "^":
                self.advance()
                return self.make_eps_power(self.parse_exponent())
            return self.make_eps_power(Fraction(1))
        raise ParseError(f"unknown symbol {token.text!r}", token.pos)

    # machinery -----------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def expect_op(self, text: str) -> Token:
        token = self.peek()
        if token.kind != "op" or token.text != text:
            raise ParseError(f"expected {text!r}", token.pos)
        return self.advance()

    def parse(self):
        value = self.parse_sum()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"unexpected token {token.text!r}", token.pos)
        return value

    def parse_sum(self):
        value = self.parse_product()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.parse_product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_product(self):
        value = self.parse_factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            value = value * self.parse_factor()
        return value

    def parse_factor(self):
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            return -self.parse_factor()
        return self.parse_primary()

    def parse_primary(self):
        token = self.advance()
        if token.kind == "num":
            return self.from_rational(Fraction(token.text))
        if token.kind == "name":
            return self.parse_name(token)
        if token.kind == "op" and token.text == "(":
            value = self.parse_sum()
            self.expect_op(")")
            return value
        raise ParseError("expected a value", token.pos)

    def parse_exponent(self) -> Fraction:
        token = self.peek()
        negative = False
        parenthesized = False
        if token.kind == "op" and token.text == "(":
            parenthesized = True
            self.advance()
            token = self.peek()
        if token.kind == "op" and token.text == "-":
            negative = True
            self.advance()
            token = self.peek()
        if token.kind != "num":
            raise ParseError("expected an exponent", token.pos)
        value = Fraction(self.advance().text)
        if parenthesized:
            self.expect_op(")")
        return -value if negative else value


def parse_series(text: str) -> EpsSeries:
    """Parse the canonical textual form, e.g. ``3 - 2*e^(1/2) + e^(-1)``."""
    return ExprParser(text).parse()
