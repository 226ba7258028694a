"""Neutrices and external numbers over the finite-series model.

A neutrix is a convex additive subgroup of the model, used as an exact
order-of-magnitude error term.  The representable neutrices are the zero
group and the two valuation-definable families

* ``L(q)``: all series of valuation >= q (a scaled copy of the limited
  numbers; ``L(0)`` is written ``£``), and
* ``o(q)``: all series of valuation > q (a scaled copy of the
  infinitesimals; ``o(0)`` is written ``osl``).

An external number is a canonical pair (series representative, neutrix);
the calculus of sums and products propagates the dominant error group.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .series import (
    EPS,
    ONE,
    ZERO,
    EpsSeries,
    ExprParser,
    ParseError,
    Token,
)

__all__ = [
    "Kind",
    "Neutrix",
    "ExternalNumber",
    "Classification",
    "SetRelation",
    "BoundExceeded",
    "n_max",
    "n_scale",
    "n_mul",
    "canonicalize",
    "classify",
    "is_limited",
    "is_infinitesimal",
    "relate",
    "infinitely_close",
    "distributivity_holds",
    "binomial_check",
    "regular_inverse",
    "parse_external",
]


class Kind(enum.Enum):
    LIM = "L"
    OSL = "o"


@dataclass(frozen=True)
class Neutrix:
    """Zero, or a scaled limited/infinitesimal group at a rational exponent."""

    exponent: Optional[Fraction] = None
    kind: Optional[Kind] = None

    def __post_init__(self):
        if (self.exponent is None) != (self.kind is None):
            raise ValueError("exponent and kind must be given together")

    @staticmethod
    def zero() -> "Neutrix":
        return Neutrix()

    @staticmethod
    def lim(exponent=0) -> "Neutrix":
        return Neutrix(Fraction(exponent), Kind.LIM)

    @staticmethod
    def osl(exponent=0) -> "Neutrix":
        return Neutrix(Fraction(exponent), Kind.OSL)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def contains(self, x: EpsSeries) -> bool:
        if self.is_zero:
            return x.is_zero
        if self.kind is Kind.LIM:
            return x.valuation >= self.exponent
        return x.valuation > self.exponent

    def _size_key(self):
        # Total inclusion order: Zero is least; smaller exponents are
        # larger groups; at equal exponent, L(q) strictly contains o(q).
        if self.is_zero:
            return (0,)
        return (1, -self.exponent, 1 if self.kind is Kind.LIM else 0)

    def includes(self, other: "Neutrix") -> bool:
        """True when this group contains the other (possibly equal)."""
        return self == other or self._size_key() > other._size_key()

    def strictly_includes(self, other: "Neutrix") -> bool:
        return self != other and self.includes(other)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.kind.value}({self.exponent})"


OSLASH = Neutrix.osl(0)
POUND = Neutrix.lim(0)


def n_max(*neutrices: Neutrix) -> Neutrix:
    """Inclusion-largest of the given neutrices."""
    if not neutrices:
        raise ValueError("n_max needs at least one neutrix")
    return max(neutrices, key=Neutrix._size_key)


def n_scale(a: EpsSeries, neutrix: Neutrix) -> Neutrix:
    """Group generated by multiplying every member by the series ``a``."""
    if not isinstance(a, EpsSeries):
        a = EpsSeries.from_rational(a)
    if a.is_zero or neutrix.is_zero:
        return Neutrix.zero()
    return Neutrix(neutrix.exponent + a.valuation, neutrix.kind)


def n_mul(a: Neutrix, b: Neutrix) -> Neutrix:
    """Group generated by pairwise products of members."""
    if a.is_zero or b.is_zero:
        return Neutrix.zero()
    kind = Kind.LIM if (a.kind is Kind.LIM and b.kind is Kind.LIM) else Kind.OSL
    return Neutrix(a.exponent + b.exponent, kind)


class Classification(enum.Enum):
    ZEROISH = "Zeroish"
    INFINITESIMAL = "Infinitesimal"
    APPRECIABLE = "Appreciable"
    UNLIMITED = "Unlimited"
    NEUTRIX_ONLY = "NeutrixOnly"


class SetRelation(enum.Enum):
    EQUAL = "Equal"
    PROPER_SUB = "ProperSub"
    PROPER_SUP = "ProperSup"
    DISJOINT_LESS = "DisjointLess"
    DISJOINT_GREATER = "DisjointGreater"


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ExternalNumber:
    """Canonical representative-plus-neutrix pair.

    Always construct through :meth:`make` (or the arithmetic operators),
    which drops every representative term absorbed by the neutrix; two
    external numbers denote the same external set iff they are equal.
    """

    rep: EpsSeries
    neutrix: Neutrix

    @staticmethod
    def make(rep, neutrix: Neutrix = Neutrix.zero()) -> "ExternalNumber":
        if not isinstance(rep, EpsSeries):
            rep = EpsSeries.from_rational(rep)
        kept = tuple(
            (exp, coeff)
            for exp, coeff in rep.terms
            if not neutrix.contains(EpsSeries.monomial(exp, coeff))
        )
        return ExternalNumber(EpsSeries(kept), neutrix)

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero and self.neutrix.is_zero

    @property
    def is_neutrix(self) -> bool:
        return self.rep.is_zero and not self.neutrix.is_zero

    def _coerce(self, other):
        if isinstance(other, ExternalNumber):
            return other
        if isinstance(other, EpsSeries):
            return ExternalNumber.make(other)
        if isinstance(other, (int, Fraction)):
            return ExternalNumber.make(EpsSeries.from_rational(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExternalNumber.make(
            self.rep + other.rep, n_max(self.neutrix, other.neutrix)
        )

    __radd__ = __add__

    def __neg__(self):
        return ExternalNumber.make(-self.rep, self.neutrix)

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
        a, neutrix_a = self.rep, self.neutrix
        b, neutrix_b = other.rep, other.neutrix
        product_neutrix = n_max(
            n_scale(a, neutrix_b),
            n_scale(b, neutrix_a),
            n_mul(neutrix_a, neutrix_b),
        )
        return ExternalNumber.make(a * b, product_neutrix)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("powers must be non-negative integers")
        result = ExternalNumber.make(ONE)
        for _ in range(power):
            result = result * self
        return result

    def __str__(self) -> str:
        if self.neutrix.is_zero:
            return str(self.rep)
        if self.rep.is_zero:
            return str(self.neutrix)
        return f"{self.rep} + {self.neutrix}"

    def __repr__(self) -> str:
        return f"ExternalNumber({self})"


def canonicalize(rep: EpsSeries, neutrix: Neutrix) -> ExternalNumber:
    return ExternalNumber.make(rep, neutrix)


def classify(alpha: ExternalNumber) -> Classification:
    """Order-of-magnitude class shared by every member of the external set.

    Neutrix-only values (zero representative, nonzero neutrix) get
    NEUTRIX_ONLY rather than a point class, since groups like £ mix
    infinitesimal and appreciable members.
    """
    if alpha.rep.is_zero:
        if alpha.neutrix.is_zero:
            return Classification.ZEROISH
        return Classification.NEUTRIX_ONLY
    v = alpha.rep.valuation
    if v < 0:
        return Classification.UNLIMITED
    if v == 0:
        return Classification.APPRECIABLE
    return Classification.INFINITESIMAL


def is_limited(alpha: ExternalNumber) -> bool:
    """True when every member of the set is limited."""
    if not POUND.includes(alpha.neutrix):
        return False
    return alpha.rep.is_zero or alpha.rep.valuation >= 0


def is_infinitesimal(alpha: ExternalNumber) -> bool:
    """True when every member of the set is infinitesimal."""
    if not OSLASH.includes(alpha.neutrix):
        return False
    return alpha.rep.is_zero or alpha.rep.valuation > 0


def relate(alpha: ExternalNumber, beta: ExternalNumber) -> SetRelation:
    """Exactly one of equality, proper inclusion, or signed disjointness."""
    if alpha == beta:
        return SetRelation.EQUAL
    diff = beta.rep - alpha.rep
    joint = n_max(alpha.neutrix, beta.neutrix)
    if not joint.contains(diff):
        return (
            SetRelation.DISJOINT_LESS
            if diff.sign() > 0
            else SetRelation.DISJOINT_GREATER
        )
    if beta.neutrix.strictly_includes(alpha.neutrix):
        return SetRelation.PROPER_SUB
    if alpha.neutrix.strictly_includes(beta.neutrix):
        return SetRelation.PROPER_SUP
    raise AssertionError(
        "unreachable for canonical inputs: equal neutrices with an "
        "absorbed representative difference"
    )


def infinitely_close(x: EpsSeries, y: EpsSeries) -> bool:
    return OSLASH.contains(x - y)


def distributivity_holds(
    alpha: ExternalNumber, beta: ExternalNumber, gamma: ExternalNumber
) -> Tuple[bool, ExternalNumber, ExternalNumber]:
    """Compare a*(b+c) against a*b + a*c; returns verdict and both sides."""
    left = alpha * (beta + gamma)
    right = alpha * beta + alpha * gamma
    return left == right, left, right


def binomial_check(
    alpha: ExternalNumber,
    beta: ExternalNumber,
    n: int,
    *,
    bound: int = 8,
) -> Tuple[bool, ExternalNumber, ExternalNumber]:
    """Compare (a+b)^n against the binomial expansion."""
    if n < 0 or n > bound:
        raise BoundExceeded(f"exponent {n} outside 0..{bound}")
    left = (alpha + beta) ** n
    right = ExternalNumber.make(ZERO)
    for k in range(n + 1):
        coeff = ExternalNumber.make(math.comb(n, k))
        right = right + coeff * alpha**k * beta ** (n - k)
    return left == right, left, right


_INVERSE_MAX_TERMS = 48


def regular_inverse(alpha: ExternalNumber) -> Optional[ExternalNumber]:
    """A beta with alpha*beta*alpha == alpha, or None if none is found.

    The candidate representative is the geometric-series inverse of the
    representative, truncated once further terms are absorbed by the
    scaled neutrix.  With a zero neutrix only monomial representatives
    are invertible in the finite-series model.
    """
    a = alpha.rep
    if a.is_zero:
        return None
    v = a.valuation
    base = EpsSeries.monomial(-v, 1 / a.leading_coefficient)
    correction = ONE - a * base  # valuation > 0 unless a is a monomial
    if alpha.neutrix.is_zero:
        beta = ExternalNumber.make(base)
        return beta if alpha * beta * alpha == alpha else None
    inv_neutrix = Neutrix(alpha.neutrix.exponent - 2 * v, alpha.neutrix.kind)
    inv = base
    power = ONE
    for _ in range(_INVERSE_MAX_TERMS):
        beta = ExternalNumber.make(inv, inv_neutrix)
        if alpha * beta * alpha == alpha:
            return beta
        power = power * correction
        if power.is_zero:
            return None
        inv = inv + base * power
    return None


class _ExternalExprParser(ExprParser):
    """Extends the series grammar with neutrix symbols L(q), o(q), osl, lim."""

    def from_rational(self, value: Fraction):
        return ExternalNumber.make(EpsSeries.from_rational(value))

    def make_eps_power(self, exponent: Fraction):
        return ExternalNumber.make(EpsSeries.monomial(exponent))

    def parse_name(self, token: Token):
        name = token.text
        if name in ("L", "o"):
            self.expect_op("(")
            exponent = self.parse_signed_rational()
            self.expect_op(")")
            kind = Kind.LIM if name == "L" else Kind.OSL
            return ExternalNumber.make(ZERO, Neutrix(exponent, kind))
        if name in ("osl", "⊘"):
            return ExternalNumber.make(ZERO, Neutrix.osl(0))
        if name in ("lim", "£"):
            return ExternalNumber.make(ZERO, Neutrix.lim(0))
        return super().parse_name(token)

    def parse_signed_rational(self) -> Fraction:
        negative = False
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            negative = True
            self.advance()
            token = self.peek()
        if token.kind != "num":
            raise ParseError("expected a rational", token.pos)
        value = Fraction(self.advance().text)
        return -value if negative else value


def parse_external(text: str) -> ExternalNumber:
    """Parse an external-number expression, e.g. ``(2 + osl) * (3 + osl)``."""
    return _ExternalExprParser(text).parse()
