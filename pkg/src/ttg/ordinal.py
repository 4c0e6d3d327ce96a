"""Exact ordinal arithmetic below omega^omega in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing natural exponents and positive coefficients, so
``w^2*3+w+4`` is ``((2, 3), (1, 1), (0, 4))`` and zero is ``()``.  Because
the tuples are canonical, equality and hashing are structural and the
ordinal order is plain lexicographic order on the term tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import NamedTuple, Union

from .errors import NotLimit, OrdinalOverflow, OrdinalSyntaxError

Term = tuple[int, int]
OrdinalLike = Union["Ordinal", int]


@total_ordering
@dataclass(frozen=True, eq=False)
class Ordinal:
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        prev = None
        for term in self.terms:
            if len(term) != 2:
                raise ValueError(f"malformed term {term!r}")
            exp, coeff = term
            if not isinstance(exp, int) or not isinstance(coeff, int):
                raise TypeError(f"terms must be integer pairs, got {term!r}")
            if exp < 0 or coeff < 1:
                raise ValueError(f"non-canonical term {term!r}")
            if prev is not None and exp >= prev:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp

    @classmethod
    def of(cls, value: OrdinalLike) -> Ordinal:
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot make an ordinal from {value!r}")
        if value < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, value),)) if value else ZERO

    @classmethod
    def omega_power(cls, exponent: int, coefficient: int = 1) -> Ordinal:
        return cls(((exponent, coefficient),))

    # --- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def leading_exponent(self) -> int:
        """Exponent of the leading term; 0 for the zero ordinal."""
        return self.terms[0][0] if self.terms else 0

    def least_exponent(self) -> int:
        """Exponent of the last CNF term; 0 for the zero ordinal."""
        return self.terms[-1][0] if self.terms else 0

    def truncate(self, k: int) -> Ordinal:
        """Largest multiple of omega^k that is <= self."""
        return Ordinal(tuple(t for t in self.terms if t[0] >= k))

    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.finite_part()

    # --- order and arithmetic -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self == Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        # finite ordinals hash like the matching int so mixed dict keys work
        return hash(self.finite_part()) if self.is_finite() else hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return add(Ordinal.of(other), self)
        return NotImplemented

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal.of(1)
OMEGA = Ordinal.omega_power(1)


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(a: OrdinalLike, b: OrdinalLike) -> Ordering:
    a, b = Ordinal.of(a), Ordinal.of(b)
    if a.terms == b.terms:
        return Ordering.EQUAL
    return Ordering.LESS if a.terms < b.terms else Ordering.GREATER


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Ordinal sum a + b.

    Terms of ``a`` below the leading exponent of ``b`` are absorbed; a term
    of ``a`` at exactly that exponent merges its coefficient.
    """
    a, b = Ordinal.of(a), Ordinal.of(b)
    if b.is_zero():
        return a
    lead_exp, lead_coeff = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead_exp]
    same = [c for e, c in a.terms if e == lead_exp]
    merged = (lead_exp, lead_coeff + (same[0] if same else 0))
    return Ordinal(tuple(kept) + (merged,) + b.terms[1:])


class Kind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


class Classification(NamedTuple):
    kind: Kind
    predecessor: Ordinal | None = None


def classify(a: OrdinalLike) -> Classification:
    a = Ordinal.of(a)
    if a.is_zero():
        return Classification(Kind.ZERO)
    exp, coeff = a.terms[-1]
    if exp != 0:
        return Classification(Kind.LIMIT)
    head = a.terms[:-1] + (((0, coeff - 1),) if coeff > 1 else ())
    return Classification(Kind.SUCCESSOR, Ordinal(head))


def is_limit(a: OrdinalLike) -> bool:
    return classify(a).kind is Kind.LIMIT


def successor(a: OrdinalLike) -> Ordinal:
    return add(a, ONE)


def predecessor(a: OrdinalLike) -> Ordinal:
    c = classify(a)
    if c.kind is not Kind.SUCCESSOR:
        raise ArithmeticError(f"{a} has no predecessor")
    return c.predecessor


def times_omega(b: OrdinalLike) -> Ordinal:
    """omega * b, i.e. every CNF exponent raised by one."""
    b = Ordinal.of(b)
    return Ordinal(tuple((e + 1, c) for e, c in b.terms))


def divide_by_omega(a: OrdinalLike) -> Ordinal:
    """The unique b with omega * b == a; defined for 0 and limit ordinals."""
    a = Ordinal.of(a)
    if classify(a).kind is Kind.SUCCESSOR:
        raise NotLimit(f"{a} is a successor ordinal")
    return Ordinal(tuple((e - 1, c) for e, c in a.terms))


# --- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<sym>[w^*+]))")


def format_ordinal(a: OrdinalLike) -> str:
    a = Ordinal.of(a)
    if a.is_zero():
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp == 0:
            parts.append(str(coeff))
            continue
        base = "w" if exp == 1 else f"w^{exp}"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return "+".join(parts)


def parse(text: str) -> Ordinal:
    """Parse ``term ("+" term)*`` with term ``w[^nat][*nat]`` or ``nat``."""
    tokens = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise OrdinalSyntaxError("unexpected character", text, pos)
        start = m.start("nat") if m.group("nat") is not None else m.start("sym")
        tokens.append((m.group("nat") or m.group("sym"), start))
        pos = m.end()
    if not tokens:
        raise OrdinalSyntaxError("empty ordinal", text, 0)

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, len(text))

    def expect_nat(what):
        nonlocal i
        tok, at = peek()
        if tok is None or not tok.isdigit():
            raise OrdinalSyntaxError(f"expected {what}", text, at)
        i += 1
        return int(tok), at

    terms: list[Term] = []
    while True:
        tok, at = peek()
        if tok == "w":
            i += 1
            exp = 1
            if peek()[0] == "^":
                i += 1
                if peek()[0] == "w":
                    raise OrdinalOverflow("exponent omega is beyond w^w")
                exp, eat = expect_nat("exponent")
                if exp == 0:
                    raise OrdinalSyntaxError("write w^0 as 1", text, eat)
            coeff = 1
            if peek()[0] == "*":
                i += 1
                if peek()[0] == "w":
                    raise OrdinalSyntaxError("only natural coefficients", text, peek()[1])
                coeff, cat = expect_nat("coefficient")
                if coeff == 0:
                    raise OrdinalSyntaxError("zero coefficient", text, cat)
        elif tok is not None and tok.isdigit():
            i += 1
            exp, coeff = 0, int(tok)
            if coeff == 0:
                if terms or peek()[0] is not None:
                    raise OrdinalSyntaxError("zero term inside a sum", text, at)
                return ZERO
        else:
            raise OrdinalSyntaxError("expected a term", text, at)
        if terms and exp >= terms[-1][0]:
            raise OrdinalSyntaxError("exponents must strictly decrease", text, at)
        terms.append((exp, coeff))
        tok, at = peek()
        if tok is None:
            break
        if tok != "+":
            raise OrdinalSyntaxError("expected '+'", text, at)
        i += 1
    return Ordinal(tuple(terms))
