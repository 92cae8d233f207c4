"""Ordinals below omega^omega in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing natural exponents and positive coefficients, so

    w^3*2 + w + 4  ==  Ordinal(((3, 2), (1, 1), (0, 4)))

Because the representation is canonical, tuple comparison of the term lists
is exactly the ordinal order and tuple equality is ordinal equality.
"""

from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterable, Union

from .errors import NonCanonicalOrdinal, OrdinalParseError, ZeroHasNoTrailingTerm

Term = tuple[int, int]
OrdinalLike = Union["Ordinal", int]


@total_ordering
class Ordinal:
    __slots__ = ("terms",)

    terms: tuple[Term, ...]

    def __init__(self, terms: Iterable[Term] = ()) -> None:
        terms = tuple((int(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if e < 0 or c < 1:
                raise NonCanonicalOrdinal(f"bad term {(e, c)} in {terms}")
            if i and terms[i - 1][0] <= e:
                raise NonCanonicalOrdinal(f"exponents not strictly decreasing in {terms}")
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def normalize(cls, terms: Iterable[Term]) -> Ordinal:
        """Build an ordinal from arbitrary terms read as a left-to-right sum."""
        result = ZERO
        for e, c in terms:
            if c < 0 or e < 0:
                raise NonCanonicalOrdinal(f"negative term {(e, c)}")
            if c:
                result = result + cls(((e, c),))
        return result

    @classmethod
    def of(cls, value: OrdinalLike) -> Ordinal:
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot interpret {value!r} as an ordinal")
        if value < 0:
            raise NonCanonicalOrdinal(f"negative natural {value}")
        return cls(((0, value),)) if value else ZERO

    # -- order -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self.terms == Ordinal.of(other).terms
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __hash__(self) -> int:
        if self.is_finite():
            return hash(int(self))
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: OrdinalLike) -> Ordinal:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        if not other.terms:
            return self
        lead_e, lead_c = other.terms[0]
        kept = [t for t in self.terms if t[0] > lead_e]
        same = [c for e, c in self.terms if e == lead_e]
        if same:
            kept.append((lead_e, same[0] + lead_c))
        else:
            kept.append((lead_e, lead_c))
        kept.extend(other.terms[1:])
        return Ordinal(kept)

    def __radd__(self, other: int) -> Ordinal:
        if isinstance(other, int) and not isinstance(other, bool):
            return Ordinal.of(other) + self
        return NotImplemented

    def successor(self) -> Ordinal:
        return self + 1

    # -- structure ---------------------------------------------------------

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    def leading_exponent(self) -> int:
        if not self.terms:
            raise ZeroHasNoTrailingTerm("0 has no leading term")
        return self.terms[0][0]

    def trailing_exponent(self) -> int:
        if not self.terms:
            raise ZeroHasNoTrailingTerm("0 has no trailing term; it is isolated at level 0")
        return self.terms[-1][0]

    def truncate(self, exponent: int) -> Ordinal:
        """Drop every term whose exponent is below ``exponent``."""
        return Ordinal(t for t in self.terms if t[0] >= exponent)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_format_term(e, c) for e, c in self.terms)


def _format_term(e: int, c: int) -> str:
    if e == 0:
        return str(c)
    base = "w" if e == 1 else f"w^{e}"
    return base if c == 1 else f"{base}*{c}"


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def omega_power(exponent: int, coefficient: int = 1) -> Ordinal:
    """Return w^exponent * coefficient."""
    if coefficient == 0:
        return ZERO
    return Ordinal(((exponent, coefficient),))


def compare(a: OrdinalLike, b: OrdinalLike) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    return (a.terms > b.terms) - (a.terms < b.terms)


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    return Ordinal.of(a) + Ordinal.of(b)


def trailing_exponent(a: OrdinalLike) -> int:
    return Ordinal.of(a).trailing_exponent()


def is_limit(a: OrdinalLike) -> bool:
    return Ordinal.of(a).is_limit()


def successor(a: OrdinalLike) -> Ordinal:
    return Ordinal.of(a) + 1


_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<sym>[w^*+]))")


def parse(text: str) -> Ordinal:
    """Parse an ordinal literal such as ``"w^3*2 + w + 4"``.

    Grammar: ``sum := term ("+" term)*``, ``term := "w" ("^" nat)? ("*" posnat)? | nat``.
    Exponents must strictly decrease; whitespace is ignored.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise OrdinalParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = "nat" if m.group("nat") else m.group("sym")
        value = m.group("nat") or m.group("sym")
        tokens.append((kind, value, m.start("nat" if kind == "nat" else "sym")))
        pos = m.end()
    if not tokens:
        raise OrdinalParseError("empty literal", text, 0)

    i = 0

    def peek() -> tuple[str, str, int]:
        return tokens[i] if i < len(tokens) else ("end", "", len(text))

    def expect_nat() -> int:
        nonlocal i
        kind, value, where = peek()
        if kind != "nat":
            raise OrdinalParseError("expected a natural number", text, where)
        i += 1
        return int(value)

    terms: list[Term] = []
    while True:
        kind, value, where = peek()
        if kind == "nat":
            i += 1
            term = (0, int(value))
        elif kind == "w":
            i += 1
            exponent, coefficient = 1, 1
            if peek()[0] == "^":
                i += 1
                exponent = expect_nat()
            if peek()[0] == "*":
                i += 1
                cwhere = peek()[2]
                coefficient = expect_nat()
                if coefficient == 0:
                    raise OrdinalParseError("coefficient must be positive", text, cwhere)
            term = (exponent, coefficient)
        else:
            raise OrdinalParseError("expected a term", text, where)
        if term[1] == 0:
            if terms or peek()[0] != "end":
                raise OrdinalParseError("zero term inside a sum", text, where)
            return ZERO
        if terms and terms[-1][0] <= term[0]:
            raise OrdinalParseError("exponents must strictly decrease", text, where)
        terms.append(term)
        kind, value, where = peek()
        if kind == "end":
            break
        if kind != "+":
            raise OrdinalParseError(f"unexpected {value!r}", text, where)
        i += 1
    return Ordinal(terms)
