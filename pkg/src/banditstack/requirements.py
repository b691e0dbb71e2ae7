"""Bounded temporal requirements over finite traces.

A requirement is a formula built from integer comparisons on trace
variables, boolean connectives, and step-bounded temporal operators::

    G<=10 (collisions <= 2)        always, over observations 0..10
    F<=5  (collisions >= 1)        eventually, within observations 0..5

A trace is a sequence of observations, each mapping variable names to
integers.  Observation 0 is the initial state; observation i is the state
after the i-th action, so a formula of horizon h needs h+1 observations.

Concrete grammar (whitespace insignificant)::

    formula := or
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | ('G'|'F') '<=' INT unary | '(' formula ')' | atom
    atom    := IDENT op INT        with op in <=, <, =, >=, >
"""

from __future__ import annotations

import functools
import operator
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

Observation = Mapping[str, int]
Trace = Sequence[Observation]

_COMPARATORS: dict[str, Callable[[int, int], bool]] = {
    "<=": operator.le,
    "<": operator.lt,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


class ParseError(ValueError):
    """Raised on malformed formula text; `position` is the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Atom:
    variable: str
    comparator: str
    constant: int

    def __post_init__(self) -> None:
        if self.comparator not in _COMPARATORS:
            raise ValueError(f"unknown comparator {self.comparator!r}")


@dataclass(frozen=True)
class Not:
    child: "Requirement"


@dataclass(frozen=True)
class And:
    left: "Requirement"
    right: "Requirement"


@dataclass(frozen=True)
class Or:
    left: "Requirement"
    right: "Requirement"


@dataclass(frozen=True)
class Always:
    bound: int
    child: "Requirement"

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("bound must be positive")


@dataclass(frozen=True)
class Eventually:
    bound: int
    child: "Requirement"

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("bound must be positive")


Requirement = Union[Atom, Not, And, Or, Always, Eventually]


@functools.lru_cache(maxsize=1024)
def horizon(phi: Requirement) -> int:
    """Number of plan steps the formula constrains.

    Temporal bounds accumulate through nesting; a formula without any
    temporal operator has no horizon and is rejected.
    """
    if not _has_temporal(phi):
        raise ValueError("unbounded formula: no temporal operator")
    return _depth(phi)


def _has_temporal(phi: Requirement) -> bool:
    if isinstance(phi, (Always, Eventually)):
        return True
    if isinstance(phi, Not):
        return _has_temporal(phi.child)
    if isinstance(phi, (And, Or)):
        return _has_temporal(phi.left) or _has_temporal(phi.right)
    return False


def _depth(phi: Requirement) -> int:
    if isinstance(phi, Atom):
        return 0
    if isinstance(phi, Not):
        return _depth(phi.child)
    if isinstance(phi, (And, Or)):
        return max(_depth(phi.left), _depth(phi.right))
    return phi.bound + _depth(phi.child)


def evaluate(phi: Requirement, trace: Trace) -> bool:
    """Evaluate the formula on a finite trace (index 0 = initial state)."""
    need = horizon(phi) + 1
    if len(trace) < need:
        raise ValueError(
            f"trace too short: need {need} observations, got {len(trace)}"
        )
    return _eval(phi, trace, 0)


def _eval(phi: Requirement, trace: Trace, i: int) -> bool:
    if isinstance(phi, Atom):
        obs = trace[i]
        if phi.variable not in obs:
            raise ValueError(f"unbound variable {phi.variable!r}")
        return _COMPARATORS[phi.comparator](obs[phi.variable], phi.constant)
    if isinstance(phi, Not):
        return not _eval(phi.child, trace, i)
    if isinstance(phi, And):
        return _eval(phi.left, trace, i) and _eval(phi.right, trace, i)
    if isinstance(phi, Or):
        return _eval(phi.left, trace, i) or _eval(phi.right, trace, i)
    if isinstance(phi, Always):
        for k in range(phi.bound + 1):
            if not _eval(phi.child, trace, i + k):
                return False
        return True
    if isinstance(phi, Eventually):
        for k in range(phi.bound + 1):
            if _eval(phi.child, trace, i + k):
                return True
        return False
    raise TypeError(f"not a requirement node: {phi!r}")


def to_text(phi: Requirement) -> str:
    """Canonical text form; `parse(to_text(phi)) == phi`."""
    if isinstance(phi, Atom):
        return f"{phi.variable} {phi.comparator} {phi.constant}"
    if isinstance(phi, Not):
        return f"!({to_text(phi.child)})"
    if isinstance(phi, And):
        return f"({to_text(phi.left)} & {to_text(phi.right)})"
    if isinstance(phi, Or):
        return f"({to_text(phi.left)} | {to_text(phi.right)})"
    if isinstance(phi, Always):
        return f"G<={phi.bound} ({to_text(phi.child)})"
    if isinstance(phi, Eventually):
        return f"F<={phi.bound} ({to_text(phi.child)})"
    raise TypeError(f"not a requirement node: {phi!r}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><=|>=|<|>|=)|(?P<punct>[!&|()])"
    r"|(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text) - len(stripped))
        kind = m.lastgroup
        assert kind is not None
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}",
                             tok[2])
        return self.advance()

    def parse_formula(self) -> Requirement:
        node = self.parse_and()
        while self.peek()[:2] == ("punct", "|"):
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Requirement:
        node = self.parse_unary()
        while self.peek()[:2] == ("punct", "&"):
            self.advance()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> Requirement:
        kind, value, pos = self.peek()
        if (kind, value) == ("punct", "!"):
            self.advance()
            return Not(self.parse_unary())
        if kind == "ident" and value in ("G", "F"):
            # G/F followed by '<=' always binds as a temporal operator, so
            # variables named G or F cannot be compared with '<='.
            nxt = self.tokens[self.index + 1]
            if nxt[:2] == ("op", "<="):
                self.advance()
                self.advance()
                bound_tok = self.expect("int")
                bound = int(bound_tok[1])
                if bound < 1:
                    raise ParseError("bound must be positive", bound_tok[2])
                child = self.parse_unary()
                return Always(bound, child) if value == "G" else Eventually(bound, child)
        if (kind, value) == ("punct", "("):
            self.advance()
            node = self.parse_formula()
            self.expect("punct", ")")
            return node
        if kind == "ident":
            return self.parse_atom()
        raise ParseError(f"expected a formula, found {value or 'end of input'!r}", pos)

    def parse_atom(self) -> Requirement:
        _, variable, _ = self.expect("ident")
        _, comparator, _ = self.expect("op")
        _, constant, _ = self.expect("int")
        return Atom(variable, comparator, int(constant))


def parse(text: str) -> Requirement:
    """Parse formula text; raises ParseError with a character position."""
    parser = _Parser(text)
    node = parser.parse_formula()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {value!r}", pos)
    return node
