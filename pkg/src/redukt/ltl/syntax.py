"""LTL abstract syntax, atomic proposition sets and negation normal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ..alphabet import ApSet
from ..errors import UnknownAtomicProposition


@dataclass(frozen=True)
class Formula:
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Ap(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class Finally(Formula):
    operand: Formula


@dataclass(frozen=True)
class Globally(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


TRUE = Top()
FALSE = Bottom()

UNARY = (Not, Next, Finally, Globally)
BINARY = (And, Or, Implies, Until, Release)


def atomic_propositions(f: Formula) -> list[str]:
    """Proposition names in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Ap):
            seen.setdefault(g.name)
    return list(seen)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Preorder traversal."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, UNARY):
            stack.append(g.operand)
        elif isinstance(g, BINARY):
            stack.append(g.right)
            stack.append(g.left)


def is_x_free(f: Formula) -> bool:
    return not any(isinstance(g, Next) for g in subformulas(f))


def depth(f: Formula) -> int:
    if isinstance(f, UNARY):
        return 1 + depth(f.operand)
    if isinstance(f, BINARY):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def _and(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Bottom) or isinstance(b, Bottom):
        return FALSE
    if isinstance(a, Top):
        return b
    if isinstance(b, Top):
        return a
    return And(a, b)


def _or(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Top) or isinstance(b, Top):
        return TRUE
    if isinstance(a, Bottom):
        return b
    if isinstance(b, Bottom):
        return a
    return Or(a, b)


def to_nnf(f: Formula, negated: bool = False) -> Formula:
    """Negation normal form over Top, Bottom, literals, And, Or, X, F, G, U, R.

    Only constant folding and double-negation removal are applied beyond the
    dualities.
    """
    if isinstance(f, Top):
        return FALSE if negated else TRUE
    if isinstance(f, Bottom):
        return TRUE if negated else FALSE
    if isinstance(f, Ap):
        return Not(f) if negated else f
    if isinstance(f, Not):
        return to_nnf(f.operand, not negated)
    if isinstance(f, UNARY):
        g = to_nnf(f.operand, negated)
        if isinstance(g, (Top, Bottom)):
            return g
        if isinstance(f, Next):
            return Next(g)
        if isinstance(f, Finally):
            return Globally(g) if negated else Finally(g)
        return Finally(g) if negated else Globally(g)
    if isinstance(f, Implies):
        return to_nnf(Or(Not(f.left), f.right), negated)
    a, b = to_nnf(f.left, negated), to_nnf(f.right, negated)
    if isinstance(f, And):
        return _or(a, b) if negated else _and(a, b)
    if isinstance(f, Or):
        return _and(a, b) if negated else _or(a, b)
    if isinstance(f, Until):
        return Release(a, b) if negated else Until(a, b)
    if isinstance(f, Release):
        return Until(a, b) if negated else Release(a, b)
    raise TypeError(f"not a formula: {f!r}")


def negate(f: Formula) -> Formula:
    """Syntactic negation pushed to the literals."""
    return to_nnf(f, negated=True)


_SYM = {And: "&", Or: "|", Implies: "->", Until: "U", Release: "R"}
_USYM = {Not: "!", Next: "X ", Finally: "F ", Globally: "G "}


def to_text(f: Formula) -> str:
    """Fully parenthesised text accepted back by the parser."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Ap):
        return f.name
    if isinstance(f, UNARY):
        return _USYM[type(f)] + to_text(f.operand)
    return f"({to_text(f.left)} {_SYM[type(f)]} {to_text(f.right)})"


def check_aps(f: Formula, aps: ApSet | Sequence[str]) -> None:
    names = set(aps)
    for n in atomic_propositions(f):
        if n not in names:
            raise UnknownAtomicProposition(f"unknown atomic proposition {n!r}")
