"""Recursive-descent parser for the LTL text syntax.

Precedence from tightest to loosest: ``! X F G``, ``U R`` (right
associative), ``&``, ``|``, ``->`` (right associative), ``<->``.
``a <-> b`` is desugared to ``(a & b) | (!a & !b)``.
"""
from __future__ import annotations

import re
from typing import Optional, Sequence

from ..errors import LtlSyntaxError, UnknownAtomicProposition
from .syntax import (FALSE, TRUE, And, Ap, ApSet, Finally, Formula, Globally,
                     Implies, Next, Not, Or, Release, Until)

_TOKEN = re.compile(r"\s*(?:(<->|->|&&|\|\||[!~&|()])|([A-Za-z_][A-Za-z0-9_]*))")
_UNARY = {"!": Not, "~": Not, "X": Next, "F": Finally, "G": Globally}
_KEYWORDS = {"X", "F", "G", "U", "R", "true", "false"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LtlSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(1) or m.group(2)
        tokens.append(({"&&": "&", "||": "|"}.get(tok, tok), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Optional[set[str]]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        tok, pos = self.tokens[self.i]
        raise LtlSyntaxError(f"{message}, found {tok!r}", pos)

    def parse(self) -> Formula:
        f = self.equiv()
        if self.peek() != "<eof>":
            self.fail("expected end of formula")
        return f

    def equiv(self) -> Formula:
        f = self.implies()
        while self.peek() == "<->":
            self.take()
            g = self.implies()
            f = Or(And(f, g), And(Not(f), Not(g)))
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.temporal()
        while self.peek() == "&":
            self.take()
            f = And(f, self.temporal())
        return f

    def temporal(self) -> Formula:
        f = self.unary()
        if self.peek() in ("U", "R"):
            op = Until if self.take()[0] == "U" else Release
            return op(f, self.temporal())
        return f

    def unary(self) -> Formula:
        tok, pos = self.tokens[self.i]
        if tok in _UNARY:
            self.take()
            return _UNARY[tok](self.unary())
        if tok == "(":
            self.take()
            f = self.equiv()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok[0].isalpha() or tok[0] == "_":
            if tok in _KEYWORDS:
                self.fail("expected an operand")
            if self.names is not None and tok not in self.names:
                m = re.fullmatch(r"([XFG]+)(\w+)", tok)
                if m and m.group(2) in self.names:
                    # glued operator prefix such as ``XXq``
                    self.take()
                    f: Formula = Ap(m.group(2))
                    for op in reversed(m.group(1)):
                        f = _UNARY[op](f)
                    return f
                raise UnknownAtomicProposition(f"unknown atomic proposition {tok!r} at offset {pos}")
            self.take()
            return Ap(tok)
        self.fail("expected an operand")


def parse_formula(text: str, aps: ApSet | Sequence[str] | None = None) -> Formula:
    """Parse ``text``; identifiers must belong to ``aps`` when it is given."""
    names = set(aps) if aps is not None else None
    return _Parser(text, names).parse()


def read_suite(text: str, aps: ApSet | Sequence[str] | None = None) -> list[tuple[str, Formula]]:
    """One formula per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((line, parse_formula(line, aps)))
    return out
