"""Direct LTL semantics on lasso words; the reference oracle for translation."""
from __future__ import annotations

from typing import Sequence

from ..errors import AlphabetMismatch
from ..words import CanonicalWord
from .syntax import (And, Ap, ApSet, Bottom, Finally, Formula, Globally,
                     Implies, Next, Not, Or, Release, Top, Until)


def _fixpoint(n: int, succ: Sequence[int], init: bool, step) -> list[bool]:
    val = [init] * n
    # Kleene iteration; n + 1 rounds reach the fixpoint on an n-position lasso
    for _ in range(n + 1):
        new = [step(i, val[succ[i]]) for i in range(n)]
        if new == val:
            break
        val = new
    return val


def eval_lasso(f: Formula, prefix: Sequence[int], cycle: Sequence[int], aps: ApSet) -> list[bool]:
    """Truth value of ``f`` at every position of ``prefix . cycle^omega``."""
    letters = list(prefix) + list(cycle)
    n = len(letters)
    if not cycle:
        raise ValueError("empty cycle")
    if any(not 0 <= a < aps.size for a in letters):
        raise AlphabetMismatch(f"word letter outside 2^{list(aps.names)}")
    succ = [i + 1 for i in range(n - 1)] + [len(prefix)]
    memo: dict[Formula, list[bool]] = {}

    def ev(g: Formula) -> list[bool]:
        if g in memo:
            return memo[g]
        if isinstance(g, Top):
            r = [True] * n
        elif isinstance(g, Bottom):
            r = [False] * n
        elif isinstance(g, Ap):
            bit = aps.index(g.name)
            r = [bool(a >> bit & 1) for a in letters]
        elif isinstance(g, Not):
            r = [not v for v in ev(g.operand)]
        elif isinstance(g, And):
            r = [x and y for x, y in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Or):
            r = [x or y for x, y in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Implies):
            r = [(not x) or y for x, y in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Next):
            a = ev(g.operand)
            r = [a[succ[i]] for i in range(n)]
        elif isinstance(g, Finally):
            a = ev(g.operand)
            r = _fixpoint(n, succ, False, lambda i, nxt: a[i] or nxt)
        elif isinstance(g, Globally):
            a = ev(g.operand)
            r = _fixpoint(n, succ, True, lambda i, nxt: a[i] and nxt)
        elif isinstance(g, Until):
            a, b = ev(g.left), ev(g.right)
            r = _fixpoint(n, succ, False, lambda i, nxt: b[i] or (a[i] and nxt))
        elif isinstance(g, Release):
            a, b = ev(g.left), ev(g.right)
            r = _fixpoint(n, succ, True, lambda i, nxt: b[i] and (a[i] or nxt))
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[g] = r
        return r

    return ev(f)


def eval_on_word(f: Formula, w: CanonicalWord, aps: ApSet) -> bool:
    """Whether ``w`` satisfies ``f`` at position 0."""
    return eval_lasso(f, w.prefix, w.cycle, aps)[0]
