"""On-the-fly tableau translation of LTL into a TGBA.

States are sets of NNF obligations.  Expanding a set yields *covers*: the
literals that must hold now, the obligations for the next position, and
the Until subformulas whose fulfilment is postponed on this step.  One
acceptance mark is allocated per Until (``F g`` counts as ``true U g``); an
edge carries the mark of every Until it does not postpone.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from ..alphabet import ApSet
from ..automata import DEFAULT_STATE_CAP, Tgba
from ..errors import ResourceLimitExceeded
from .syntax import (And, Ap, Bottom, Finally, Formula, Globally, Next, Not, Or,
                     Release, Top, Until, check_aps, subformulas, to_nnf)


class Cover(NamedTuple):
    pos: frozenset   # propositions required true
    neg: frozenset   # propositions required false
    nxt: frozenset   # obligations for the next position
    pending: frozenset  # eventualities postponed on this step


_EMPTY = frozenset()
_TRUE_COVER = Cover(_EMPTY, _EMPTY, _EMPTY, _EMPTY)


def _conj(a: Cover, b: Cover) -> Cover | None:
    pos, neg = a.pos | b.pos, a.neg | b.neg
    if pos & neg:
        return None
    return Cover(pos, neg, a.nxt | b.nxt, a.pending | b.pending)


def _cross(xs: list[Cover], ys: list[Cover]) -> list[Cover]:
    out = []
    seen = set()
    for x in xs:
        for y in ys:
            c = _conj(x, y)
            if c is not None and c not in seen:
                seen.add(c)
                out.append(c)
    return out


@lru_cache(maxsize=None)
def _expand(f: Formula) -> tuple[Cover, ...]:
    if isinstance(f, Top):
        return (_TRUE_COVER,)
    if isinstance(f, Bottom):
        return ()
    if isinstance(f, Ap):
        return (Cover(frozenset([f.name]), _EMPTY, _EMPTY, _EMPTY),)
    if isinstance(f, Not):
        return (Cover(_EMPTY, frozenset([f.operand.name]), _EMPTY, _EMPTY),)
    if isinstance(f, And):
        return tuple(_cross(list(_expand(f.left)), list(_expand(f.right))))
    if isinstance(f, Or):
        return tuple(dict.fromkeys(_expand(f.left) + _expand(f.right)))
    if isinstance(f, Next):
        return (Cover(_EMPTY, _EMPTY, frozenset([f.operand]), _EMPTY),)
    if isinstance(f, Finally):
        later = Cover(_EMPTY, _EMPTY, frozenset([f]), frozenset([f]))
        return tuple(dict.fromkeys(_expand(f.operand) + (later,)))
    if isinstance(f, Globally):
        again = Cover(_EMPTY, _EMPTY, frozenset([f]), _EMPTY)
        return tuple(_cross(list(_expand(f.operand)), [again]))
    if isinstance(f, Until):
        later = Cover(_EMPTY, _EMPTY, frozenset([f]), frozenset([f]))
        return tuple(dict.fromkeys(_expand(f.right) + tuple(_cross(list(_expand(f.left)), [later]))))
    if isinstance(f, Release):
        now = _cross(list(_expand(f.left)), list(_expand(f.right)))
        again = _cross(list(_expand(f.right)), [Cover(_EMPTY, _EMPTY, frozenset([f]), _EMPTY)])
        return tuple(dict.fromkeys(now + again))
    raise TypeError(f"formula not in negation normal form: {f!r}")


def _expand_set(obligations: frozenset) -> list[Cover]:
    covers = [_TRUE_COVER]
    for f in sorted(obligations, key=repr):
        covers = _cross(covers, list(_expand(f)))
        if not covers:
            break
    return covers


def translate(f: Formula, aps: ApSet, max_states: int = DEFAULT_STATE_CAP) -> Tgba:
    """TGBA accepting exactly the words satisfying ``f``."""
    check_aps(f, aps)
    nnf = to_nnf(f)
    eventualities = sorted({g for g in subformulas(nnf) if isinstance(g, (Until, Finally))}, key=repr)
    mark_of = {g: 1 << i for i, g in enumerate(eventualities)}
    full = (1 << len(eventualities)) - 1
    start = frozenset() if isinstance(nnf, Top) else frozenset([nnf])
    index = {start: 0}
    order = [start]
    edges = []
    i = 0
    while i < len(order):
        for c in _expand_set(order[i]):
            label = aps.universe
            for name in c.pos:
                label &= aps.holds(name)
            for name in c.neg:
                label &= ~aps.holds(name)
            if not label:
                continue
            marks = full
            for g in c.pending:
                marks &= ~mark_of[g]
            j = index.get(c.nxt)
            if j is None:
                j = len(order)
                if j >= max_states:
                    raise ResourceLimitExceeded(f"translation exceeds {max_states} states")
                index[c.nxt] = j
                order.append(c.nxt)
            edges.append((i, label, marks, j))
        i += 1
    names = ["{" + ", ".join(sorted(map(str, s))) + "}" for s in order]
    return Tgba(aps, len(order), 0, edges, len(eventualities), names)
