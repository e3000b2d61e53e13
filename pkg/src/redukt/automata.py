"""Transition-based generalized Büchi automata over ``2^AP``.

Edge labels are letter bitmasks (see :class:`~redukt.alphabet.ApSet`), so
conjunction is ``&`` and satisfiability is ``!= 0``.  Acceptance marks are
bitmasks too: a lasso run is accepting when the edges of its cycle jointly
carry every one of the ``mark_count`` marks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import _kernels
from .alphabet import ApSet
from .errors import AlphabetMismatch, ResourceLimitExceeded
from .words import CanonicalWord, canonicalize

DEFAULT_STATE_CAP = 2_000_000
Guard = Optional[Callable[[], None]]


class Edge(NamedTuple):
    src: int
    label: int
    marks: int
    dst: int


def lowest_letter(label: int) -> int:
    return (label & -label).bit_length() - 1


def letters_of(label: int) -> list[int]:
    out = []
    while label:
        low = label & -label
        out.append(low.bit_length() - 1)
        label ^= low
    return out


class Tgba:
    """Immutable TGBA.  States are ``0 .. num_states-1``.

    Unsatisfiable edges are dropped and edges sharing source, target and
    marks are merged by label disjunction.  A construction with no marks
    gets one mark placed on every edge.
    """

    __slots__ = ("aps", "num_states", "initial", "edges", "mark_count", "out", "names")

    def __init__(self, aps: ApSet, num_states: int, initial: int, edges: Iterable[Edge | tuple],
                 mark_count: int, names: Optional[Sequence[str]] = None):
        merged: dict[tuple[int, int, int], int] = {}
        universe = aps.universe
        for src, label, marks, dst in edges:
            label &= universe
            if label:
                key = (src, dst, marks)
                merged[key] = merged.get(key, 0) | label
        if mark_count == 0:
            mark_count = 1
            remarked: dict[tuple[int, int, int], int] = {}
            for (s, d, _), lab in merged.items():
                remarked[(s, d, 1)] = remarked.get((s, d, 1), 0) | lab
            merged = remarked
        self.aps = aps
        self.num_states = num_states
        self.initial = initial
        self.mark_count = mark_count
        self.edges = tuple(Edge(s, lab, m, d) for (s, d, m), lab in sorted(merged.items()))
        out: list[list[Edge]] = [[] for _ in range(num_states)]
        for e in self.edges:
            out[e.src].append(e)
        self.out = tuple(tuple(o) for o in out)
        self.names = tuple(names) if names is not None else None

    @property
    def full_marks(self) -> int:
        return (1 << self.mark_count) - 1

    def __repr__(self) -> str:
        return (f"Tgba(states={self.num_states}, edges={len(self.edges)}, "
                f"marks={self.mark_count}, aps={list(self.aps.names)})")


@dataclass(frozen=True)
class LassoWitness:
    """Accepting lasso run: the word plus the edges taken to read it."""

    word: CanonicalWord
    prefix_edges: tuple[Edge, ...]
    cycle_edges: tuple[Edge, ...]

    @property
    def prefix_states(self) -> tuple[int, ...]:
        return tuple(e.src for e in self.prefix_edges)

    @property
    def cycle_states(self) -> tuple[int, ...]:
        return tuple(e.src for e in self.cycle_edges)


@dataclass(frozen=True)
class EmptinessResult:
    empty: bool
    witness: Optional[LassoWitness]
    states: int


def _same_aps(a: Tgba, b: Tgba) -> None:
    if a.aps != b.aps:
        raise AlphabetMismatch(f"automata over {list(a.aps.names)} and {list(b.aps.names)}")


def universal(aps: ApSet) -> Tgba:
    return Tgba(aps, 1, 0, [Edge(0, aps.universe, 1, 0)], 1)


def product(a: Tgba, b: Tgba, max_states: int = DEFAULT_STATE_CAP, guard: Guard = None) -> Tgba:
    """Synchronous product; marks of ``b`` are shifted past those of ``a``."""
    _same_aps(a, b)
    shift = a.mark_count
    index = {(a.initial, b.initial): 0}
    pairs = [(a.initial, b.initial)]
    edges = []
    i = 0
    while i < len(pairs):
        if guard is not None and i & 1023 == 0:
            guard()
        qa, qb = pairs[i]
        for ea in a.out[qa]:
            for eb in b.out[qb]:
                lab = ea.label & eb.label
                if not lab:
                    continue
                key = (ea.dst, eb.dst)
                j = index.get(key)
                if j is None:
                    j = len(pairs)
                    if j >= max_states:
                        raise ResourceLimitExceeded(f"product exceeds {max_states} states")
                    index[key] = j
                    pairs.append(key)
                edges.append((i, lab, ea.marks | eb.marks << shift, j))
        i += 1
    return Tgba(a.aps, len(pairs), 0, edges, a.mark_count + b.mark_count)


def cl(a: Tgba, max_pairs: int = DEFAULT_STATE_CAP) -> Tgba:
    """Closure accepting every word shorter than or equal to a word of ``a``.

    Saturates the rule ``x -l1,M1-> y -l2,M2-> z  ==>  x -(l1&l2),(M1|M2)-> z``,
    computed letter by letter: for each letter, every path of one or more
    edges readable with that letter collapses into a single edge carrying
    the union of the path's marks.  Edges whose marks are dominated by a
    parallel edge for the same letter are omitted.
    """
    edges = []
    budget = max_pairs
    for letter in a.aps.letters:
        bit = 1 << letter
        succ = [[(e.marks, e.dst) for e in out if e.label & bit] for out in a.out]
        for x in range(a.num_states):
            seen = set(succ[x])
            todo = list(seen)
            while todo:
                m, y = todo.pop()
                for m2, z in succ[y]:
                    item = (m | m2, z)
                    if item not in seen:
                        seen.add(item)
                        todo.append(item)
            budget -= len(seen)
            if budget < 0:
                raise ResourceLimitExceeded(f"cl saturation exceeds {max_pairs} pairs")
            best: dict[int, list[int]] = {}
            for m, y in seen:
                best.setdefault(y, []).append(m)
            for y, ms in best.items():
                for m in ms:
                    if not any(o != m and o & m == m for o in ms):
                        edges.append((x, bit, m, y))
    return Tgba(a.aps, a.num_states, a.initial, edges, a.mark_count)


def sl(a: Tgba, max_states: int = DEFAULT_STATE_CAP) -> Tgba:
    """Self-loopization accepting every word longer than or equal to a word of ``a``.

    Each edge ``x -l,M-> y`` becomes, for every letter ``c`` of ``l``, an edge
    into a copy ``(y, c)`` remembering the letter just read.  That copy has a
    mark-free self-loop on ``c`` (finite extra stutter only, since a cycle
    made of it alone misses every mark) and reproduces the outgoing edges of ``y``.
    """
    index: dict[tuple[int, int], int] = {}
    origin = [a.initial]
    edges = []
    i = 0
    while i < len(origin):
        x = origin[i]
        for e in a.out[x]:
            for c in letters_of(e.label):
                key = (e.dst, c)
                j = index.get(key)
                if j is None:
                    j = len(origin)
                    if j >= max_states:
                        raise ResourceLimitExceeded(f"sl exceeds {max_states} states")
                    index[key] = j
                    origin.append(e.dst)
                    edges.append((j, 1 << c, 0, j))
                edges.append((i, 1 << c, e.marks, j))
        i += 1
    return Tgba(a.aps, len(origin), 0, edges, a.mark_count)


def _reachable(a: Tgba) -> list[int]:
    order = [a.initial]
    seen = {a.initial}
    for s in order:
        for e in a.out[s]:
            if e.dst not in seen:
                seen.add(e.dst)
                order.append(e.dst)
    return order


def _accepting_components(n: int, src: list[int], dst: list[int], marks: list[int], full: int):
    """SCC labels and the set of components that hold an accepting cycle."""
    order = np.argsort(np.asarray(src, dtype=np.int64), kind="stable")
    src_a = np.asarray(src, dtype=np.int64)[order]
    dst_a = np.asarray(dst, dtype=np.int64)[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src_a + 1, 1)
    np.cumsum(indptr, out=indptr)
    ncomp, comp = _kernels.scc(indptr, dst_a)
    if full < 1 << 62:
        acc, internal = _kernels.component_marks(src_a, dst_a, np.asarray(marks, dtype=np.int64)[order],
                                                 comp, ncomp)
        good = {int(c) for c in np.flatnonzero(internal & (acc == full))}
    else:
        acc_py = [0] * ncomp
        for s, d, m in zip(src, dst, marks):
            if comp[s] == comp[d]:
                acc_py[comp[s]] |= m
        good = {c for c in range(ncomp) if acc_py[c] == full}
    return comp, good


def _bfs_path(start: int, goal: Callable[[Edge], bool], out, allowed) -> Optional[list[Edge]]:
    """Shortest edge path from ``start`` whose last edge satisfies ``goal``."""
    parent: dict[int, Optional[Edge]] = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e in out[u]:
            if not allowed(e):
                continue
            if goal(e):
                path = [e]
                v = u
                while parent[v] is not None:
                    path.append(parent[v])
                    v = parent[v].src
                return path[::-1]
            if e.dst not in parent:
                parent[e.dst] = e
                queue.append(e.dst)
    return None


def emptiness_check(a: Tgba) -> EmptinessResult:
    """SCC-based emptiness with a deterministic lasso witness."""
    states = _reachable(a)
    local = {s: i for i, s in enumerate(states)}
    src, dst, marks = [], [], []
    for s in states:
        for e in a.out[s]:
            src.append(local[s])
            dst.append(local[e.dst])
            marks.append(e.marks)
    comp, good = _accepting_components(len(states), src, dst, marks, a.full_marks)
    if not good:
        return EmptinessResult(True, None, len(states))
    target = min(good)
    comp_of = {s: int(comp[local[s]]) for s in states}
    if comp_of[a.initial] == target:
        prefix: list[Edge] = []
        entry = a.initial
    else:
        prefix = _bfs_path(a.initial, lambda e: comp_of[e.dst] == target, a.out, lambda e: True)
        entry = prefix[-1].dst
    inside = lambda e: comp_of[e.src] == target and comp_of[e.dst] == target  # noqa: E731
    cycle: list[Edge] = []
    need = a.full_marks
    cur = entry
    while need:
        want = need
        seg = _bfs_path(cur, lambda e: bool(e.marks & want), a.out, inside)
        cycle += seg
        for e in seg:
            need &= ~e.marks
        cur = cycle[-1].dst
    if cur != entry:
        cycle += _bfs_path(cur, lambda e: e.dst == entry, a.out, inside)
    word = canonicalize([lowest_letter(e.label) for e in prefix],
                        [lowest_letter(e.label) for e in cycle], a.aps.letters)
    return EmptinessResult(False, LassoWitness(word, tuple(prefix), tuple(cycle)), len(states))


def is_empty(a: Tgba) -> bool:
    return emptiness_check(a).empty


def _check_word(w: CanonicalWord, aps: ApSet) -> None:
    if any(not isinstance(c, int) or not 0 <= c < aps.size for c in w.letters):
        raise AlphabetMismatch(f"word is not over 2^{list(aps.names)}")


def member(w: CanonicalWord, a: Tgba) -> bool:
    """Whether ``w`` is accepted; the product with the word lasso, specialised."""
    _check_word(w, a.aps)
    letters = w.letters
    n = len(letters)
    index = {(0, a.initial): 0}
    nodes = [(0, a.initial)]
    src, dst, marks = [], [], []
    i = 0
    while i < len(nodes):
        pos, q = nodes[i]
        bit = 1 << letters[pos]
        nxt = pos + 1 if pos + 1 < n else len(w.prefix)
        for e in a.out[q]:
            if e.label & bit:
                key = (nxt, e.dst)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(nodes)
                    nodes.append(key)
                src.append(i)
                dst.append(j)
                marks.append(e.marks)
        i += 1
    if not src:
        return False
    _, good = _accepting_components(len(nodes), src, dst, marks, a.full_marks)
    return bool(good)


def word_to_tgba(w: CanonicalWord, aps: ApSet) -> Tgba:
    """Lasso automaton whose language is exactly ``{w}``."""
    _check_word(w, aps)
    n = len(w)
    edges = [(i, 1 << w.letters[i], 1 if i == n - 1 else 0, w.successor(i)) for i in range(n)]
    return Tgba(aps, n, 0, edges, 1)


def kripke_to_tgba(ks) -> Tgba:
    """Automaton whose language is the run language of a Kripke structure.

    Each Kripke transition ``s -> s'`` reads the valuation of ``s`` and
    carries the single mark.
    """
    edges = [(s, 1 << ks.labels[s], 1, t) for s in range(ks.num_states) for t in ks.succ[s]]
    return Tgba(ks.aps, ks.num_states, ks.initial, edges, 1)


def format_label(label: int, aps: ApSet) -> str:
    if label == aps.universe:
        return "true"
    return " | ".join(aps.format_letter(c) for c in letters_of(label))


def to_dot(a: Tgba, name: str = "tgba") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point];', f"  init -> {a.initial};"]
    for s in range(a.num_states):
        tag = a.names[s] if a.names is not None else str(s)
        lines.append(f'  {s} [shape=circle, label="{tag}"];')
    for e in a.edges:
        ms = ",".join(str(k) for k in range(a.mark_count) if e.marks >> k & 1)
        lab = format_label(e.label, a.aps) + (f" {{{ms}}}" if ms else "")
        lines.append(f'  {e.src} -> {e.dst} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
