"""Explicit reachability graphs seen as Kripke structures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .. import _kernels
from ..alphabet import ApSet
from ..errors import ResourceLimitExceeded
from ..words import CanonicalWord, canonicalize
from .model import _OPS, AtomicPropDef, PetriNet, ap_set

DEFAULT_STATE_LIMIT = 1_000_000


@dataclass(frozen=True)
class KripkeStructure:
    """Reachable markings in BFS order; state 0 is the initial marking.

    Deadlocked markings carry a self-loop so that every state has a
    successor.
    """

    aps: ApSet
    places: tuple[str, ...]
    markings: tuple[tuple[int, ...], ...]
    succ: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]
    initial: int = 0

    @property
    def num_states(self) -> int:
        return len(self.markings)

    @property
    def num_transitions(self) -> int:
        return sum(len(s) for s in self.succ)


def successors(net: PetriNet, marking: Sequence[int]) -> list[tuple[str, tuple[int, ...]]]:
    """Enabled transitions of ``marking`` with the markings they lead to."""
    pre, post = net.matrices
    m = np.asarray(marking, dtype=np.int64)
    idx, out = _kernels.fire(m, pre, post)
    return [(net.transitions[int(t)].name, tuple(int(x) for x in row)) for t, row in zip(idx, out)]


def _label_matrix(net: PetriNet, props: Sequence[AtomicPropDef]) -> np.ndarray:
    coeffs = np.zeros((len(props), len(net.places)), dtype=np.int64)
    for i, d in enumerate(props):
        for c, p in d.terms:
            coeffs[i, net.place_index[p]] += c
    return coeffs


def label_of(net: PetriNet, props: Sequence[AtomicPropDef], marking: Sequence[int]) -> int:
    return sum(1 << i for i, d in enumerate(props) if d.evaluate(net, marking))


def build_kripke(net: PetriNet, props: Sequence[AtomicPropDef],
                 state_limit: int = DEFAULT_STATE_LIMIT,
                 guard: Optional[Callable[[], None]] = None) -> KripkeStructure:
    """Breadth-first reachability graph; raises on more than ``state_limit`` markings."""
    if state_limit < 1:
        raise ValueError("state_limit must be at least 1")
    pre, post = net.matrices
    coeffs = _label_matrix(net, props)
    ops = [d.op for d in props]
    consts = [d.constant for d in props]

    start = tuple(net.initial)
    index = {start: 0}
    markings = [start]
    succ: list[tuple[int, ...]] = []
    labels: list[int] = []
    i = 0
    while i < len(markings):
        if guard is not None and i & 255 == 0:
            guard()
        m = np.asarray(markings[i], dtype=np.int64)
        values = coeffs @ m if len(props) else ()
        labels.append(sum(1 << k for k, (v, op, c) in enumerate(zip(values, ops, consts)) if _OPS[op](int(v), c)))
        _, out = _kernels.fire(m, pre, post)
        nxt: dict[int, None] = {}
        for row in out:
            key = tuple(row.tolist())
            j = index.get(key)
            if j is None:
                j = len(markings)
                if j >= state_limit:
                    raise ResourceLimitExceeded(f"more than {state_limit} reachable markings")
                index[key] = j
                markings.append(key)
            nxt.setdefault(j)
        succ.append(tuple(nxt) if nxt else (i,))
        i += 1
    return KripkeStructure(ap_set(props), net.places, tuple(markings), tuple(succ), tuple(labels))


def kripke_lassos(ks: KripkeStructure, max_positions: int,
                  max_paths: int = 2_000_000) -> tuple[set[CanonicalWord], bool]:
    """Canonical words of all state lassos with at most ``max_positions`` states.

    Returns the word set and whether enumeration finished within
    ``max_paths`` explored paths.
    """
    words: set[CanonicalWord] = set()
    alphabet = ks.aps.letters
    explored = 0
    path = [ks.initial]
    letters = [ks.labels[ks.initial]]
    stack = [iter(ks.succ[ks.initial])]

    def emit():
        last = path[-1]
        for j, s in enumerate(path):
            if s in ks.succ[last]:
                words.add(canonicalize(letters[:j], letters[j:], alphabet))

    emit()
    while stack:
        if explored >= max_paths:
            return words, False
        if len(path) >= max_positions:
            stack.pop()
            path.pop()
            letters.pop()
            continue
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
            letters.pop()
            continue
        explored += 1
        path.append(nxt)
        letters.append(ks.labels[nxt])
        stack.append(iter(ks.succ[nxt]))
        emit()
    return words, True


def kripke_to_dot(ks: KripkeStructure, name: str = "kripke") -> str:
    lines = [f"digraph {name} {{", '  init [shape=point];', f"  init -> {ks.initial};"]
    for s in range(ks.num_states):
        marked = ",".join(f"{p}={n}" for p, n in zip(ks.places, ks.markings[s]) if n)
        lines.append(f'  {s} [label="{ks.aps.format_letter(ks.labels[s])}\\n{marked}"];')
    for s, nxt in enumerate(ks.succ):
        for t in nxt:
            lines.append(f"  {s} -> {t};")
    lines.append("}")
    return "\n".join(lines) + "\n"
