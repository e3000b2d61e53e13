"""Place/transition nets, linear atomic propositions and the ``.rnet`` format.

``.rnet`` is line oriented; ``#`` starts a comment::

    net fig1
    pl a0 1
    pl X 0
    tr x1 a0 -> a1 X
    tr send b1*1 -> chan
    ap p = tok(X) = 0
    ap busy = tok(c1) + 2*tok(c2) >= 1
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..alphabet import ApSet
from ..errors import ModelSyntaxError

Arcs = tuple[tuple[str, int], ...]


def _arcs(mapping: Mapping[str, int] | Iterable[tuple[str, int]]) -> Arcs:
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    merged: dict[str, int] = {}
    for p, w in items:
        merged[p] = merged.get(p, 0) + w
    return tuple(sorted(merged.items()))


@dataclass(frozen=True)
class Transition:
    name: str
    pre: Arcs
    post: Arcs

    @classmethod
    def make(cls, name: str, pre, post) -> "Transition":
        return cls(name, _arcs(pre), _arcs(post))

    @property
    def pre_map(self) -> dict[str, int]:
        return dict(self.pre)

    @property
    def post_map(self) -> dict[str, int]:
        return dict(self.post)

    def effect(self, place: str) -> int:
        return self.post_map.get(place, 0) - self.pre_map.get(place, 0)


@dataclass(frozen=True)
class PetriNet:
    name: str
    places: tuple[str, ...]
    initial: tuple[int, ...]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        if len(set(self.places)) != len(self.places):
            raise ValueError("duplicate place names")
        if len({t.name for t in self.transitions}) != len(self.transitions):
            raise ValueError("duplicate transition names")
        known = set(self.places)
        for t in self.transitions:
            for p, w in t.pre + t.post:
                if p not in known:
                    raise ValueError(f"transition {t.name} references unknown place {p}")
                if w <= 0:
                    raise ValueError(f"transition {t.name} has nonpositive weight on {p}")

    @cached_property
    def place_index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.places)}

    @cached_property
    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """Pre and post incidence matrices, shape (transitions, places)."""
        pre = np.zeros((len(self.transitions), len(self.places)), dtype=np.int64)
        post = np.zeros_like(pre)
        idx = self.place_index
        for i, t in enumerate(self.transitions):
            for p, w in t.pre:
                pre[i, idx[p]] = w
            for p, w in t.post:
                post[i, idx[p]] = w
        return pre, post

    def tokens(self, place: str) -> int:
        return self.initial[self.place_index[place]]

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise KeyError(name)

    def producers(self, place: str) -> list[Transition]:
        return [t for t in self.transitions if place in t.post_map]

    def consumers(self, place: str) -> list[Transition]:
        return [t for t in self.transitions if place in t.pre_map]


_OPS = {"<": operator.lt, "<=": operator.le, "=": operator.eq, "==": operator.eq,
        ">=": operator.ge, ">": operator.gt, "!=": operator.ne}


@dataclass(frozen=True)
class AtomicPropDef:
    """``name`` holds when ``sum(coeff * tokens(place)) op constant``."""

    name: str
    terms: tuple[tuple[int, str], ...]
    op: str
    constant: int

    @property
    def places(self) -> set[str]:
        return {p for c, p in self.terms if c != 0}

    def evaluate(self, net: PetriNet, marking: Sequence[int]) -> bool:
        idx = net.place_index
        value = sum(c * marking[idx[p]] for c, p in self.terms)
        return _OPS[self.op](value, self.constant)


def ap_set(props: Sequence[AtomicPropDef]) -> ApSet:
    return ApSet(d.name for d in props)


def observed_places(props: Sequence[AtomicPropDef]) -> set[str]:
    out: set[str] = set()
    for d in props:
        out |= d.places
    return out


_NAME = r"[A-Za-z_][A-Za-z0-9_.']*"
_ARC = re.compile(rf"^({_NAME})(?:\*(-?\d+))?$")
_TERM = re.compile(rf"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?tok\(\s*({_NAME})\s*\)")
_AP = re.compile(rf"^({_NAME})\s*=\s*(.+?)\s*(<=|>=|==|!=|<|>|=)\s*(-?\d+)\s*$")


def _parse_arcs(words: list[str], lineno: int) -> list[tuple[str, int]]:
    out = []
    for w in words:
        m = _ARC.match(w)
        if not m:
            raise ModelSyntaxError(f"bad arc {w!r}", lineno)
        weight = int(m.group(2)) if m.group(2) is not None else 1
        if weight <= 0:
            raise ModelSyntaxError(f"arc weight must be positive in {w!r}", lineno)
        out.append((m.group(1), weight))
    return out


def _parse_linexpr(text: str, lineno: int) -> tuple[tuple[int, str], ...]:
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (terms and m.group(1) is None):
            raise ModelSyntaxError(f"bad linear expression {text!r}", lineno)
        coeff = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            coeff = -coeff
        terms.append((coeff, m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not terms:
        raise ModelSyntaxError("empty linear expression", lineno)
    return tuple(terms)


def parse_model(text: str) -> tuple[PetriNet, tuple[AtomicPropDef, ...]]:
    """Parse ``.rnet`` text into a net and its atomic proposition definitions."""
    name = "net"
    places: dict[str, int] = {}
    transitions: list[Transition] = []
    props: list[AtomicPropDef] = []
    pending_refs: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        rest = rest.strip()
        if kw == "net":
            name = rest or name
        elif kw == "pl":
            parts = rest.split()
            if len(parts) != 2 or not re.fullmatch(_NAME, parts[0]) or not re.fullmatch(r"\d+", parts[1]):
                raise ModelSyntaxError(f"expected 'pl <place> <tokens>', got {line!r}", lineno)
            if parts[0] in places:
                raise ModelSyntaxError(f"duplicate place {parts[0]!r}", lineno)
            places[parts[0]] = int(parts[1])
        elif kw == "tr":
            head, arrow, tail = rest.partition("->")
            words = head.split()
            if not arrow or not words:
                raise ModelSyntaxError(f"expected 'tr <name> <pre>... -> <post>...', got {line!r}", lineno)
            tname = words[0]
            if not re.fullmatch(_NAME, tname):
                raise ModelSyntaxError(f"bad transition name {tname!r}", lineno)
            if any(t.name == tname for t in transitions):
                raise ModelSyntaxError(f"duplicate transition {tname!r}", lineno)
            pre = _parse_arcs(words[1:], lineno)
            post = _parse_arcs(tail.split(), lineno)
            pending_refs += [(p, lineno) for p, _ in pre + post]
            transitions.append(Transition.make(tname, pre, post))
        elif kw == "ap":
            m = _AP.match(rest)
            if not m:
                raise ModelSyntaxError(f"expected 'ap <name> = <linexpr> <op> <int>', got {line!r}", lineno)
            terms = _parse_linexpr(m.group(2), lineno)
            if any(d.name == m.group(1) for d in props):
                raise ModelSyntaxError(f"duplicate atomic proposition {m.group(1)!r}", lineno)
            pending_refs += [(p, lineno) for _, p in terms]
            props.append(AtomicPropDef(m.group(1), terms, "=" if m.group(3) == "==" else m.group(3),
                                       int(m.group(4))))
        else:
            raise ModelSyntaxError(f"unknown keyword {kw!r}", lineno)
    for p, lineno in pending_refs:
        if p not in places:
            raise ModelSyntaxError(f"unknown place {p!r}", lineno)
    net = PetriNet(name, tuple(places), tuple(places.values()), tuple(transitions))
    return net, tuple(props)


def read_model(path) -> tuple[PetriNet, tuple[AtomicPropDef, ...]]:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def _fmt_arcs(arcs: Arcs) -> str:
    return " ".join(p if w == 1 else f"{p}*{w}" for p, w in arcs)


def _fmt_linexpr(terms) -> str:
    out = []
    for i, (c, p) in enumerate(terms):
        sign = "-" if c < 0 else ("+" if i else "")
        mag = abs(c)
        body = f"tok({p})" if mag == 1 else f"{mag}*tok({p})"
        out.append(f"{sign} {body}".strip() if i else f"{sign}{body}")
    return " ".join(out)


def format_model(net: PetriNet, props: Sequence[AtomicPropDef] = ()) -> str:
    lines = [f"net {net.name}"]
    lines += [f"pl {p} {m}" for p, m in zip(net.places, net.initial)]
    for t in net.transitions:
        lines.append(f"tr {t.name} {_fmt_arcs(t.pre)} -> {_fmt_arcs(t.post)}".replace("  ", " ").rstrip())
    lines += [f"ap {d.name} = {_fmt_linexpr(d.terms)} {d.op} {d.constant}" for d in props]
    return "\n".join(lines) + "\n"
