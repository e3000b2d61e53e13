"""Ultimately periodic omega-words and the stutter orders on them.

Words are kept in lasso form ``prefix . cycle^omega``.  Letters may be any
hashable value; the model-checking code uses integers encoding a valuation
of the atomic propositions (bit ``i`` set means proposition ``i`` holds).

The *shorter than* order compares the run-length encodings of two words:
``w1 <= w2`` when both share the same sequence of distinct letters and every
repetition count of ``w1`` is at most the matching count of ``w2``.  A word
ending in an infinite repetition of one letter (a terminal omega block) is
never comparable to a word that keeps alternating forever.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Optional, Sequence

from .errors import AlphabetMismatch, InvalidWord

Letter = Hashable


@dataclass(frozen=True)
class CanonicalWord:
    """Unique lasso representation of an ultimately periodic word.

    Build instances with :func:`canonicalize`; the constructor does not
    normalise.  ``alphabet`` is informational and ignored by equality.
    """

    prefix: tuple
    cycle: tuple
    alphabet: Optional[frozenset] = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.prefix) + len(self.cycle)

    @property
    def is_terminal(self) -> bool:
        """True when the word ends in an infinite stutter of a single letter."""
        return len(self.cycle) == 1

    def successor(self, i: int) -> int:
        """Index of the position following lasso position ``i``."""
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    def letter(self, i: int) -> Letter:
        """Letter at absolute position ``i`` of the infinite word."""
        n = len(self.prefix)
        if i < n:
            return self.prefix[i]
        return self.cycle[(i - n) % len(self.cycle)]

    def unroll(self, length: int) -> list:
        return [self.letter(i) for i in range(length)]

    @property
    def letters(self) -> tuple:
        return self.prefix + self.cycle


@dataclass(frozen=True)
class RleView:
    """Run-length encoding: ``prefix`` blocks, then ``cycle`` blocks forever.

    For terminal words ``cycle`` is empty and ``omega`` holds the repeated
    letter; otherwise ``omega`` is None.
    """

    prefix: tuple[tuple[Letter, int], ...]
    cycle: tuple[tuple[Letter, int], ...]
    omega: Optional[Letter] = None

    @property
    def is_terminal(self) -> bool:
        return not self.cycle

    def block(self, i: int) -> tuple[Letter, int]:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]


def _primitive_root(cycle: tuple) -> tuple:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


def canonicalize(prefix: Iterable[Letter], cycle: Iterable[Letter],
                 alphabet: Optional[Iterable[Letter]] = None) -> CanonicalWord:
    """Normal form of the word ``prefix . cycle^omega``."""
    prefix = tuple(prefix)
    cycle = tuple(cycle)
    if not cycle:
        raise InvalidWord("the cycle of a lasso word must be nonempty")
    alpha = frozenset(alphabet) if alphabet is not None else None
    if alpha is not None:
        stray = set(prefix + cycle) - alpha
        if stray:
            raise AlphabetMismatch(f"letters {sorted(map(str, stray))} not in alphabet")
    cycle = _primitive_root(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        cycle = cycle[-1:] + cycle[:-1]
        prefix = prefix[:-1]
    return CanonicalWord(prefix, cycle, alpha)


def _runs(letters: Sequence[Letter]) -> list[list]:
    out: list[list] = []
    for a in letters:
        if out and out[-1][0] == a:
            out[-1][1] += 1
        else:
            out.append([a, 1])
    return out


def rle_view(w: CanonicalWord) -> RleView:
    if w.is_terminal:
        return RleView(tuple(map(tuple, _runs(w.prefix))), (), w.cycle[0])
    cyc = w.cycle
    # rotate the cycle to start on a block boundary
    k = next(i for i in range(len(cyc)) if cyc[i - 1] != cyc[i])
    pre = w.prefix + cyc[:k]
    cyc = cyc[k:] + cyc[:k]
    if pre and pre[-1] == cyc[0]:
        pre = pre + cyc
    return RleView(tuple(map(tuple, _runs(pre))), tuple(map(tuple, _runs(cyc))))


def _check_alphabets(w1: CanonicalWord, w2: CanonicalWord) -> None:
    if w1.alphabet is not None and w2.alphabet is not None and w1.alphabet != w2.alphabet:
        raise AlphabetMismatch("words are over different alphabets")


def shorter_than(w1: CanonicalWord, w2: CanonicalWord) -> bool:
    """Decide ``w1 <= w2`` in the shorter-than order."""
    _check_alphabets(w1, w2)
    r1, r2 = rle_view(w1), rle_view(w2)
    if r1.is_terminal != r2.is_terminal:
        return False
    if r1.is_terminal:
        if r1.omega != r2.omega or len(r1.prefix) != len(r2.prefix):
            return False
        return all(a == b and n <= m for (a, n), (b, m) in zip(r1.prefix, r2.prefix))
    # both block sequences are periodic after `horizon` with period `period`
    period = math.lcm(len(r1.cycle), len(r2.cycle))
    horizon = max(len(r1.prefix), len(r2.prefix))
    for i in range(horizon + period):
        (a, n), (b, m) = r1.block(i), r2.block(i)
        if a != b or n > m:
            return False
    return True


def shortest_representative(w: CanonicalWord) -> CanonicalWord:
    r = rle_view(w)
    prefix = [a for a, _ in r.prefix]
    cycle = [r.omega] if r.is_terminal else [a for a, _ in r.cycle]
    return canonicalize(prefix, cycle, w.alphabet)


def stutter_equivalent(w1: CanonicalWord, w2: CanonicalWord) -> bool:
    _check_alphabets(w1, w2)
    return shortest_representative(w1) == shortest_representative(w2)


def _offsets(bounds: Sequence[int], budget: int) -> Iterator[tuple[int, ...]]:
    """Vectors ``d`` with ``0 <= d[i] <= bounds[i]`` and ``sum(d) <= budget``."""
    if not bounds:
        yield ()
        return
    for d in range(min(bounds[0], budget) + 1):
        for rest in _offsets(bounds[1:], budget - d):
            yield (d,) + rest


def _expand(blocks: Iterable[tuple[Letter, int]]) -> list:
    return [a for a, n in blocks for _ in range(n)]


def enumerate_neighbors(w: CanonicalWord, direction: str, budget: int) -> set[CanonicalWord]:
    """Words strictly below (``"shorter"``) or above (``"longer"``) ``w``.

    Only finitely many exponents change.  For non-terminal words the cycle
    may first be unrolled into the prefix so that blocks of the periodic
    part can be modified once; every unrolled copy costs one unit of
    ``budget``, as does every unit of exponent change.
    """
    if direction not in ("shorter", "longer"):
        raise ValueError(f"direction must be 'shorter' or 'longer', not {direction!r}")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    r = rle_view(w)
    tail = [r.omega] if r.is_terminal else _expand(r.cycle)
    max_unroll = 0 if r.is_terminal else budget
    out: set[CanonicalWord] = set()
    for copies in range(max_unroll + 1):
        blocks = list(r.prefix) + list(r.cycle) * copies
        left = budget - copies
        if direction == "shorter":
            bounds = [n - 1 for _, n in blocks]
        else:
            bounds = [left] * len(blocks)
        for delta in _offsets(bounds, left):
            if not any(delta):
                continue
            sign = -1 if direction == "shorter" else 1
            pre = _expand((a, n + sign * d) for (a, n), d in zip(blocks, delta))
            out.add(canonicalize(pre, tail, w.alphabet))
    out.discard(w)
    return out


def all_lassos(alphabet: Sequence[Letter], max_positions: int) -> list[CanonicalWord]:
    """Every canonical word whose lasso has at most ``max_positions`` letters.

    Output order is deterministic (by size, then lexicographic in the order
    of ``alphabet``).
    """
    alphabet = list(alphabet)
    seen: set[CanonicalWord] = set()
    out: list[CanonicalWord] = []
    for total in range(1, max_positions + 1):
        for letters in itertools.product(alphabet, repeat=total):
            for cut in range(total):
                w = canonicalize(letters[:cut], letters[cut:], alphabet)
                if w not in seen:
                    seen.add(w)
                    out.append(w)
    return out


def _format_letter(a: Letter, names: Optional[Sequence[str]]) -> str:
    if names is None:
        return str(a)
    return "{" + ",".join(n for i, n in enumerate(names) if a >> i & 1) + "}"


def format_word(w: CanonicalWord, names: Optional[Sequence[str]] = None) -> str:
    """Debug text form, e.g. ``{p,q}.{q} | ({})``.

    With ``names`` (atomic proposition names in bit order) integer letters
    are shown as proposition sets; otherwise ``str`` of each letter is used.
    """
    cyc = "(" + ".".join(_format_letter(a, names) for a in w.cycle) + ")"
    if not w.prefix:
        return cyc
    return ".".join(_format_letter(a, names) for a in w.prefix) + " | " + cyc


def _parse_letter(tok: str, names: Optional[Sequence[str]]) -> Letter:
    tok = tok.strip()
    if names is None:
        return tok
    if not (tok.startswith("{") and tok.endswith("}")):
        raise InvalidWord(f"expected a proposition set, got {tok!r}")
    bits = 0
    for n in filter(None, (s.strip() for s in tok[1:-1].split(","))):
        if n not in names:
            raise AlphabetMismatch(f"unknown proposition {n!r}")
        bits |= 1 << list(names).index(n)
    return bits


def parse_word(text: str, names: Optional[Sequence[str]] = None) -> CanonicalWord:
    """Inverse of :func:`format_word`."""
    text = text.strip()
    head, sep, tail = text.rpartition("|")
    if not sep:
        head, tail = "", text
    tail = tail.strip()
    if not (tail.startswith("(") and tail.endswith(")")):
        raise InvalidWord(f"cycle must be parenthesised: {text!r}")

    def letters(part: str) -> list:
        part = part.strip()
        return [_parse_letter(t, names) for t in part.split(".")] if part else []

    alphabet = range(1 << len(names)) if names is not None else None
    return canonicalize(letters(head), letters(tail[1:-1]), alphabet)
