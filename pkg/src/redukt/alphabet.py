"""Atomic proposition sets, letters and labels."""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import UnknownAtomicProposition


class ApSet:
    """Ordered atomic propositions; letter ``a`` of ``2^AP`` is a bitmask.

    Bit ``i`` of a letter is set when ``names[i]`` holds.  A *label* (a
    boolean predicate over AP) is stored as a bitmask over letters: bit
    ``a`` of a label is set when letter ``a`` satisfies it.
    """

    __slots__ = ("names", "_index", "_ap_masks")

    MAX_APS = 10

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate atomic propositions in {names}")
        if len(names) > self.MAX_APS:
            raise ValueError(f"at most {self.MAX_APS} atomic propositions are supported")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._ap_masks = tuple(
            sum(1 << a for a in range(self.size) if a >> i & 1) for i in range(len(names))
        )

    @property
    def size(self) -> int:
        """Number of letters, ``2^|AP|``."""
        return 1 << len(self.names)

    @property
    def letters(self) -> range:
        return range(self.size)

    @property
    def universe(self) -> int:
        """Label satisfied by every letter."""
        return (1 << self.size) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAtomicProposition(f"unknown atomic proposition {name!r}") from None

    def holds(self, name: str) -> int:
        """Label of the letters where ``name`` is true."""
        return self._ap_masks[self.index(name)]

    def letter(self, true_names: Iterable[str]) -> int:
        return sum(1 << self.index(n) for n in true_names)

    def format_letter(self, a: int) -> str:
        return "{" + ",".join(n for i, n in enumerate(self.names) if a >> i & 1) + "}"

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ApSet) and other.names == self.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ApSet({list(self.names)!r})"
