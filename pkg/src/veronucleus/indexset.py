"""Subsets of {0, ..., n} naming coordinate base points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, init=False)
class IndexSet:
    """A sorted, duplicate-free subset of ``{0, ..., n}``."""

    n: int
    members: tuple[int, ...]

    def __init__(self, n: int, members: Iterable[int] = ()):
        ms = tuple(sorted(set(int(m) for m in members)))
        if ms and (ms[0] < 0 or ms[-1] > n):
            raise ValueError(f"indices {ms} not within 0..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "IndexSet":
        return cls(n, (i for i in range(n + 1) if mask >> i & 1))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, j) -> bool:
        return j in self.members

    def __or__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.n, self.members + other.members)

    def __le__(self, other: "IndexSet") -> bool:
        self._check(other)
        return set(self.members) <= set(other.members)

    def __lt__(self, other: "IndexSet") -> bool:
        return self <= other and self != other

    def _check(self, other: "IndexSet") -> None:
        if self.n != other.n:
            raise ValueError(f"index sets for n={self.n} and n={other.n}")

    def __repr__(self):
        return f"IndexSet(n={self.n}, {list(self.members)})"
