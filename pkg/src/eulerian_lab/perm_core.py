"""
Permutations of [n] in one-line notation and their positional statistics.

All interfaces are 1-indexed: ``p(i)`` is the value at position ``i``.

>>> p = new_permutation([6, 2, 1, 4, 5, 7, 3])
>>> inverse(p).values
(3, 2, 7, 4, 5, 1, 6)
>>> positions_stat(p, StatKind(StatFamily.R_EXCEDANCE, 1))
[1, 6]
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterator, Sequence

from .exceptions import BoundError, PermutationError

__all__ = [
    "DEFAULT_ENUMERATION_BOUND",
    "Permutation", "StatFamily", "StatKind",
    "new_permutation", "identity", "inverse",
    "count_stat", "positions_stat", "stat_count_raw",
    "rotate_to_end", "enumerate_permutations",
]

DEFAULT_ENUMERATION_BOUND = 11


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n stored as its one-line word."""
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        n = len(values)
        if n == 0:
            raise PermutationError("empty permutation")
        seen = set()
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool):
                raise PermutationError(f"non-integer entry {v!r}")
            if v < 1 or v > n:
                raise PermutationError(f"entry {v} out of range 1..{n}")
            if v in seen:
                raise PermutationError(f"duplicate entry {v}")
            seen.add(v)

    @classmethod
    def _trusted(cls, values: tuple[int, ...]) -> Permutation:
        # skips validation; only for words produced by this package
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", values)
        return obj

    def __call__(self, i: int) -> int:
        if i < 1 or i > len(self.values):
            raise IndexError(f"position {i} out of range 1..{len(self.values)}")
        return self.values[i - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def last(self) -> int:
        return self.values[-1]

    def word(self) -> str:
        if self.n < 10:
            return "".join(map(str, self.values))
        return ",".join(map(str, self.values))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.values))})"


class StatFamily(str, Enum):
    R_DESCENT = "r_descent"
    R_ASCENT = "r_ascent"
    R_EXCEDANCE = "r_excedance"
    R_ANTI_EXCEDANCE = "r_anti_excedance"


@dataclass(frozen=True)
class StatKind:
    """One statistic family with its threshold ``r`` (r=2 gives the "big" variants)."""
    family: StatFamily
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", StatFamily(self.family))
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r!r}")


def new_permutation(values: Sequence[int]) -> Permutation:
    return Permutation(tuple(values))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, v in enumerate(p.values, 1):
        inv[v - 1] = i
    return Permutation._trusted(tuple(inv))


def _positions_raw(w: Sequence[int], family: StatFamily, r: int) -> list[int]:
    n = len(w)
    if family is StatFamily.R_DESCENT:
        return [i + 1 for i in range(n - 1) if w[i] >= w[i + 1] + r]
    if family is StatFamily.R_ASCENT:
        return [i + 1 for i in range(n - 1) if w[i] + r <= w[i + 1]]
    if family is StatFamily.R_EXCEDANCE:
        return [i + 1 for i in range(n) if w[i] >= i + 1 + r]
    if family is StatFamily.R_ANTI_EXCEDANCE:
        return [i + 1 for i in range(n) if w[i] <= i + 1 - r]
    raise ValueError(f"unknown statistic family {family!r}")


def stat_count_raw(w: Sequence[int], family: StatFamily, r: int) -> int:
    """Count on a bare 1-based word; the hot path for exhaustive tallies."""
    n = len(w)
    if family is StatFamily.R_DESCENT:
        return sum(1 for i in range(n - 1) if w[i] - w[i + 1] >= r)
    if family is StatFamily.R_ASCENT:
        return sum(1 for i in range(n - 1) if w[i + 1] - w[i] >= r)
    if family is StatFamily.R_EXCEDANCE:
        return sum(1 for i in range(n) if w[i] - i - 1 >= r)
    if family is StatFamily.R_ANTI_EXCEDANCE:
        return sum(1 for i in range(n) if i + 1 - w[i] >= r)
    raise ValueError(f"unknown statistic family {family!r}")


def positions_stat(p: Permutation, s: StatKind) -> list[int]:
    """Sorted 1-based positions at which ``p`` has statistic ``s``."""
    return _positions_raw(p.values, s.family, s.r)


def count_stat(p: Permutation, s: StatKind) -> int:
    return stat_count_raw(p.values, s.family, s.r)


def rotate_to_end(p: Permutation, v: int) -> Permutation:
    """Cyclically rotate the word of ``p`` so that value ``v`` sits at position n."""
    if not 1 <= v <= p.n:
        raise ValueError(f"value {v} out of range 1..{p.n}")
    q = p.values.index(v)
    w = p.values[q + 1:] + p.values[:q + 1]
    return Permutation._trusted(w)


def enumerate_permutations(n: int, first: int | None = None,
                           bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Permutation]:
    """
    Yield every permutation of [n] once, in lexicographic order.

    With ``first`` given, only the sub-stream starting with that value is
    produced; the n sub-streams partition S_n.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > bound:
        raise BoundError(f"n={n} exceeds enumeration bound {bound}")
    if first is None:
        for w in permutations(range(1, n + 1)):
            yield Permutation._trusted(w)
        return
    if not 1 <= first <= n:
        raise ValueError(f"first element {first} out of range 1..{n}")
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in permutations(rest):
        yield Permutation._trusted((first,) + tail)
