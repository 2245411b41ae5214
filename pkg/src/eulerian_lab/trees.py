"""
Recursive (increasing Cayley) trees on {0, ..., n-1} rooted at 0.

A tree is stored as a parent array: ``parent[v - 1]`` is the parent of
vertex ``v``. The increasing-path condition is exactly ``parent(v) < v``, so
the set of trees on n vertices is the product {0} x {0,1} x ... x {0..n-2}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterator

from .exceptions import BoundError
from .perm_core import DEFAULT_ENUMERATION_BOUND, Permutation

__all__ = [
    "RecursiveTree", "TreeStats",
    "enumerate_trees", "tree_stats", "tree_to_permutation",
    "r_class_counts", "count_R", "count_R_recurrence", "r_recurrence_row",
    "count_T", "t_closed_form",
]


@dataclass(frozen=True)
class RecursiveTree:
    parent: tuple[int, ...]

    def __post_init__(self):
        parent = tuple(self.parent)
        object.__setattr__(self, "parent", parent)
        for v, u in enumerate(parent, 1):
            if not 0 <= u < v:
                raise ValueError(f"vertex {v} has parent {u}; need 0 <= parent < {v}")

    @property
    def n(self) -> int:
        return len(self.parent) + 1

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in range(self.n)]
        for v, u in enumerate(self.parent, 1):
            ch[u].append(v)  # ascending, since v increases
        return ch

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v, u in enumerate(self.parent, 1)]


@dataclass(frozen=True)
class TreeStats:
    n: int
    ell: int  # vertices of degree one, the root included when it has a single child
    x: int    # end of the smallest rooted path


def enumerate_trees(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[RecursiveTree]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > bound:
        raise BoundError(f"n={n} exceeds enumeration bound {bound}")
    for parent in product(*(range(v) for v in range(1, n))):
        yield RecursiveTree(parent)


def _stats_raw(n: int, parent: tuple[int, ...]) -> tuple[int, int]:
    nchild = [0] * n
    smallest = [0] * n  # smallest child; 0 means none since no child is labelled 0
    for v, u in enumerate(parent, 1):
        nchild[u] += 1
        if not smallest[u]:
            smallest[u] = v
    ell = (nchild[0] == 1) + sum(1 for v in range(1, n) if nchild[v] == 0)
    x = 0
    while smallest[x]:
        x = smallest[x]
    return ell, x


def tree_stats(t: RecursiveTree) -> TreeStats:
    if t.n < 2:
        raise ValueError("the smallest rooted path is undefined for a bare root")
    ell, x = _stats_raw(t.n, t.parent)
    return TreeStats(t.n, ell, x)


def tree_to_permutation(t: RecursiveTree) -> Permutation:
    """
    Preorder word of a depth-first search that visits larger children first,
    each label shifted up by one.

    The word starts with 1 and ends with x+1, where x ends the smallest
    rooted path; its descents sit exactly after the non-root leaves other
    than the final one.
    """
    if t.n < 2:
        raise ValueError("need at least two vertices")
    ch = t.children()
    out = []
    stack = [0]
    while stack:
        v = stack.pop()
        out.append(v + 1)
        stack.extend(ch[v])  # ascending push, so the largest child pops first
    return Permutation._trusted(tuple(out))


@lru_cache(maxsize=None)
def r_class_counts(n: int) -> dict[tuple[int, int], int]:
    """Exhaustive tally of (ell, x) over all recursive trees on n vertices."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > DEFAULT_ENUMERATION_BOUND:
        raise BoundError(f"n={n} exceeds enumeration bound {DEFAULT_ENUMERATION_BOUND}")
    c: Counter = Counter()
    for parent in product(*(range(v) for v in range(1, n))):
        c[_stats_raw(n, parent)] += 1
    return dict(c)


def count_R(n: int, ell: int, x: int) -> int:
    return r_class_counts(n).get((ell, x), 0)


@lru_cache(maxsize=None)
def r_recurrence_row(n: int) -> dict[tuple[int, int], int]:
    """
    Row n of R(n, ell, x) from the recurrence

        R(n,l,x) = sum_{i=max(x,2)}^{n-2} R(n-1,l-1,i) + sum_{i=1}^{max(x-1,1)} R(n-1,l,i)

    with R(2,2,1) = 1 as the only nonzero entry at n = 2.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return {(2, 1): 1}
    prev = r_recurrence_row(n - 1)
    ells = {ell for ell, _ in prev}
    row = {}
    for ell in range(min(ells), max(ells) + 2):
        # prefix sums over i of R(n-1, ell, i) and R(n-1, ell-1, i), i = 0..n-2
        same = [0] * n
        lower = [0] * n
        for i in range(1, n - 1):
            same[i] = same[i - 1] + prev.get((ell, i), 0)
            lower[i] = lower[i - 1] + prev.get((ell - 1, i), 0)
        for x in range(1, n):
            lo = max(x, 2)
            first = lower[n - 2] - lower[lo - 1] if lo <= n - 2 else 0
            second = same[min(max(x - 1, 1), n - 2)]
            if first + second:
                row[(ell, x)] = first + second
    return row


def count_R_recurrence(n: int, ell: int, x: int) -> int:
    return r_recurrence_row(n).get((ell, x), 0)


def count_T(n: int, ell: int) -> int:
    return sum(v for (e, _), v in r_class_counts(n).items() if e == ell)


def t_closed_form(n: int, ell: int) -> int:
    """sum_{j=0}^{ell-2} (-1)^j (ell-1-j) C(n,j) (ell-j)^n, evaluated as written."""
    if ell < 2:
        raise ValueError(f"ell must be at least 2, got {ell}")
    return sum((-1) ** j * (ell - 1 - j) * comb(n, j) * (ell - j) ** n for j in range(ell - 1))
