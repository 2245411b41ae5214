"""
Constructive maps between classes of permutations with prescribed last
element and r-descent / r-excedance counts.

Each map checks its domain eagerly and raises ``PreconditionError`` rather
than returning a permutation outside the advertised codomain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import PreconditionError
from .foata import foata_inverse, foata_transform
from .perm_core import Permutation, inverse, rotate_to_end

__all__ = [
    "MapDescriptor", "MAPS",
    "exc_to_desc", "desc_to_exc", "rotate_small_last", "shift_to_n",
    "remove_max_at", "relabel_one_to_n",
]


@dataclass(frozen=True)
class MapDescriptor:
    name: str
    domain_constraint: str
    codomain_constraint: str


MAPS = {
    d.name: d for d in (
        MapDescriptor("exc_to_desc",
                      "p in S_n, last = k, m r-excedances",
                      "S_n, last = k, m r-descents"),
        MapDescriptor("desc_to_exc",
                      "p in S_n, last = k, m r-descents",
                      "S_n, last = k, m r-excedances"),
        MapDescriptor("rotate_small_last",
                      "p in S_n, last = k1 <= r, m r-descents",
                      "S_n, last = k2 <= r, m r-descents"),
        MapDescriptor("shift_to_n",
                      "p in S_n, last = 1, m (r+1)-excedances",
                      "S_n, last = n, m r-excedances"),
        MapDescriptor("remove_max_at",
                      "p in S_n, p(i) = n, n-r < i < n, last = k < n, m r-excedances",
                      "S_{n-1}, last = k, m r-excedances"),
        MapDescriptor("relabel_one_to_n",
                      "p in S_n, p(i) = 1, last = k >= 2, m (r+1)-excedances",
                      "S_n, p(i) = n, last = k-1, m + [i <= n-r] r-excedances"),
    )
}


def exc_to_desc(p: Permutation) -> Permutation:
    """
    Send r-excedances of ``p`` to r-descents of the image, for every r at once.

    The inverse of ``p`` is written in cycle notation (maximum first, cycles
    by increasing maximum) and the parentheses dropped. The last letter is
    preserved because the value p(n) precedes n in the cycle opened by n.
    """
    return foata_inverse(inverse(p))


def desc_to_exc(p: Permutation) -> Permutation:
    return inverse(foata_transform(p))


def rotate_small_last(p: Permutation, r: int, k2: int) -> Permutation:
    if r < 1:
        raise PreconditionError(f"r must be positive, got {r}")
    if p.last > r:
        raise PreconditionError(f"last element {p.last} exceeds r={r}")
    if not 1 <= k2 <= min(r, p.n):
        raise PreconditionError(f"target last element {k2} must lie in 1..min(r, n)")
    return rotate_to_end(p, k2)


def shift_to_n(p: Permutation, r: int = 1) -> Permutation:
    """
    Decrement every letter and put n last. Requires p(n) = 1.

    The word does not depend on ``r``; ``r`` names the statistic pair the map
    transports ((r+1)-excedances to r-excedances) and is validated only.
    """
    if r < 1:
        raise PreconditionError(f"r must be positive, got {r}")
    if p.last != 1:
        raise PreconditionError(f"shift_to_n needs last element 1, got {p.last}")
    return Permutation._trusted(tuple(v - 1 for v in p.values[:-1]) + (p.n,))


def remove_max_at(p: Permutation, i: int) -> Permutation:
    if not 1 <= i <= p.n or p(i) != p.n:
        raise PreconditionError(f"position {i} does not hold the maximum {p.n}")
    if p.n == 1:
        raise PreconditionError("cannot delete the only letter")
    return Permutation._trusted(p.values[:i - 1] + p.values[i:])


def relabel_one_to_n(p: Permutation) -> Permutation:
    n = p.n
    return Permutation._trusted(tuple(n if v == 1 else v - 1 for v in p.values))
