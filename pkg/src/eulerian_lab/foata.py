"""
Foata's fundamental transformation between one-line words and cycle notation.

The forward map cuts a word before every left-to-right maximum and reads each
block as a cycle. The inverse writes the cycles of a permutation with their
maximum first, in increasing order of maxima, and erases the parentheses.

>>> from eulerian_lab.perm_core import new_permutation
>>> foata_transform(new_permutation([5, 1, 2, 8, 3, 6, 4, 7])).values
(2, 5, 6, 7, 1, 4, 8, 3)
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm_core import Permutation

__all__ = ["BlockDecomposition", "record_blocks", "cycles", "foata_transform", "foata_inverse"]


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]

    def concat(self) -> tuple[int, ...]:
        return tuple(v for b in self.blocks for v in b)

    def __str__(self) -> str:
        return " | ".join("".join(map(str, b)) if max(b) < 10 else ",".join(map(str, b))
                          for b in self.blocks)


def record_blocks(p: Permutation) -> BlockDecomposition:
    blocks: list[list[int]] = []
    best = 0
    for v in p.values:
        if v > best:
            blocks.append([v])
            best = v
        else:
            blocks[-1].append(v)
    return BlockDecomposition(tuple(tuple(b) for b in blocks))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycles of ``p`` as a function, each rotated to start at its maximum, sorted by maximum."""
    seen = [False] * (p.n + 1)
    out = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = p.values[v - 1]
        top = cyc.index(max(cyc))
        out.append(tuple(cyc[top:] + cyc[:top]))
    out.sort(key=max)
    return out


def foata_transform(p: Permutation) -> Permutation:
    image = [0] * p.n
    for block in record_blocks(p).blocks:
        for a, b in zip(block, block[1:] + block[:1]):
            image[a - 1] = b
    return Permutation._trusted(tuple(image))


def foata_inverse(p: Permutation) -> Permutation:
    return Permutation._trusted(tuple(v for c in cycles(p) for v in c))
