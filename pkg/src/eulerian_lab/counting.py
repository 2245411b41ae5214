"""
Exact counts A(n,m), A(n,m,k) and A_r(n,m,k) by enumeration, recurrence and
closed form, plus Eulerian polynomials and their ordinary generating series.

Counts are Python ints throughout. Zero cells are not stored.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb

from .exceptions import BoundError
from .perm_core import DEFAULT_ENUMERATION_BOUND, StatFamily, stat_count_raw
from .trees import count_R_recurrence

__all__ = [
    "CountTable", "PolyCoeffs",
    "binomial", "eulerian", "eulerian_recurrence", "eulerian_closed_form", "eulerian_table",
    "count_by_enumeration", "generalized_eulerian", "a_nmk_recurrence",
    "eulerian_polynomial", "ogf_coefficients",
]

RECURRENCE_MAX_N = 60


@dataclass
class CountTable:
    """Sparse exact table; ``index`` names the key fields, e.g. ("n", "m")."""
    kind: str
    index: tuple[str, ...]
    entries: dict[tuple[int, ...], int] = field(default_factory=dict)
    method: str = "enumeration"
    params: dict = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, ...]) -> int:
        return self.entries.get(tuple(key), 0)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, **kw) -> int:
        return self.entries.get(tuple(kw[name] for name in self.index), 0)

    def values_where(self, **fixed) -> dict[tuple[int, ...], int]:
        pos = {name: self.index.index(name) for name in fixed}
        return {k: v for k, v in self.entries.items()
                if all(k[pos[name]] == val for name, val in fixed.items())}

    def same_counts(self, other: "CountTable") -> bool:
        return self.index == other.index and self.entries == other.entries


@dataclass(frozen=True)
class PolyCoeffs:
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def binomial(a: int, b: int) -> int:
    """C(a, b), zero when b < 0 or b > a. Negative ``a`` also gives zero."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


@lru_cache(maxsize=None)
def _eulerian_rows(n_max: int) -> tuple[tuple[int, ...], ...]:
    # rows[n][m] for 1 <= n <= n_max; rows[0] is a placeholder
    rows: list[tuple[int, ...]] = [(), (1,)]
    for n in range(2, n_max + 1):
        prev = rows[n - 1]

        def a(m):
            return prev[m] if 0 <= m < len(prev) else 0

        rows.append(tuple((n - m) * a(m - 1) + (m + 1) * a(m) for m in range(n)))
    return tuple(rows)


def eulerian(n: int, m: int) -> int:
    """A(n, m) from the recurrence; 0 outside 0 <= m <= n-1. A(0, 0) = 1."""
    if n == 0:
        return 1 if m == 0 else 0
    if n < 0 or m < 0 or m >= n:
        return 0
    if n > RECURRENCE_MAX_N:
        raise BoundError(f"n={n} exceeds recurrence limit {RECURRENCE_MAX_N}")
    return _eulerian_rows(RECURRENCE_MAX_N)[n][m]


def eulerian_recurrence(n_max: int) -> CountTable:
    """A(n,m) = (n-m) A(n-1,m-1) + (m+1) A(n-1,m), A(1,0) = 1."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if n_max > RECURRENCE_MAX_N:
        raise BoundError(f"n_max={n_max} exceeds recurrence limit {RECURRENCE_MAX_N}")
    rows = _eulerian_rows(n_max)
    entries = {(n, m): v for n in range(1, n_max + 1) for m, v in enumerate(rows[n]) if v}
    return CountTable("eulerian", ("n", "m"), entries, "recurrence", {"n_max": n_max})


def eulerian_closed_form(n: int, m: int) -> int:
    if n < 1 or not 0 <= m <= n - 1:
        raise ValueError(f"need n >= 1 and 0 <= m <= n-1, got n={n}, m={m}")
    return sum((-1) ** k * comb(n + 1, k) * (m + 1 - k) ** n for k in range(m + 2))


def _enum_chunk(n: int, first: int, r: int, family: StatFamily) -> Counter:
    rest = [v for v in range(1, n + 1) if v != first]
    c: Counter = Counter()
    for tail in permutations(rest):
        w = (first,) + tail
        c[(stat_count_raw(w, family, r), w[-1])] += 1
    return c


def count_by_enumeration(n: int, r: int = 1, family: StatFamily = StatFamily.R_DESCENT,
                         jobs: int = 1, bound: int = DEFAULT_ENUMERATION_BOUND) -> CountTable:
    """
    Tally (statistic count, last letter) over all of S_n.

    S_n is split by first letter; ``jobs > 1`` farms the n slices out to
    worker processes. The merged table does not depend on ``jobs``.
    """
    family = StatFamily(family)
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > bound:
        raise BoundError(f"n={n} exceeds enumeration bound {bound}")
    if r < 1:
        raise ValueError("r must be at least 1")
    total: Counter = Counter()
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futures = [ex.submit(_enum_chunk, n, f, r, family) for f in range(1, n + 1)]
            for fut in futures:
                total.update(fut.result())
    else:
        total = _cached_tally(n, r, family)
    entries = {(n, r, m, k): v for (m, k), v in sorted(total.items())}
    return CountTable(family.value, ("n", "r", "m", "k"), entries, "enumeration",
                      {"n": n, "r": r})


@lru_cache(maxsize=None)
def _cached_tally(n: int, r: int, family: StatFamily) -> Counter:
    total: Counter = Counter()
    for f in range(1, n + 1):
        total.update(_enum_chunk(n, f, r, family))
    return total


def generalized_eulerian(n: int, r: int, m: int, k: int,
                         family: StatFamily = StatFamily.R_DESCENT) -> int:
    """A_r(n,m,k) (or its excedance/ascent analogue) by cached enumeration; 0 off-support."""
    if n < 1 or m < 0 or not 1 <= k <= n:
        return 0
    return _cached_tally(n, r, StatFamily(family)).get((m, k), 0)


def a_nmk_recurrence(n: int, m: int, k: int) -> int:
    """
    A(n,m,k) without enumeration.

    Interior columns use A(n,m,k) = R(n+1, m+1, k+1) with R from the tree
    recurrence; the column k = n is A(n-1, m) since n then follows an ascent.
    """
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"need n >= 1 and 1 <= k <= n, got n={n}, k={k}")
    if n > RECURRENCE_MAX_N:
        raise BoundError(f"n={n} exceeds recurrence limit {RECURRENCE_MAX_N}")
    if m < 0:
        return 0
    if n == 1:
        return 1 if m == 0 else 0
    if k == n:
        return eulerian(n - 1, m)
    return count_R_recurrence(n + 1, m + 1, k + 1)


def eulerian_table(n_max: int, method: str = "recurrence", jobs: int = 1) -> CountTable:
    """A(n,m) for 1 <= n <= n_max computed by the named method."""
    if method == "recurrence":
        return eulerian_recurrence(n_max)
    entries = {}
    if method == "closed_form":
        for n in range(1, n_max + 1):
            for m in range(n):
                entries[(n, m)] = eulerian_closed_form(n, m)
    elif method == "enumeration":
        for n in range(1, n_max + 1):
            t = count_by_enumeration(n, 1, StatFamily.R_DESCENT, jobs=jobs)
            for (_, _, m, _), v in t.entries.items():
                entries[(n, m)] = entries.get((n, m), 0) + v
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountTable("eulerian", ("n", "m"), dict(sorted(entries.items())), method,
                      {"n_max": n_max})


def eulerian_polynomial(n: int) -> PolyCoeffs:
    if n < 1:
        raise ValueError("n must be at least 1")
    return PolyCoeffs(tuple(eulerian(n, m) for m in range(n)))


def ogf_coefficients(n: int, degree_max: int) -> PolyCoeffs:
    """Coefficients 0..degree_max of A_n(x) / (1-x)^(n+1) as a power series."""
    poly = eulerian_polynomial(n).coefficients
    # (1-x)^-(n+1) = sum_j C(n+j, n) x^j
    series = [comb(n + j, n) for j in range(degree_max + 1)]
    out = [sum(poly[i] * series[d - i] for i in range(min(d, len(poly) - 1) + 1))
           for d in range(degree_max + 1)]
    return PolyCoeffs(tuple(out))
