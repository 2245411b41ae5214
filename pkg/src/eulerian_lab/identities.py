"""
Exhaustive verification of the counting identities around A_r(n,m,k).

Every identity is a pair of integer-valued sides evaluated on a finite sweep
of parameter tuples. ``verify`` evaluates the fast side-by-side computation on
every tuple, reports the lexicographically smallest failure, and re-derives
both sides of that failure from scratch with the brute-force oracles defined
at the bottom of this module (plain loops over permutations, trees or
functions that share no tables with the fast path).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from itertools import permutations, product
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .counting import (a_nmk_recurrence, binomial, eulerian, generalized_eulerian,
                       ogf_coefficients)
from .exceptions import BoundError, UnknownIdentityError
from .perm_core import DEFAULT_ENUMERATION_BOUND, Permutation, StatFamily
from .trees import count_R, count_T, t_closed_form

__all__ = [
    "IdentityId", "Ranges", "WorpitzkyVariant", "Counterexample", "VerificationReport",
    "AS_PRINTED", "INTRO_FORM", "CORRECTED", "ALL_VARIANTS",
    "verify", "verify_all", "find_minimal_counterexample",
    "worpitzky_generalized_eval", "worpitzky_variant_survey",
    "count_constrained_functions", "sigma_set_membership", "check_partition",
    "check_lemma_remove_max", "check_lemma_relabel",
]

DES = StatFamily.R_DESCENT
EXC = StatFamily.R_EXCEDANCE
FUNCTION_SPACE_LIMIT = 10 ** 7


class IdentityId(str, Enum):
    WORPITZKY_CLASSIC = "worpitzky_classic"
    WORPITZKY_GENERALIZED = "worpitzky_generalized"
    THM4_DESC_EXC = "thm4_desc_exc"
    THM6_ROTATION = "thm6_rotation"
    THM7_SHIFT = "thm7_shift"
    THM8_RECURRENCE = "thm8_recurrence"
    COR_1_2_EXC = "cor_1_2_exc"
    THM10_TREE_PERM = "thm10_tree_perm"
    THM10_COR_EXCEDANCE = "thm10_cor_excedance"
    THM10_COR_BIG_EXC = "thm10_cor_big_exc"
    THM10_COR_BIG_DESC = "thm10_cor_big_desc"
    T_CLOSED_FORM = "t_closed_form"
    OGF_THEOREM2 = "ogf_theorem2"
    ROW_SUMS = "row_sums"
    FOOTNOTE_2EULERIAN = "footnote_2eulerian"


@dataclass(frozen=True)
class Ranges:
    max_n: int = 7
    max_r: int = 3
    max_x: int = 6
    min_n: int = 1
    max_degree: int = 12
    bound: int = DEFAULT_ENUMERATION_BOUND


@dataclass(frozen=True)
class WorpitzkyVariant:
    """
    lhs (x+1)^(n-k+1+lhs_exponent_offset) x^(k-1);
    rhs sum_i A(n,i,k) C(upper, n-1) with upper = x+i or x+k.
    """
    lhs_exponent_offset: int = 0
    binom_upper: str = "x+i"

    def __post_init__(self):
        if self.lhs_exponent_offset not in (0, -1) or self.binom_upper not in ("x+i", "x+k"):
            raise ValueError(f"unsupported variant {self}")

    @property
    def label(self) -> str:
        exp = "n-k+1" if self.lhs_exponent_offset == 0 else "n-k"
        return f"(x+1)^({exp}) x^(k-1) = sum_i A(n,i,k) C({self.binom_upper}, n-1)"


AS_PRINTED = WorpitzkyVariant(0, "x+i")
INTRO_FORM = WorpitzkyVariant(0, "x+k")
CORRECTED = WorpitzkyVariant(-1, "x+i")
ALL_VARIANTS = (AS_PRINTED, INTRO_FORM, CORRECTED, WorpitzkyVariant(-1, "x+k"))


@dataclass
class Counterexample:
    params: dict
    lhs: int
    rhs: int
    revalidated: bool = False
    brute_lhs: int | None = None
    brute_rhs: int | None = None


@dataclass
class VerificationReport:
    identity: str
    statement: str
    ranges: dict
    verdict: str
    counterexample: Counterexample | None = None
    checked: int = 0
    failures: int = 0
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.counterexample is not None:
            # exact integers travel as decimal strings
            for key in ("lhs", "rhs", "brute_lhs", "brute_rhs"):
                val = d["counterexample"][key]
                d["counterexample"][key] = None if val is None else str(val)
        return d

    def summary(self) -> str:
        line = f"{self.identity}: {self.verdict} ({self.checked} tuples, {self.wall_time:.2f}s)"
        if self.counterexample is not None:
            ce = self.counterexample
            args = ", ".join(f"{k}={v}" for k, v in ce.params.items())
            line += (f"\n  minimal counterexample ({args}): lhs={ce.lhs} rhs={ce.rhs}"
                     f"\n  re-validated by brute force: {'yes' if ce.revalidated else 'NO'}")
        for note in self.notes:
            line += f"\n  note: {note}"
        return line


@dataclass(frozen=True)
class _Identity:
    id: IdentityId
    params: tuple[str, ...]
    statement: str
    cases: Callable[[Ranges], Iterable[tuple]]
    sides: Callable[..., tuple[int, int]]
    brute_sides: Callable[..., tuple[int, int]]
    # largest n the sweep enumerates, as a function of max_n
    reach: Callable[[int], int] = lambda n: n
    notes: Callable[..., list[str]] | None = None


# ---------------------------------------------------------------------------
# parameter sweeps

def _ns(rg: Ranges, lo: int = 1):
    return range(max(lo, rg.min_n), rg.max_n + 1)


def _cases_classic(rg):
    for n in _ns(rg):
        for x in range(rg.max_x + 1):
            yield (n, x)


def _cases_nkx(rg):
    for n in _ns(rg):
        for k in range(1, n + 1):
            for x in range(rg.max_x + 1):
                yield (n, k, x)


def _cases_nrmk(rg):
    for n in _ns(rg):
        for r in range(1, rg.max_r + 1):
            for m in range(n):
                for k in range(1, n + 1):
                    yield (n, r, m, k)


def _cases_thm6(rg):
    for n in _ns(rg):
        for r in range(1, rg.max_r + 1):
            top = min(r, n)
            for m in range(n):
                for k1 in range(1, top + 1):
                    for k2 in range(k1 + 1, top + 1):
                        yield (n, r, m, k1, k2)


def _cases_thm7(rg):
    for n in _ns(rg):
        for r in range(1, rg.max_r + 1):
            for m in range(n):
                yield (n, r, m)


def _cases_thm8(rg):
    for n in _ns(rg, 2):
        for r in range(1, rg.max_r + 1):
            for m in range(n):
                for k in range(2, n + 1):
                    yield (n, r, m, k)


def _cases_cor(rg):
    for n in _ns(rg, 2):
        for m in range(n):
            for k in range(1, n):
                yield (n, m, k)


def _cases_tree(rg):
    for n in _ns(rg, 3):
        for ell in range(1, n + 1):
            for x in range(2, n):
                yield (n, ell, x)


def _cases_t(rg):
    for n in _ns(rg, 2):
        for ell in range(2, n + 1):
            yield (n, ell)


def _cases_ogf(rg):
    for n in _ns(rg):
        for d in range(rg.max_degree + 1):
            yield (n, d)


def _cases_rows(rg):
    for n in _ns(rg):
        yield (n,)


# ---------------------------------------------------------------------------
# fast sides

def A(n, r, m, k, family=DES):
    return generalized_eulerian(n, r, m, k, family)


def _sides_classic(c, opts):
    n, x = c
    return x ** n, sum(eulerian(n, m) * binomial(x + m, n) for m in range(n))


def worpitzky_generalized_eval(n: int, k: int, x: int,
                               variant: WorpitzkyVariant = AS_PRINTED) -> tuple[int, int]:
    """Both sides of the last-letter refinement of Worpitzky's identity."""
    if not 1 <= k <= n or x < 0:
        raise ValueError(f"need n >= k >= 1 and x >= 0, got n={n}, k={k}, x={x}")
    lhs = (x + 1) ** (n - k + 1 + variant.lhs_exponent_offset) * x ** (k - 1)
    rhs = 0
    for i in range(n):
        upper = x + i if variant.binom_upper == "x+i" else x + k
        rhs += a_nmk_recurrence(n, i, k) * binomial(upper, n - 1)
    return lhs, rhs


def _sides_generalized(c, opts):
    return worpitzky_generalized_eval(*c, variant=opts.get("variant", AS_PRINTED))


def _sides_thm4(c, opts):
    n, r, m, k = c
    return A(n, r, m, k, DES), A(n, r, m, k, EXC)


def _sides_thm6(c, opts):
    n, r, m, k1, k2 = c
    return A(n, r, m, k1), A(n, r, m, k2)


def _sides_thm7(c, opts):
    n, r, m = c
    return A(n, r + 1, m, 1), A(n, r, m, n)


def _thm8_rhs(a, n, r, m, k):
    return a(n, r, m + 1, k - 1) + (r - 1) * (a(n - 1, r, m, k - 1) - a(n - 1, r, m + 1, k - 1))


def _sides_thm8(c, opts):
    n, r, m, k = c
    return A(n, r + 1, m, k), _thm8_rhs(A, n, r, m, k)


def _sides_cor(c, opts):
    n, m, k = c
    return A(n, 1, m, k), A(n + 1, 2, m - 1, k + 1)


def _sides_thm10(c, opts):
    n, ell, x = c
    return count_R(n, ell, x), A(n - 1, 1, ell - 1, x - 1)


def _sides_thm10_exc(c, opts):
    n, ell, x = c
    return count_R(n, ell, x), A(n - 1, 1, ell - 1, x - 1, EXC)


def _sides_thm10_big_exc(c, opts):
    n, ell, x = c
    return count_R(n, ell, x), A(n - 1, 2, ell - 2, x, EXC)


def _sides_thm10_big_desc(c, opts):
    n, ell, x = c
    return count_R(n, ell, x), A(n - 1, 2, ell - 2, x, DES)


def _sides_t(c, opts):
    n, ell = c
    return t_closed_form(n, ell), count_T(n, ell)


def _sides_ogf(c, opts):
    n, d = c
    return ogf_coefficients(n, d).coefficients[d], (d + 1) ** n


def _sides_rows(c, opts):
    (n,) = c
    return sum(eulerian(n, m) for m in range(n)), factorial(n)


# ---------------------------------------------------------------------------
# brute-force oracles, independent of the counting module's tables

def _brute_stat(w: Sequence[int], family: StatFamily, r: int) -> int:
    n = len(w)
    total = 0
    if family is DES:
        for i in range(n - 1):
            if w[i] >= w[i + 1] + r:
                total += 1
    elif family is EXC:
        for i in range(n):
            if w[i] >= (i + 1) + r:
                total += 1
    else:
        raise ValueError(family)
    return total


def _brute_A(n: int, r: int, m: int, k: int, family: StatFamily = DES) -> int:
    if n < 1 or m < 0 or not 1 <= k <= n:
        return 0
    return sum(1 for w in permutations(range(1, n + 1))
               if w[-1] == k and _brute_stat(w, family, r) == m)


def _brute_eulerian(n: int, m: int) -> int:
    return sum(_brute_A(n, 1, m, k) for k in range(1, n + 1))


def _brute_tree_classes(n: int) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for parent in product(*(range(v) for v in range(1, n))):
        kids = {v: [] for v in range(n)}
        for v, u in enumerate(parent, 1):
            kids[u].append(v)
        degree = {v: len(kids[v]) + (v != 0) for v in range(n)}
        ell = sum(1 for d in degree.values() if d == 1)
        x = 0
        while kids[x]:
            x = min(kids[x])
        out[(ell, x)] = out.get((ell, x), 0) + 1
    return out


def _brute_R(n, ell, x):
    return _brute_tree_classes(n).get((ell, x), 0)


def _brute_classic(c, opts):
    n, x = c
    return x ** n, sum(_brute_eulerian(n, m) * comb(x + m, n) for m in range(n))


def _brute_generalized(c, opts):
    n, k, x = c
    v = opts.get("variant", AS_PRINTED)
    lhs = (x + 1) ** (n - k + 1 + v.lhs_exponent_offset) * x ** (k - 1)
    rhs = sum(_brute_A(n, 1, i, k) * comb(x + i if v.binom_upper == "x+i" else x + k, n - 1)
              for i in range(n))
    return lhs, rhs


def _brute_thm4(c, opts):
    n, r, m, k = c
    return _brute_A(n, r, m, k, DES), _brute_A(n, r, m, k, EXC)


def _brute_thm6(c, opts):
    n, r, m, k1, k2 = c
    return _brute_A(n, r, m, k1), _brute_A(n, r, m, k2)


def _brute_thm7(c, opts):
    n, r, m = c
    return _brute_A(n, r + 1, m, 1), _brute_A(n, r, m, n)


def _brute_thm8(c, opts):
    n, r, m, k = c
    return _brute_A(n, r + 1, m, k), _thm8_rhs(_brute_A, n, r, m, k)


def _brute_cor(c, opts):
    n, m, k = c
    return _brute_A(n, 1, m, k), _brute_A(n + 1, 2, m - 1, k + 1)


def _brute_thm10(c, opts):
    n, ell, x = c
    return _brute_R(n, ell, x), _brute_A(n - 1, 1, ell - 1, x - 1)


def _brute_thm10_exc(c, opts):
    n, ell, x = c
    return _brute_R(n, ell, x), _brute_A(n - 1, 1, ell - 1, x - 1, EXC)


def _brute_thm10_big_exc(c, opts):
    n, ell, x = c
    return _brute_R(n, ell, x), _brute_A(n - 1, 2, ell - 2, x, EXC)


def _brute_thm10_big_desc(c, opts):
    n, ell, x = c
    return _brute_R(n, ell, x), _brute_A(n - 1, 2, ell - 2, x, DES)


def _brute_t(c, opts):
    n, ell = c
    formula = sum((-1) ** j * (ell - 1 - j) * comb(n, j) * (ell - j) ** n for j in range(ell - 1))
    trees = sum(v for (e, _), v in _brute_tree_classes(n).items() if e == ell)
    return formula, trees


def _brute_ogf(c, opts):
    n, d = c
    # coefficient of x^d in A_n(x) * sum_j C(n+j, n) x^j
    coef = sum(_brute_eulerian(n, m) * comb(n + d - m, n) for m in range(min(d, n - 1) + 1))
    return coef, (d + 1) ** n


def _brute_rows(c, opts):
    (n,) = c
    return sum(1 for _ in permutations(range(n))), factorial(n)


# ---------------------------------------------------------------------------
# extra findings attached to reports

def _verdict_over(cases, fn) -> tuple[bool, tuple | None]:
    for c in cases:
        lhs, rhs = fn(c)
        if lhs != rhs:
            return False, (c, lhs, rhs)
    return True, None


def _notes_generalized(rg, opts):
    out = []
    for v in ALL_VARIANTS:
        ok, bad = _verdict_over(_cases_nkx(rg), lambda c: worpitzky_generalized_eval(*c, variant=v))
        out.append(f"variant {v.label}: " + ("holds" if ok else f"fails first at (n,k,x)={bad[0]}"))
    return out


def _notes_thm8(rg, opts):
    out = []
    for r in range(1, rg.max_r + 1):
        cases = [c for c in _cases_thm8(rg) if c[1] == r]
        ok, bad = _verdict_over(cases, lambda c: _sides_thm8(c, opts))
        out.append(f"r={r}: " + ("holds" if ok else f"fails first at (n,r,m,k)={bad[0]}, "
                                                   f"{bad[1]} != {bad[2]}"))
    # the lemma behind the (r-1) weight needs r-1 positions in (n-r, n)
    big = [c for c in _cases_thm8(rg) if c[0] >= c[1]]
    ok, bad = _verdict_over(big, lambda c: _sides_thm8(c, opts))
    out.append("restricted to n >= r: " + ("holds" if ok else f"fails first at {bad[0]}"))
    return out


def _notes_cor(rg, opts):
    ok, bad = _verdict_over(_cases_cor(rg), lambda c: (A(c[0], 1, c[1], c[2]),
                                                       A(c[0], 2, c[1] - 1, c[2] + 1)))
    return ["same-size reading A(n,m,k) = A_2(n,m-1,k+1) (the r=1 case of the "
            "A_{r+1} recurrence): " + ("holds" if ok else f"fails first at {bad[0]}")]


def _notes_thm10(rg, opts):
    # the x = 1 column is outside the verified domain; compare it with the
    # "starts with 2, ends with x+1" reading and with last letter 1 instead
    lit_ok, lit_bad, alt_ok = True, None, True
    for n in _ns(rg, 2):
        starts_with_2: dict[tuple[int, int], int] = {}
        for w in permutations(range(1, n + 1)):
            if w[0] == 2:
                key = (w[-1], _brute_stat(w, DES, 1))
                starts_with_2[key] = starts_with_2.get(key, 0) + 1
        for ell in range(1, n + 1):
            lhs = count_R(n, ell, 1)
            lit = starts_with_2.get((2, ell - 1), 0)
            alt = starts_with_2.get((1, ell - 1), 0)
            if lhs != lit and lit_ok:
                lit_ok, lit_bad = False, (n, ell, lhs, lit)
            alt_ok &= lhs == alt
    notes = ["x=1 column vs permutations of [n] starting 2, ending x+1=2: "
             + ("agrees" if lit_ok else f"disagrees first at (n,ell)=({lit_bad[0]},{lit_bad[1]}): "
                                        f"R={lit_bad[2]} vs {lit_bad[3]}"),
             "x=1 column vs permutations of [n] starting 2, ending 1: "
             + ("agrees" if alt_ok else "disagrees")]
    return notes


def _notes_t(rg, opts):
    if rg.max_n >= 4:
        return [f"(n,ell)=(4,2): closed form {t_closed_form(4, 2)}, enumeration {count_T(4, 2)}"]
    return []


# ---------------------------------------------------------------------------

_REGISTRY: dict[IdentityId, _Identity] = {i.id: i for i in (
    _Identity(IdentityId.WORPITZKY_CLASSIC, ("n", "x"),
              "x^n = sum_m A(n,m) C(x+m, n)",
              _cases_classic, _sides_classic, _brute_classic),
    _Identity(IdentityId.WORPITZKY_GENERALIZED, ("n", "k", "x"),
              "(x+1)^(n-k+1) x^(k-1) = sum_i A(n,i,k) C(x+i, n-1)",
              _cases_nkx, _sides_generalized, _brute_generalized, notes=_notes_generalized),
    _Identity(IdentityId.THM4_DESC_EXC, ("n", "r", "m", "k"),
              "#{last=k, m r-descents} = #{last=k, m r-excedances}",
              _cases_nrmk, _sides_thm4, _brute_thm4),
    _Identity(IdentityId.THM6_ROTATION, ("n", "r", "m", "k1", "k2"),
              "A_r(n,m,k1) = A_r(n,m,k2) for k1, k2 <= r",
              _cases_thm6, _sides_thm6, _brute_thm6),
    _Identity(IdentityId.THM7_SHIFT, ("n", "r", "m"),
              "A_{r+1}(n,m,1) = A_r(n,m,n)",
              _cases_thm7, _sides_thm7, _brute_thm7),
    _Identity(IdentityId.THM8_RECURRENCE, ("n", "r", "m", "k"),
              "A_{r+1}(n,m,k) = A_r(n,m+1,k-1) + (r-1)(A_r(n-1,m,k-1) - A_r(n-1,m+1,k-1)), k >= 2",
              _cases_thm8, _sides_thm8, _brute_thm8, notes=_notes_thm8),
    _Identity(IdentityId.COR_1_2_EXC, ("n", "m", "k"),
              "A(n,m,k) = A_2(n+1,m-1,k+1) for k < n",
              _cases_cor, _sides_cor, _brute_cor, reach=lambda n: n + 1, notes=_notes_cor),
    _Identity(IdentityId.THM10_TREE_PERM, ("n", "ell", "x"),
              "R(n,ell,x) = A(n-1,ell-1,x-1) for x >= 2",
              _cases_tree, _sides_thm10, _brute_thm10, notes=_notes_thm10),
    _Identity(IdentityId.THM10_COR_EXCEDANCE, ("n", "ell", "x"),
              "R(n,ell,x) = #{S_{n-1}, last = x-1, ell-1 excedances}",
              _cases_tree, _sides_thm10_exc, _brute_thm10_exc),
    _Identity(IdentityId.THM10_COR_BIG_EXC, ("n", "ell", "x"),
              "R(n,ell,x) = #{S_{n-1}, last = x, ell-2 big excedances}",
              _cases_tree, _sides_thm10_big_exc, _brute_thm10_big_exc),
    _Identity(IdentityId.THM10_COR_BIG_DESC, ("n", "ell", "x"),
              "R(n,ell,x) = #{S_{n-1}, last = x, ell-2 big descents}",
              _cases_tree, _sides_thm10_big_desc, _brute_thm10_big_desc),
    _Identity(IdentityId.T_CLOSED_FORM, ("n", "ell"),
              "sum_{j=0}^{ell-2} (-1)^j (ell-1-j) C(n,j) (ell-j)^n = T(n,ell)",
              _cases_t, _sides_t, _brute_t, notes=_notes_t),
    _Identity(IdentityId.OGF_THEOREM2, ("n", "d"),
              "[x^d] A_n(x) / (1-x)^(n+1) = (d+1)^n",
              _cases_ogf, _sides_ogf, _brute_ogf),
    _Identity(IdentityId.ROW_SUMS, ("n",),
              "sum_m A(n,m) = n!",
              _cases_rows, _sides_rows, _brute_rows),
)}


def _lookup(identity) -> IdentityId:
    try:
        return IdentityId(identity)
    except ValueError:
        raise UnknownIdentityError(f"unknown identity {identity!r}") from None


def _eval_cases(identity: str, cases: list[tuple], opts: dict) -> tuple[int, int, tuple | None]:
    entry = _REGISTRY[IdentityId(identity)]
    failures = 0
    first = None
    for c in cases:
        lhs, rhs = entry.sides(c, opts)
        if lhs != rhs:
            failures += 1
            if first is None:
                first = (c, lhs, rhs)
    return len(cases), failures, first


def verify(identity, ranges: Ranges | None = None, *, variant: WorpitzkyVariant | None = None,
           references: dict | None = None, jobs: int = 1) -> VerificationReport:
    """
    Sweep one identity over ``ranges`` and return its report.

    ``variant`` selects the form of the generalized Worpitzky identity
    (default: as stated in the theorem). ``references`` maps OEIS ids to
    parsed b-files and is required only for ``footnote_2eulerian``.
    """
    ident = _lookup(identity)
    rg = ranges or Ranges()
    if ident is IdentityId.FOOTNOTE_2EULERIAN:
        from .toolkit.oeis import footnote_check
        return footnote_check(references, rg)
    entry = _REGISTRY[ident]
    if rg.max_n < 1 or rg.max_r < 1 or rg.max_x < 0:
        raise ValueError(f"invalid ranges {rg}")
    if entry.reach(rg.max_n) > rg.bound:
        raise BoundError(f"{ident.value} needs n up to {entry.reach(rg.max_n)}, "
                         f"above the enumeration bound {rg.bound}")
    opts = {}
    statement = entry.statement
    if ident is IdentityId.WORPITZKY_GENERALIZED:
        opts["variant"] = variant or AS_PRINTED
        statement = opts["variant"].label

    t0 = time.perf_counter()
    cases = sorted(entry.cases(rg))
    if jobs > 1 and len(cases) > 1:
        chunks = [cases[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_eval_cases, [ident.value] * jobs, chunks, [opts] * jobs))
        checked = sum(r[0] for r in results)
        failures = sum(r[1] for r in results)
        firsts = [r[2] for r in results if r[2] is not None]
        first = min(firsts, key=lambda f: f[0]) if firsts else None
    else:
        checked, failures, first = _eval_cases(ident.value, cases, opts)

    report = VerificationReport(
        identity=ident.value, statement=statement,
        ranges={**asdict(rg), **({"variant": opts["variant"].label} if opts else {})},
        verdict="PASS" if first is None else "FAIL",
        checked=checked, failures=failures)
    if first is not None:
        c, lhs, rhs = first
        blhs, brhs = entry.brute_sides(c, opts)
        report.counterexample = Counterexample(
            params=dict(zip(entry.params, c)), lhs=lhs, rhs=rhs,
            revalidated=(blhs, brhs) == (lhs, rhs) and blhs != brhs,
            brute_lhs=blhs, brute_rhs=brhs)
    if entry.notes is not None:
        report.notes.extend(entry.notes(rg, opts))
    report.wall_time = time.perf_counter() - t0
    return report


def verify_all(ranges: Ranges | None = None, *, references: dict | None = None,
               jobs: int = 1) -> list[VerificationReport]:
    out = []
    for ident in IdentityId:
        if ident is IdentityId.FOOTNOTE_2EULERIAN and not references:
            continue
        out.append(verify(ident, ranges, references=references, jobs=jobs))
    return out


def find_minimal_counterexample(identity, ranges: Ranges | None = None,
                                **kw) -> Counterexample | None:
    return verify(identity, ranges, **kw).counterexample


def worpitzky_variant_survey(ranges: Ranges | None = None) -> dict[WorpitzkyVariant, VerificationReport]:
    return {v: verify(IdentityId.WORPITZKY_GENERALIZED, ranges, variant=v) for v in ALL_VARIANTS}


# ---------------------------------------------------------------------------
# the double-counting argument behind the generalized Worpitzky identity

def count_constrained_functions(n: int, k: int, x: int) -> int:
    """Brute-force count of f: [n] -> {0..x} with f(k) = 0 and f(i) != 0 for i < k."""
    if not 1 <= k <= n or x < 0:
        raise ValueError(f"need 1 <= k <= n and x >= 0, got n={n}, k={k}, x={x}")
    if (x + 1) ** n > FUNCTION_SPACE_LIMIT:
        raise BoundError(f"function space (x+1)^n = {(x + 1) ** n} exceeds {FUNCTION_SPACE_LIMIT}")
    return sum(1 for f in product(range(x + 1), repeat=n)
               if f[k - 1] == 0 and all(f[i] for i in range(k - 1)))


def sigma_set_membership(f: Sequence[int], p: Permutation) -> bool:
    """
    Whether ``f`` (with ``f[j-1]`` the value at j) is weakly decreasing along
    the word of ``p``, strictly so across every ascent.
    """
    w = p.values
    for j in range(len(w) - 1):
        a, b = f[w[j] - 1], f[w[j + 1] - 1]
        if w[j] > w[j + 1]:
            if a < b:
                return False
        elif a <= b:
            return False
    return True


@dataclass
class PartitionResult:
    n: int
    k: int
    x: int
    functions: int
    # admissible functions lying in zero or several of the sets
    multiplicity_errors: int
    # permutations whose set size differs from C(x + des, n - 1)
    size_errors: list[tuple[tuple[int, ...], int, int]]

    @property
    def ok(self) -> bool:
        return not self.multiplicity_errors and not self.size_errors


def check_partition(n: int, k: int, x: int) -> PartitionResult:
    """
    Brute-force check that the sets S(sigma), sigma ending in k, partition the
    admissible functions and that |S(sigma)| = C(x + des(sigma), n - 1).
    """
    if (x + 1) ** n > FUNCTION_SPACE_LIMIT:
        raise BoundError("function space too large")
    perms = [Permutation._trusted(w) for w in permutations(range(1, n + 1)) if w[-1] == k]
    sizes = dict.fromkeys(perms, 0)
    functions = 0
    bad = 0
    for f in product(range(x + 1), repeat=n):
        if f[k - 1] != 0 or not all(f[i] for i in range(k - 1)):
            continue
        functions += 1
        hits = [p for p in perms if sigma_set_membership(f, p)]
        if len(hits) != 1:
            bad += 1
        for p in hits:
            sizes[p] += 1
    size_errors = []
    for p, size in sizes.items():
        want = binomial(x + _brute_stat(p.values, DES, 1), n - 1)
        if size != want:
            size_errors.append((p.values, size, want))
    return PartitionResult(n, k, x, functions, bad, size_errors)


# ---------------------------------------------------------------------------
# the two lemmas behind the A_{r+1} recurrence, checked through their maps

def check_lemma_remove_max(n: int, r: int) -> list[tuple]:
    """
    For n-r < i < n and last letter k < n, deleting the letter n at position i
    must biject {r-excedances = m} onto S_{n-1} with last k and m r-excedances.
    Returns the failing (i, m, k, class size, target size) tuples.
    """
    from .bijections import remove_max_at
    failures = []
    for i in range(max(n - r + 1, 1), n):
        images: dict[tuple[int, int], set] = {}
        for w in permutations(range(1, n + 1)):
            if w[i - 1] != n or w[-1] == n:
                continue
            m = _brute_stat(w, EXC, r)
            q = remove_max_at(Permutation._trusted(w), i)
            if _brute_stat(q.values, EXC, r) != m or q.last != w[-1]:
                failures.append((i, m, w[-1], "statistic not preserved", w))
                continue
            images.setdefault((m, w[-1]), set()).add(q.values)
        for (m, k), img in images.items():
            target = _brute_A(n - 1, r, m, k, EXC)
            if len(img) != target:
                failures.append((i, m, k, len(img), target))
    return failures


def check_lemma_relabel(n: int, r: int) -> list[tuple]:
    """
    Positional form of the relabelling lemma: with i the position of 1 in p,
    every (r+1)-excedance of p away from i is an r-excedance of the image and
    vice versa, and position i is an r-excedance of the image iff i <= n - r.
    Returns the permutations where this fails.
    """
    from .bijections import relabel_one_to_n
    failures = []
    for w in permutations(range(1, n + 1)):
        i = w.index(1) + 1
        q = relabel_one_to_n(Permutation._trusted(w)).values
        for j in range(1, n + 1):
            before = w[j - 1] >= j + r + 1
            after = q[j - 1] >= j + r
            if j == i:
                if before or after != (i <= n - r):
                    failures.append((w, j))
            elif before != after:
                failures.append((w, j))
    return failures
