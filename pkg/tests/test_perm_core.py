from math import factorial

import pytest
from hypothesis import given, strategies as st

from eulerian_lab.exceptions import BoundError, PermutationError
from eulerian_lab.perm_core import (Permutation, StatFamily, StatKind, count_stat,
                                    enumerate_permutations, identity, inverse, new_permutation,
                                    positions_stat, rotate_to_end)

FAMILIES = list(StatFamily)


def perms(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1)))).map(new_permutation)


def test_new_permutation_accepts_valid():
    assert new_permutation([2, 1]).values == (2, 1)
    assert new_permutation([5, 1, 2, 8, 3, 6, 4, 7]).n == 8


@pytest.mark.parametrize("bad", [[1, 1], [], [0, 1], [1, 3], [2, 2, 1], [1.0, 2]])
def test_new_permutation_rejects(bad):
    with pytest.raises(PermutationError):
        new_permutation(bad)


def test_call_is_one_indexed():
    p = new_permutation([3, 1, 2])
    assert (p(1), p(2), p(3)) == (3, 1, 2)
    with pytest.raises(IndexError):
        p(0)


def test_inverse_examples():
    assert inverse(new_permutation([6, 2, 1, 4, 5, 7, 3])).values == (3, 2, 7, 4, 5, 1, 6)
    assert inverse(identity(5)) == identity(5)
    q = inverse(new_permutation([2, 3, 1]))
    assert q.values == (3, 1, 2)
    p = new_permutation([2, 3, 1])
    assert all(q(p(i)) == i for i in range(1, 4))


def test_count_stat_examples():
    assert count_stat(new_permutation([2, 4, 5, 7, 6, 1, 3]), StatKind(StatFamily.R_DESCENT, 1)) == 2
    p = new_permutation([6, 2, 1, 4, 5, 7, 3])
    assert count_stat(p, StatKind(StatFamily.R_EXCEDANCE, 1)) == 2
    assert positions_stat(p, StatKind(StatFamily.R_EXCEDANCE, 1)) == [1, 6]
    assert count_stat(new_permutation([3, 1, 2]), StatKind(StatFamily.R_DESCENT, 2)) == 1
    for r in range(1, 5):
        assert count_stat(identity(6), StatKind(StatFamily.R_DESCENT, r)) == 0


def test_stat_positions_on_small_word():
    # 3 1 4 2: descents at 1, 3; big descent only 3->1; excedances at 1 (3>1), 3 (4>3)
    p = new_permutation([3, 1, 4, 2])
    assert positions_stat(p, StatKind("r_descent", 1)) == [1, 3]
    assert positions_stat(p, StatKind("r_descent", 2)) == [1, 3]
    assert positions_stat(p, StatKind("r_descent", 3)) == []
    assert positions_stat(p, StatKind("r_ascent", 1)) == [2]
    assert positions_stat(p, StatKind("r_ascent", 3)) == [2]
    assert positions_stat(p, StatKind("r_excedance", 1)) == [1, 3]
    assert positions_stat(p, StatKind("r_excedance", 2)) == [1]
    assert positions_stat(p, StatKind("r_anti_excedance", 1)) == [2, 4]
    assert positions_stat(p, StatKind("r_anti_excedance", 2)) == [4]


def test_statkind_rejects_bad_r():
    with pytest.raises(ValueError):
        StatKind(StatFamily.R_DESCENT, 0)


def test_rotate_to_end():
    assert rotate_to_end(new_permutation([2, 3, 1]), 3).values == (1, 2, 3)
    assert rotate_to_end(new_permutation([3, 1, 2]), 1).values == (2, 3, 1)
    p = new_permutation([4, 1, 3, 2])
    assert rotate_to_end(p, 2) == p
    with pytest.raises(ValueError):
        rotate_to_end(p, 5)


def test_enumerate_small():
    assert [p.values for p in enumerate_permutations(1)] == [(1,)]
    s3 = [p.values for p in enumerate_permutations(3)]
    assert len(s3) == 6 and s3[0] == (1, 2, 3) and s3[-1] == (3, 2, 1)
    assert s3 == sorted(s3)
    assert sum(1 for _ in enumerate_permutations(4)) == 24


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_distinct_and_partitioned(n):
    full = [p.values for p in enumerate_permutations(n)]
    assert len(full) == len(set(full)) == factorial(n)
    parts = [p.values for f in range(1, n + 1) for p in enumerate_permutations(n, first=f)]
    assert parts == full


def test_enumerate_bound():
    with pytest.raises(BoundError):
        next(enumerate_permutations(12))
    with pytest.raises(BoundError):
        next(enumerate_permutations(5, bound=4))


@given(perms(), st.integers(1, 9))
def test_descent_ascent_small_gap_partition(p, r):
    des = count_stat(p, StatKind(StatFamily.R_DESCENT, r))
    asc = count_stat(p, StatKind(StatFamily.R_ASCENT, r))
    small = sum(1 for i in range(p.n - 1) if abs(p.values[i] - p.values[i + 1]) < r)
    assert des + asc + small == p.n - 1


@given(perms(), st.integers(1, 8), st.integers(0, 8))
def test_monotone_in_r(p, r1, extra):
    for family in FAMILIES:
        assert count_stat(p, StatKind(family, r1 + extra)) <= count_stat(p, StatKind(family, r1))


@pytest.mark.parametrize("n", range(1, 9))
def test_inverse_involution(n):
    for p in enumerate_permutations(n):
        assert inverse(inverse(p)) == p


@pytest.mark.parametrize("n", range(1, 8))
def test_excedance_positions_match_inverse_anti_excedance_positions(n):
    for p in enumerate_permutations(n):
        q = inverse(p)
        for r in range(1, n + 1):
            exc = positions_stat(p, StatKind(StatFamily.R_EXCEDANCE, r))
            anti = positions_stat(q, StatKind(StatFamily.R_ANTI_EXCEDANCE, r))
            assert sorted(p(i) for i in exc) == anti


@given(perms())
def test_rotate_by_own_last_is_identity(p):
    assert rotate_to_end(p, p.last) == p


@given(perms(), st.data())
def test_rotation_keeps_cyclic_order(p, data):
    v = data.draw(st.integers(1, p.n))
    q = rotate_to_end(p, v)
    assert q.last == v
    doubled = p.values + p.values
    assert any(doubled[i:i + p.n] == q.values for i in range(p.n))
