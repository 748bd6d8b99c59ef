from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona.setcomb import (
    GroundSet,
    ParameterError,
    SubsetCode,
    UniformPartition,
    complement,
    count_partitions,
    enumerate_k_subsets,
    enumerate_uniform_partitions,
)
from oracles import brute_partitions


@pytest.mark.parametrize("n,k,count", [(4, 2, 6), (6, 0, 1), (6, 2, 15)])
def test_k_subset_counts(n, k, count):
    subs = enumerate_k_subsets(n, k)
    assert len(subs) == count
    assert len(set(subs)) == count


def test_empty_subset_case():
    assert enumerate_k_subsets(6, 0) == [SubsetCode(0, 0)]


def test_k_subsets_are_colex():
    got = [tuple(a.elements()) for a in enumerate_k_subsets(5, 3)]
    colex = sorted(combinations(range(5), 3), key=lambda t: tuple(reversed(t)))
    assert got == colex


@pytest.mark.parametrize("n,k", [(3, 4), (65, 1), (5, -1)])
def test_k_subset_bad_params(n, k):
    with pytest.raises(ParameterError):
        enumerate_k_subsets(n, k)


@given(st.integers(0, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_k_subset_count_is_binomial(nk):
    n, k = nk
    subs = enumerate_k_subsets(n, k)
    assert len(subs) == comb(n, k)
    assert all(a.card == k and a.card == bin(a.mask).count("1") for a in subs)


@pytest.mark.parametrize(
    "a,n,expected",
    [([0, 1], 6, [2, 3, 4, 5]), ([], 5, [0, 1, 2, 3, 4]), ([0, 2, 4], 6, [1, 3, 5])],
)
def test_complement_examples(a, n, expected):
    assert complement(SubsetCode.of(a), GroundSet(n)).elements() == expected


def test_complement_rejects_non_subset():
    with pytest.raises(ParameterError):
        complement(SubsetCode.of([7]), 5)


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_complement_involution(nm):
    n, mask = nm
    a = SubsetCode.from_mask(mask)
    c = complement(a, n)
    assert complement(c, n) == a
    assert a.card + c.card == n


@pytest.mark.parametrize("size,k,s", [(4, 2, 2), (6, 2, 3), (3, 1, 3), (6, 3, 2), (8, 2, 4)])
def test_uniform_partitions_match_brute_force(size, k, s):
    Z = SubsetCode.of(range(size))
    got = enumerate_uniform_partitions(Z, k, s)
    as_sets = {frozenset(frozenset(p.elements()) for p in u.parts) for u in got}
    assert len(as_sets) == len(got)
    assert as_sets == brute_partitions(range(size), k)
    assert len(got) == count_partitions(size, k, s)


def test_uniform_partition_examples():
    assert len(enumerate_uniform_partitions(SubsetCode.of(range(4)), 2, 2)) == 3
    assert len(enumerate_uniform_partitions(SubsetCode.of(range(6)), 2, 3)) == 15
    (only,) = enumerate_uniform_partitions(SubsetCode.of([1, 4, 6]), 1, 3)
    assert [p.elements() for p in only.parts] == [[1], [4], [6]]


def test_uniform_partition_wrong_size():
    with pytest.raises(ParameterError):
        enumerate_uniform_partitions(SubsetCode.of(range(5)), 2, 2)


def test_partition_canonical_equality():
    a, b, c = SubsetCode.of([4, 5]), SubsetCode.of([0, 3]), SubsetCode.of([1, 2])
    assert UniformPartition.canonical([a, b, c]) == UniformPartition.canonical([c, a, b])
    with pytest.raises(ParameterError):
        UniformPartition.canonical([a, SubsetCode.of([5, 1])])


@pytest.mark.parametrize("n,k,s,expected", [(6, 2, 3, 15), (8, 2, 4, 105), (7, 2, 3, 105)])
def test_count_partitions(n, k, s, expected):
    assert count_partitions(n, k, s) == expected


def test_count_partitions_matches_enumeration_with_tail():
    # choose the left-over element, then partition the rest
    brute = sum(len(brute_partitions([x for x in range(7) if x != t], 2)) for t in range(7))
    assert brute == count_partitions(7, 2, 3) == 105


def test_count_partitions_bad():
    with pytest.raises(ParameterError):
        count_partitions(5, 2, 3)
