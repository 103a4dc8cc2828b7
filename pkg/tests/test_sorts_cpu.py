import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankbench.sorts_cpu import _merge_kernel
from conftest import count_inversions, oracle_sort
from rankbench import (
    Dataset,
    DuplicateElements,
    IndexViolation,
    SortStats,
    bubble_sort,
    gen_vector,
    merge_argsort,
    merge_runs,
    merge_sort,
    rank_argsort_stable,
    rank_sort,
    rank_sort_stable,
)

int32s = st.integers(-(2**31), 2**31 - 1)
distinct_lists = st.lists(int32s, max_size=200, unique=True)
any_lists = st.lists(st.integers(-20, 20), max_size=200)


# rank sort

def test_rank_sort_512_identity():
    out, stats = rank_sort(gen_vector(512, 0))
    assert np.array_equal(out, np.arange(512))
    assert stats.comparisons == 262144
    assert stats.moves == 512


def test_rank_sort_sorted_input():
    out, stats = rank_sort([0, 1, 2, 3])
    assert out.tolist() == [0, 1, 2, 3]
    assert stats.comparisons == 16


def test_rank_sort_gen8():
    ds = gen_vector(8, 0)
    out, _ = rank_sort(ds)
    assert out.tolist() == oracle_sort(ds.values)


def test_rank_sort_does_not_modify_input():
    values = np.array([3, 1, 2], dtype=np.int32)
    rank_sort(values)
    assert values.tolist() == [3, 1, 2]


def test_rank_sort_rejects_duplicates():
    with pytest.raises(DuplicateElements):
        rank_sort([2, 1, 1, 0])


@given(distinct_lists)
def test_rank_sort_matches_oracle(values):
    out, stats = rank_sort(values)
    assert out.tolist() == oracle_sort(values)
    assert stats.comparisons == len(values) ** 2


@pytest.mark.parametrize("n", range(0, 65))
def test_rank_sort_comparisons_exact(n):
    ds = gen_vector(n, n) if n else Dataset([])
    assert rank_sort(ds)[1].comparisons == n * n


# stable rank sort

def test_rank_sort_stable_duplicates():
    out, _ = rank_sort_stable([2, 1, 1, 0])
    assert out.tolist() == [0, 1, 1, 2]


def test_rank_sort_stable_singleton():
    assert rank_sort_stable([5])[0].tolist() == [5]


@given(any_lists)
def test_rank_sort_stable_is_stable(values):
    order, _ = rank_argsort_stable(values)
    expected = sorted(range(len(values)), key=lambda i: values[i])
    assert order.tolist() == expected
    assert rank_sort_stable(values)[0].tolist() == oracle_sort(values)


@given(distinct_lists)
def test_rank_sort_stable_equals_strict_on_distinct(values):
    a, _ = rank_sort(values)
    b, _ = rank_sort_stable(values)
    assert a.dtype == b.dtype and a.tobytes() == b.tobytes()


# bubble sort

def test_bubble_sort_reverse4():
    out, stats = bubble_sort([3, 2, 1, 0])
    assert out.tolist() == [0, 1, 2, 3]
    assert stats.comparisons == 6 and stats.moves == 6


def test_bubble_sort_512_comparisons():
    assert bubble_sort(gen_vector(512, 0))[1].comparisons == 130816
    assert bubble_sort(np.arange(512))[1].comparisons == 130816


def test_bubble_sort_gen16_swaps_are_inversions():
    ds = gen_vector(16, 0)
    out, stats = bubble_sort(ds)
    assert out.tolist() == list(range(16))
    assert stats.moves == count_inversions(ds.values)


@given(any_lists)
def test_bubble_sort_properties(values):
    out, stats = bubble_sort(values)
    n = len(values)
    assert out.tolist() == oracle_sort(values)
    assert stats.comparisons == n * (n - 1) // 2
    assert stats.moves == count_inversions(values)


def test_bubble_sort_empty():
    out, stats = bubble_sort([])
    assert out.size == 0 and stats.comparisons == 0


# merge

def test_merge_runs_basic():
    arr = np.array([1, 3, 0, 2], dtype=np.int32)
    merge_runs(arr, 0, 1, 3)
    assert arr.tolist() == [0, 1, 2, 3]


def test_merge_runs_already_merged():
    arr = np.array([0, 1], dtype=np.int32)
    stats = SortStats()
    merge_runs(arr, 0, 0, 1, stats)
    assert arr.tolist() == [0, 1]
    assert stats.comparisons == 1
    assert stats.moves == 4  # two into scratch, two back


def test_merge_runs_equal_keys():
    arr = np.array([2, 2, 2, 2], dtype=np.int32)
    stats = SortStats()
    merge_runs(arr, 0, 1, 3, stats)
    assert arr.tolist() == [2, 2, 2, 2]
    # with ties going left, the left run drains first: 2 comparisons then copy-out
    assert stats.comparisons == 2


def test_merge_runs_leaves_outside_untouched():
    arr = np.array([9, 1, 3, 0, 2, -5], dtype=np.int32)
    merge_runs(arr, 1, 2, 4)
    assert arr.tolist() == [9, 0, 1, 2, 3, -5]


def test_merge_runs_other_dtype():
    arr = np.array([4, 5, 1], dtype=np.int64)
    merge_runs(arr, 0, 1, 2)
    assert arr.tolist() == [1, 4, 5]


@pytest.mark.parametrize(
    "low,mid,high",
    [(-1, 0, 1), (0, 1, 1), (2, 1, 3), (0, 1, 4), (1, 0, 2)],
)
def test_merge_runs_index_violation(low, mid, high):
    arr = np.array([0, 1, 2, 3], dtype=np.int32)
    with pytest.raises(IndexViolation):
        merge_runs(arr, low, mid, high)
    assert arr.tolist() == [0, 1, 2, 3]


def test_merge_sort_example():
    out, _ = merge_sort([3, 1, 4, 1, 5, 9, 2, 6])
    assert out.tolist() == [1, 1, 2, 3, 4, 5, 6, 9]


def test_merge_sort_empty():
    out, stats = merge_sort([])
    assert out.size == 0 and stats.comparisons == 0


def test_merge_sort_4096_bound():
    assert merge_sort(gen_vector(4096, 0))[1].comparisons <= 49152


@given(any_lists)
def test_merge_sort_stable_and_bounded(values):
    out, order, stats = merge_argsort(values)
    assert order.tolist() == sorted(range(len(values)), key=lambda i: values[i])
    assert out.tolist() == oracle_sort(values)
    n = len(values)
    if n >= 2:
        assert stats.comparisons <= n * math.ceil(math.log2(n))


@given(st.lists(st.integers(0, 5), min_size=2, max_size=60), st.data())
def test_merge_runs_stable(values, data):
    mid = data.draw(st.integers(0, len(values) - 2))
    left, right = sorted(values[: mid + 1]), sorted(values[mid + 1 :])
    # tag each key with its position so ties expose reordering
    keys = left + right
    arr = np.array(keys, dtype=np.int32)
    idx = np.arange(len(keys), dtype=np.int64)
    width = len(keys)
    _merge_kernel(arr, idx, 0, mid, width - 1, np.empty(width, np.int32), np.empty(width, np.int64))
    expected = sorted(range(width), key=lambda i: keys[i])
    assert idx.tolist() == expected
    plain = np.array(keys, dtype=np.int32)
    stats = SortStats()
    merge_runs(plain, 0, mid, len(keys) - 1, stats)
    assert plain.tolist() == sorted(keys)
    assert stats.moves == 2 * len(keys)


@pytest.mark.parametrize("n", range(4, 200))
def test_comparison_ordering(n):
    ds = gen_vector(n, 0)
    r = rank_sort(ds)[1].comparisons
    b = bubble_sort(ds)[1].comparisons
    m = merge_sort(ds)[1].comparisons
    assert r > b > m
