"""Sequential rank, bubble and bottom-up merge sorts with exact counters.

Each sorter copies its input, runs a jitted loop nest that mirrors the
classic C listing statement for statement, and reports how many key
comparisons and element moves it performed. Bound and index tests never
count as comparisons.
"""

from __future__ import annotations

import time

import numba
import numpy as np

from .core import DatasetLike, SortStats, as_dataset
from .errors import DuplicateElements, IndexViolation

__all__ = [
    "rank_sort",
    "rank_sort_stable",
    "rank_argsort_stable",
    "bubble_sort",
    "merge_runs",
    "merge_sort",
    "merge_argsort",
]


@numba.njit(cache=True, nogil=True)
def _rank_kernel(a, b):
    n = a.size
    comparisons = 0
    for i in range(n):
        k = 0
        for j in range(n):
            comparisons += 1
            if a[i] > a[j]:
                k += 1
        b[k] = a[i]
    return comparisons


@numba.njit(cache=True, nogil=True)
def _rank_stable_kernel(a, order):
    # order[k] receives the source index of the k-th smallest element
    n = a.size
    comparisons = 0
    for i in range(n):
        k = 0
        for j in range(n):
            comparisons += 1
            if a[j] < a[i]:
                k += 1
            elif j < i:
                comparisons += 1
                if a[j] == a[i]:
                    k += 1
        order[k] = i
    return comparisons


@numba.njit(cache=True, nogil=True)
def _bubble_kernel(a):
    n = a.size
    comparisons = 0
    swaps = 0
    for i in range(1, n):
        for j in range(n - i):
            comparisons += 1
            if a[j] > a[j + 1]:
                tmp = a[j]
                a[j] = a[j + 1]
                a[j + 1] = tmp
                swaps += 1
    return comparisons, swaps


@numba.njit(cache=True, nogil=True)
def _merge_kernel(arr, idx, low, mid, high, temp, temp_idx):
    # temp/temp_idx are scratch of length >= high - low + 1
    i = low
    j = mid + 1
    k = 0
    comparisons = 0
    moves = 0
    while i <= mid and j <= high:
        comparisons += 1
        if arr[i] <= arr[j]:
            temp[k] = arr[i]
            temp_idx[k] = idx[i]
            i += 1
        else:
            temp[k] = arr[j]
            temp_idx[k] = idx[j]
            j += 1
        k += 1
        moves += 1
    while i <= mid:
        temp[k] = arr[i]
        temp_idx[k] = idx[i]
        i += 1
        k += 1
        moves += 1
    while j <= high:
        temp[k] = arr[j]
        temp_idx[k] = idx[j]
        j += 1
        k += 1
        moves += 1
    k = 0
    for i in range(low, high + 1):
        arr[i] = temp[k]
        idx[i] = temp_idx[k]
        k += 1
        moves += 1
    return comparisons, moves


@numba.njit(cache=True, nogil=True)
def _merge_sort_kernel(arr, idx):
    n = arr.size
    temp = np.empty(n, dtype=arr.dtype)
    temp_idx = np.empty(n, dtype=idx.dtype)
    comparisons = 0
    moves = 0
    size = 1
    while size <= n - 1:
        low = 0
        while low + size <= n - 1:
            mid = low + size - 1
            high = mid + size
            if high > n - 1:
                high = n - 1
            c, m = _merge_kernel(arr, idx, low, mid, high, temp, temp_idx)
            comparisons += c
            moves += m
            low = high + 1
        size *= 2
    return comparisons, moves


def _elapsed_ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1e3


def rank_sort(data: DatasetLike):
    """Enumeration sort: each element's final slot is its count of smaller keys.

    Every element is compared against all ``n`` elements, itself included,
    so ``stats.comparisons == n * n``. Raises :class:`DuplicateElements` on
    non-distinct input, because equal keys would collide on one slot.
    """
    ds = as_dataset(data)
    if not ds.distinct:
        raise DuplicateElements(
            "rank_sort requires distinct keys; use rank_sort_stable for duplicates"
        )
    out = np.empty(ds.n, dtype=np.int32)
    t0 = time.perf_counter()
    comparisons = _rank_kernel(ds.values, out)
    elapsed = _elapsed_ms(t0)
    return out, SortStats(int(comparisons), ds.n, elapsed)


def rank_argsort_stable(data: DatasetLike):
    """Return the stable sorting permutation computed by tie-broken ranking.

    The rank of element ``i`` counts strictly smaller keys plus equal keys
    at lower indices. Equality probes made for the tie-break are counted
    as comparisons on top of the ``n * n`` strict tests.
    """
    ds = as_dataset(data)
    order = np.empty(ds.n, dtype=np.int64)
    t0 = time.perf_counter()
    comparisons = _rank_stable_kernel(ds.values, order)
    elapsed = _elapsed_ms(t0)
    return order, SortStats(int(comparisons), ds.n, elapsed)


def rank_sort_stable(data: DatasetLike):
    """Duplicate-tolerant rank sort. Identical to :func:`rank_sort` on distinct keys."""
    ds = as_dataset(data)
    order, stats = rank_argsort_stable(ds)
    return ds.values[order], stats


def bubble_sort(data: DatasetLike):
    """Bubble sort without early exit.

    Both loops always run to completion: ``comparisons == n*(n-1)/2`` and
    ``moves`` is the number of swaps, which equals the inversion count.
    """
    ds = as_dataset(data)
    out = ds.values.copy()
    t0 = time.perf_counter()
    comparisons, swaps = _bubble_kernel(out)
    elapsed = _elapsed_ms(t0)
    return out, SortStats(int(comparisons), int(swaps), elapsed)


def merge_runs(arr: np.ndarray, low: int, mid: int, high: int, stats: SortStats | None = None):
    """Merge the ascending runs ``arr[low..mid]`` and ``arr[mid+1..high]`` in place.

    Bounds are inclusive. Ties are taken from the left run first, so the
    merge is stable. Counts are added to ``stats`` when given.
    """
    if not isinstance(arr, np.ndarray) or arr.ndim != 1:
        raise TypeError("merge_runs needs a 1-d numpy array")
    if not arr.flags.writeable:
        raise ValueError("merge_runs needs a writeable array")
    low, mid, high = int(low), int(mid), int(high)
    if not 0 <= low <= mid < high < arr.size:
        raise IndexViolation(
            f"need 0 <= low <= mid < high < {arr.size}, got low={low} mid={mid} high={high}"
        )
    work = arr if arr.dtype == np.int32 and arr.flags.c_contiguous else arr.astype(np.int32)
    width = high - low + 1
    idx = np.arange(arr.size, dtype=np.int64)
    t0 = time.perf_counter()
    c, m = _merge_kernel(
        work, idx, low, mid, high, np.empty(width, np.int32), np.empty(width, np.int64)
    )
    elapsed = _elapsed_ms(t0)
    if work is not arr:
        arr[low : high + 1] = work[low : high + 1]
    if stats is not None:
        stats += SortStats(int(c), int(m), elapsed)


def merge_argsort(data: DatasetLike):
    """Stable bottom-up merge sort; returns ``(sorted, order, stats)``.

    ``order[k]`` is the input position of ``sorted[k]``.
    """
    ds = as_dataset(data)
    out = ds.values.copy()
    order = np.arange(ds.n, dtype=np.int64)
    t0 = time.perf_counter()
    comparisons, moves = _merge_sort_kernel(out, order)
    elapsed = _elapsed_ms(t0)
    return out, order, SortStats(int(comparisons), int(moves), elapsed)


def merge_sort(data: DatasetLike):
    """Bottom-up merge sort: run width starts at 1 and doubles each pass.

    ``moves`` counts element copies into the scratch buffer and back.
    """
    out, _, stats = merge_argsort(data)
    return out, stats
