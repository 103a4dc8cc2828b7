"""Core value types: :class:`Dataset` and :class:`SortStats`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

INT32_MIN = -(2**31)
INT32_MAX = 2**31 - 1


def _as_int32(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d sequence, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"expected integer values, got dtype {arr.dtype}")
    if arr.size and (arr.min() < INT32_MIN or arr.max() > INT32_MAX):
        raise OverflowError("values do not fit in signed 32-bit integers")
    return np.ascontiguousarray(arr, dtype=np.int32)


def _all_distinct(arr: np.ndarray) -> bool:
    if arr.size < 2:
        return True
    s = np.sort(arr)
    return bool(np.all(s[1:] != s[:-1]))


@dataclass(frozen=True, eq=False)
class Dataset:
    """A sequence of signed 32-bit integers plus how it was made.

    ``distinct`` is computed from the values when not given. Passing
    ``distinct=True`` for values that contain duplicates is an error.
    """

    values: np.ndarray
    seed: Optional[int] = None
    distinct: Optional[bool] = None

    def __post_init__(self):
        arr = _as_int32(self.values)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        actual = _all_distinct(arr)
        if self.distinct is None:
            object.__setattr__(self, "distinct", actual)
        elif self.distinct and not actual:
            raise ValueError("distinct=True but values contain duplicates")
        else:
            object.__setattr__(self, "distinct", bool(self.distinct))
        if self.seed is not None and not 0 <= self.seed < 2**32:
            raise ValueError(f"seed must be an unsigned 32-bit integer, got {self.seed}")

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.distinct == other.distinct
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"Dataset(n={self.n}, seed={self.seed}, distinct={self.distinct})"


DatasetLike = Union[Dataset, Sequence[int], np.ndarray]


def as_dataset(data: DatasetLike) -> Dataset:
    if isinstance(data, Dataset):
        return data
    return Dataset(data)


@dataclass
class SortStats:
    """Exact operation counters for one sort run.

    ``moves`` means swaps for bubble sort, element copies for merge sort
    and output writes for rank sort. ``elapsed`` is in milliseconds.
    """

    comparisons: int = 0
    moves: int = 0
    elapsed: float = 0.0

    def __iadd__(self, other: "SortStats") -> "SortStats":
        self.comparisons += other.comparisons
        self.moves += other.moves
        self.elapsed += other.elapsed
        return self
