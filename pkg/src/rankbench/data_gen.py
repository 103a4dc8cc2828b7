"""Seeded permutation datasets built on a pinned MSVC-style ``rand()``.

The generator reproduces the common C idiom::

    srand(seed);
    for (i = 0; i < n; i++) x[i] = i;
    for (i = 0; i < n; i++) { r = rand() % n; swap(x[i], x[r]); }

with ``rand()`` fixed to ``state = state * 214013 + 2531011`` and
``value = (state >> 16) & 0x7FFF`` so every platform produces the same
bytes. The modulo bias of ``rand() % n`` is kept on purpose.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numba
import numpy as np

from .core import Dataset
from .errors import InvalidSize

LCG_MULTIPLIER = 214013
LCG_INCREMENT = 2531011
RAND_MAX = 0x7FFF
_MASK32 = 0xFFFFFFFF

PathLike = Union[str, "os.PathLike[str]"]


def lcg_next(state: int) -> Tuple[int, int]:
    """Advance the generator once; return ``(value, new_state)``."""
    state = (state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK32
    return (state >> 16) & RAND_MAX, state


@dataclass
class Lcg:
    """Stateful wrapper around :func:`lcg_next`, in the spirit of ``srand``/``rand``."""

    state: int = 0

    def __post_init__(self):
        self.state &= _MASK32

    def rand(self) -> int:
        value, self.state = lcg_next(self.state)
        return value

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.rand()


@numba.njit(cache=True)
def _shuffle(n, state):
    x = np.arange(n, dtype=np.int32)
    for i in range(n):
        state = (state * np.uint64(LCG_MULTIPLIER) + np.uint64(LCG_INCREMENT)) & np.uint64(_MASK32)
        r = np.int64((state >> np.uint64(16)) & np.uint64(RAND_MAX)) % n
        tmp = x[i]
        x[i] = x[r]
        x[r] = tmp
    return x


def gen_vector(n: int, seed: int = 0) -> Dataset:
    """Return ``0..n-1`` shuffled by the ``rand() % n`` swap loop."""
    n = int(n)
    if n < 1:
        raise InvalidSize(f"n must be >= 1, got {n}")
    if not 0 <= seed <= _MASK32:
        raise ValueError(f"seed must be an unsigned 32-bit integer, got {seed}")
    return Dataset(_shuffle(n, np.uint64(seed)), seed=int(seed), distinct=True)


def is_permutation(values) -> bool:
    """True if ``values`` holds each of ``0..len(values)-1`` exactly once."""
    arr = np.asarray(values)
    n = arr.size
    if n == 0:
        return True
    if arr.min() < 0 or arr.max() >= n:
        return False
    return bool(np.bincount(arr.astype(np.int64), minlength=n).max() == 1)


def format_dataset(ds: Dataset) -> str:
    seed = "none" if ds.seed is None else str(ds.seed)
    body = "".join(f"{int(v)}\n" for v in ds.values)
    return f"# n={ds.n} seed={seed}\n{body}"


def parse_dataset(text: str) -> Dataset:
    """Parse the one-integer-per-line format written by :func:`format_dataset`.

    The ``# n=... seed=...`` header is optional; when present its count
    must match the number of value lines.
    """
    declared_n = None
    seed = None
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                key, _, val = token.partition("=")
                if key == "n":
                    declared_n = int(val)
                elif key == "seed" and val != "none":
                    seed = int(val)
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise ValueError(f"line {lineno}: not an integer: {line!r}") from None
    if declared_n is not None and declared_n != len(values):
        raise ValueError(f"header declares n={declared_n} but file has {len(values)} values")
    return Dataset(np.array(values, dtype=np.int64), seed=seed)


def save_dataset(ds: Dataset, path: PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_dataset(ds))


def load_dataset(path: PathLike) -> Dataset:
    with open(path) as fh:
        return parse_dataset(fh.read())
