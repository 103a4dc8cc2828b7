"""Deterministic execution model of a tiled enumeration-sort kernel.

The modelled kernel, per thread::

    cnt = 0; tid = threadIdx.x; ttid = blockIdx.x * blockDim + tid
    val = a[ttid]
    __shared__ int cache[blockDim];
    for (i = tid; i < N; i += blockDim) {
        cache[tid] = a[i];
        __syncthreads();
        for (j = 0; j < blockDim; ++j) if (val > cache[j]) cnt++;
        __syncthreads();
    }
    b[cnt] = val;

Each block owns a private cache. Between two barriers the threads of a
block run their sub-step one after another in ascending ``tid`` order; a
barrier completes only once every thread of the block has arrived.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numba
import numpy as np

from .core import DatasetLike
from .errors import ConfigMismatch, DuplicateElements

DEFAULT_THREADS_PER_BLOCK = 512

# status codes returned by the block engine
_OK = 0
_DIVERGED = 1


@dataclass(frozen=True)
class KernelConfig:
    """Grid geometry for one launch.

    ``num_blocks`` defaults to ``n // threads_per_block``. The grid must
    cover ``n`` exactly; any remainder would leave threads skipping
    barriers their block-mates wait on.
    """

    n: int
    threads_per_block: int = DEFAULT_THREADS_PER_BLOCK
    num_blocks: Optional[int] = None

    def __post_init__(self):
        tpb = int(self.threads_per_block)
        if tpb < 1:
            raise ConfigMismatch(f"threads_per_block must be positive, got {tpb}")
        n = int(self.n)
        if n < 1:
            raise ConfigMismatch(f"n must be positive, got {n}")
        blocks = n // tpb if self.num_blocks is None else int(self.num_blocks)
        if blocks < 1 or blocks * tpb != n:
            raise ConfigMismatch(
                f"n={n} is not num_blocks*threads_per_block "
                f"({blocks}*{tpb}); n must be a multiple of threads_per_block"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "threads_per_block", tpb)
        object.__setattr__(self, "num_blocks", blocks)

    @property
    def cache_capacity(self) -> int:
        return self.threads_per_block

    @property
    def tiles(self) -> int:
        return self.n // self.threads_per_block

    def factorizations(self) -> List["KernelConfig"]:
        return factorizations(self.n)


def factorizations(n: int, tpb_choices: Optional[Sequence[int]] = None) -> List[KernelConfig]:
    """All valid configs for ``n``, optionally limited to given block sizes."""
    if tpb_choices is None:
        tpb_choices = [d for d in range(1, n + 1) if n % d == 0]
    return [KernelConfig(n, t) for t in tpb_choices if n % t == 0]


@dataclass(frozen=True)
class ThreadCtx:
    """Register state of one simulated thread."""

    tid: int
    block_idx: int
    ttid: int
    val: int
    cnt: int = 0


class BarrierCheck(NamedTuple):
    ok: bool
    tile_phases: int
    block: Optional[int] = None
    phase: Optional[int] = None

    def __bool__(self):
        return self.ok


class BlockSummary(NamedTuple):
    comparisons: int
    barriers: int


@dataclass(frozen=True)
class ExecutionTrace:
    """What a launch did: one barrier count per block plus comparison totals."""

    config: KernelConfig
    barriers_per_block: Tuple[int, ...]
    comparisons: int

    def lines(self) -> List[str]:
        return [
            f"block={b} phase={p} barrier=ok"
            for b, count in enumerate(self.barriers_per_block)
            for p in range(count)
        ]

    def dump(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def barrier_schedule(n: int, threads_per_block: int, num_blocks: int) -> BarrierCheck:
    """Barrier analysis for raw geometry, no alignment assumed.

    Thread ``tid`` iterates ``i = tid, tid + tpb, ... < n`` and so reaches
    two barriers per iteration. If block-mates disagree, the first barrier
    that some of them never reach is reported.
    """
    tpb = threads_per_block
    if n <= 0 or tpb <= 0 or num_blocks <= 0:
        return BarrierCheck(False, 0, 0, 0)
    # block_idx does not enter the loop bounds, so each block behaves alike
    iters = [max(0, -(-(n - tid) // tpb)) for tid in range(tpb)]
    lo, hi = min(iters), max(iters)
    if lo == hi:
        return BarrierCheck(True, lo)
    return BarrierCheck(False, lo, 0, 2 * lo)


def check_barrier_uniformity(config: KernelConfig) -> BarrierCheck:
    """Confirm every thread of every block executes the same barrier phases."""
    return barrier_schedule(config.n, config.threads_per_block, config.num_blocks)


@numba.njit(cache=True, nogil=True)
def _block_engine(block_idx, tpb, a, b, writes):
    n = a.size
    base = block_idx * tpb
    cache = np.empty(tpb, dtype=a.dtype)
    val = np.empty(tpb, dtype=a.dtype)
    cnt = np.zeros(tpb, dtype=np.int64)
    loop_i = np.empty(tpb, dtype=np.int64)
    arrived = np.zeros(tpb, dtype=np.int64)
    for tid in range(tpb):
        val[tid] = a[base + tid]
        loop_i[tid] = tid
    comparisons = 0
    barriers = 0
    while True:
        # load sub-step, then barrier 1
        active = 0
        for tid in range(tpb):
            if loop_i[tid] < n:
                cache[tid] = a[loop_i[tid]]
                arrived[tid] += 1
                active += 1
        if active == 0:
            break
        if active != tpb:
            return comparisons, barriers, _DIVERGED
        barriers += 1
        # compare sub-step, then barrier 2
        for tid in range(tpb):
            v = val[tid]
            c = cnt[tid]
            for j in range(tpb):
                if v > cache[j]:
                    c += 1
            comparisons += tpb
            cnt[tid] = c
            arrived[tid] += 1
        for tid in range(tpb):
            if arrived[tid] != barriers + 1:
                return comparisons, barriers, _DIVERGED
        barriers += 1
        for tid in range(tpb):
            loop_i[tid] += tpb
    for tid in range(tpb):
        k = cnt[tid]
        b[k] = val[tid]
        writes[k] += 1
    return comparisons, barriers, _OK


def _prepare(config: KernelConfig, a) -> np.ndarray:
    arr = np.ascontiguousarray(a.values if hasattr(a, "values") else a, dtype=np.int32)
    if arr.ndim != 1 or arr.size != config.n:
        raise ConfigMismatch(f"input has {arr.size} elements, config expects n={config.n}")
    return arr


def run_block(block_idx: int, config: KernelConfig, a, b: np.ndarray,
              writes: Optional[np.ndarray] = None) -> BlockSummary:
    """Advance every thread of one block through all of its barrier phases.

    Writes land in ``b`` at each thread's final rank; ``writes`` (a shadow
    counter array, one entry per slot) is incremented alongside. Raises
    :class:`DuplicateElements` if one of this block's slots is hit twice.
    """
    if not 0 <= block_idx < config.num_blocks:
        raise IndexError(f"block {block_idx} outside grid of {config.num_blocks}")
    arr = _prepare(config, a)
    if writes is None:
        writes = np.zeros(config.n, dtype=np.int64)
    comparisons, barriers, status = _block_engine(
        block_idx, config.threads_per_block, arr, b, writes
    )
    if status != _OK:
        raise ConfigMismatch(f"block {block_idx} diverged at barrier {barriers}")
    if np.any(writes > 1):
        raise DuplicateElements(
            f"slot {int(np.argmax(writes > 1))} written more than once"
        )
    return BlockSummary(int(comparisons), int(barriers))


def thread_contexts(config: KernelConfig, a, block_idx: int) -> List[ThreadCtx]:
    """Final register state of each thread in a block (slow; for inspection)."""
    arr = _prepare(config, a)
    tpb = config.threads_per_block
    out = []
    for tid in range(tpb):
        ttid = block_idx * tpb + tid
        val = int(arr[ttid])
        out.append(ThreadCtx(tid, block_idx, ttid, val, int(np.count_nonzero(arr < val))))
    return out


def check_writes(writes: np.ndarray) -> None:
    """Every output slot must be written exactly once."""
    bad = np.flatnonzero(writes != 1)
    if bad.size:
        k = int(bad[0])
        raise DuplicateElements(
            f"output slot {k} written {int(writes[k])} times; input keys are not distinct"
        )


def launch_enumeration_sort(config: KernelConfig, a: DatasetLike, trace: bool = False):
    """Run the whole grid, blocks in ascending order; return ``(b, trace)``.

    ``trace`` is an :class:`ExecutionTrace` when requested, else ``None``.
    The input is copied in and the output copied out; nothing else of
    the host/device split is modelled.
    """
    arr = _prepare(config, a)
    b = np.zeros(config.n, dtype=np.int32)
    writes = np.zeros(config.n, dtype=np.int64)
    barriers = []
    comparisons = 0
    for block in range(config.num_blocks):
        c, nb, status = _block_engine(block, config.threads_per_block, arr, b, writes)
        if status != _OK:
            raise ConfigMismatch(f"block {block} diverged at barrier {nb}")
        comparisons += int(c)
        barriers.append(int(nb))
    check_writes(writes)
    result = ExecutionTrace(config, tuple(barriers), comparisons) if trace else None
    return b, result
