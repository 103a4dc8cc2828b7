"""Run the kernel model's blocks on a pool of OS threads.

The jitted block engine releases the GIL, so blocks assigned to different
workers really do execute at the same time. Blocks are cut into
contiguous tasks of ``blocks_per_task`` and dealt round-robin to workers,
making the block-to-worker mapping a pure function of the config.
"""

from __future__ import annotations

import os
import time
import threading
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .core import DatasetLike, SortStats, as_dataset
from .errors import ConfigMismatch
from .kernel_model import (
    ExecutionTrace,
    KernelConfig,
    _OK,
    _block_engine,
    _prepare,
    check_writes,
)

WORKERS_ENV = "RANKBENCH_WORKERS"


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


@dataclass(frozen=True)
class WorkerPoolConfig:
    num_workers: int = field(default_factory=default_workers)
    blocks_per_task: int = 1

    def __post_init__(self):
        if int(self.num_workers) < 1:
            raise ValueError(f"num_workers must be >= 1, got {self.num_workers}")
        if int(self.blocks_per_task) < 1:
            raise ValueError(f"blocks_per_task must be >= 1, got {self.blocks_per_task}")

    def assignment(self, num_blocks: int) -> List[List[range]]:
        """Block ranges handled by each worker, in execution order."""
        step = self.blocks_per_task
        tasks = [range(lo, min(lo + step, num_blocks)) for lo in range(0, num_blocks, step)]
        return [tasks[w :: self.num_workers] for w in range(self.num_workers)]


def _run_tasks(tasks, tpb, arr, b, writes, comparisons, barriers):
    # each block writes only its own entries of comparisons/barriers
    for blocks in tasks:
        for block in blocks:
            c, nb, status = _block_engine(block, tpb, arr, b, writes)
            if status != _OK:
                raise ConfigMismatch(f"block {block} diverged at barrier {nb}")
            comparisons[block] = c
            barriers[block] = nb


def launch_parallel(config: KernelConfig, a: DatasetLike,
                    pool: Optional[WorkerPoolConfig] = None) -> Tuple[np.ndarray, ExecutionTrace, float]:
    """Parallel launch; returns ``(b, trace, elapsed_ms)``.

    ``elapsed_ms`` runs from releasing the workers to joining the last one.
    Threads are parked on a start barrier before the clock starts and the
    slot-write check happens after it stops.
    """
    pool = pool or WorkerPoolConfig()
    arr = _prepare(config, a)
    arr.setflags(write=False)
    b = np.zeros(config.n, dtype=np.int32)
    writes = np.zeros(config.n, dtype=np.int64)
    comparisons = np.zeros(config.num_blocks, dtype=np.int64)
    barriers = np.zeros(config.num_blocks, dtype=np.int64)
    plan = [t for t in pool.assignment(config.num_blocks) if t]
    args = (config.threads_per_block, arr, b, writes, comparisons, barriers)

    if len(plan) == 1:
        t0 = time.perf_counter()
        _run_tasks(plan[0], *args)
        elapsed = (time.perf_counter() - t0) * 1e3
    else:
        start = threading.Barrier(len(plan) + 1)
        errors: List[BaseException] = []

        def worker(tasks):
            start.wait()
            try:
                _run_tasks(tasks, *args)
            except BaseException as exc:  # re-raised on the calling thread
                errors.append(exc)

        threads = [threading.Thread(target=worker, args=(t,), daemon=True) for t in plan]
        for th in threads:
            th.start()
        start.wait()
        t0 = time.perf_counter()
        for th in threads:
            th.join()
        elapsed = (time.perf_counter() - t0) * 1e3
        if errors:
            raise errors[0]

    check_writes(writes)
    trace = ExecutionTrace(config, tuple(int(x) for x in barriers), int(comparisons.sum()))
    return b, trace, elapsed


def parallel_rank_sort(data: DatasetLike, config: Optional[KernelConfig] = None,
                       pool: Optional[WorkerPoolConfig] = None,
                       stats: Optional[SortStats] = None):
    """Rank sort through the kernel model on a worker pool.

    Returns ``(output, elapsed_ms)``; the output does not depend on the
    number of workers. Counters are added to ``stats`` when one is passed.
    """
    ds = as_dataset(data)
    if config is None:
        config = KernelConfig(ds.n)
    b, trace, elapsed = launch_parallel(config, ds.values, pool)
    if stats is not None:
        stats += SortStats(trace.comparisons, config.n, elapsed)
    return b, elapsed
