"""Rank, bubble and merge sort benchmarks plus a block/thread model of a
tiled enumeration-sort kernel.

Typical use::

    from rankbench import gen_vector, rank_sort, KernelConfig, launch_enumeration_sort

    ds = gen_vector(1024, seed=0)
    out, stats = rank_sort(ds)
    b, _ = launch_enumeration_sort(KernelConfig(1024, 256), ds)
"""

from .bench_harness import (
    AccReport,
    BenchRecord,
    acc_ratio,
    accelerated,
    emit_csv,
    emit_plot_data,
    format_report,
    parse_csv,
    run_size,
    run_suite,
    time_op,
    verify_identity,
)
from .core import Dataset, SortStats
from .data_gen import Lcg, gen_vector, is_permutation, lcg_next, load_dataset, save_dataset
from .errors import (
    ConfigMismatch,
    DuplicateElements,
    IndexViolation,
    InvalidSize,
    RankBenchError,
    VerificationFailure,
)
from .kernel_model import (
    BarrierCheck,
    ExecutionTrace,
    KernelConfig,
    ThreadCtx,
    barrier_schedule,
    check_barrier_uniformity,
    launch_enumeration_sort,
    run_block,
)
from .parallel_backend import WorkerPoolConfig, launch_parallel, parallel_rank_sort
from .sorts_cpu import (
    bubble_sort,
    merge_argsort,
    merge_runs,
    merge_sort,
    rank_argsort_stable,
    rank_sort,
    rank_sort_stable,
)

__version__ = "0.1.0"
