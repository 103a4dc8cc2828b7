"""Generate, sort, verify, time and report.

For each problem size the harness builds ``gen_vector(n, seed)``, runs the
three host sorters and the device-model rank sort, checks that each one
returns ``0..n-1``, and folds the median timings into an :class:`AccReport`.
All times are milliseconds. The speedup baseline is host rank sort, since
it performs the same ``n*n`` comparisons as the kernel.
"""

from __future__ import annotations

import csv
import io
import logging
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .core import Dataset, SortStats
from .data_gen import gen_vector
from .errors import VerificationFailure
from .kernel_model import DEFAULT_THREADS_PER_BLOCK, KernelConfig
from .parallel_backend import WorkerPoolConfig, parallel_rank_sort
from .sorts_cpu import bubble_sort, merge_sort, rank_sort

log = logging.getLogger(__name__)

HOST_RANK = "host-rank"
HOST_BUBBLE = "host-bubble"
HOST_MERGE = "host-merge"
DEVICE_MODEL = "device-model"
ALGORITHMS = (HOST_RANK, HOST_BUBBLE, HOST_MERGE, DEVICE_MODEL)

# labels used on "<label>:sort right" lines
VERIFY_LABELS = {
    DEVICE_MODEL: "device-model",
    HOST_RANK: "cpu-rank",
    HOST_BUBBLE: "cpu-bubble",
    HOST_MERGE: "cpu-merge",
}

CSV_HEADER = "n,host_rank_ms,host_bubble_ms,host_merge_ms,device_ms,accelerated_ms,acc_ratio"
CSV_FIELDS = tuple(CSV_HEADER.split(","))


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    n: int
    elapsed_ms: float
    verified: bool
    comparisons: int


@dataclass(frozen=True)
class AccReport:
    n: int
    host_rank_ms: float
    host_bubble_ms: float
    host_merge_ms: float
    device_ms: float
    accelerated_ms: float
    acc_ratio: float
    records: Tuple[BenchRecord, ...] = field(default=(), compare=False)

    @classmethod
    def from_times(cls, n, host_rank_ms, host_bubble_ms, host_merge_ms, device_ms, records=()):
        for rec in records:
            if not rec.verified:
                raise ValueError(f"unverified {rec.algorithm} record cannot enter a report")
        return cls(
            int(n),
            float(host_rank_ms),
            float(host_bubble_ms),
            float(host_merge_ms),
            float(device_ms),
            accelerated(host_rank_ms, device_ms),
            acc_ratio(host_rank_ms, device_ms),
            tuple(records),
        )

    def record(self, algorithm: str) -> BenchRecord:
        for rec in self.records:
            if rec.algorithm == algorithm:
                return rec
        raise KeyError(algorithm)


class Failure(NamedTuple):
    algorithm: str
    n: int
    index: int


def first_error(b: Sequence[int]) -> Optional[int]:
    """Index of the first ``b[i] != i``, or ``None`` if there is none."""
    arr = np.asarray(b)
    bad = np.flatnonzero(arr != np.arange(arr.size))
    return int(bad[0]) if bad.size else None


def verify_identity(b: Sequence[int], n: Optional[int] = None,
                    report: Optional[Callable[[str], None]] = None) -> bool:
    """True iff ``b[i] == i`` for every ``i``.

    Valid as a sortedness check only because every generated input is a
    permutation of ``0..n-1``. If ``report`` is given it receives
    ``"sort right"`` or ``"sort error <i>"``.
    """
    arr = np.asarray(b)
    if n is not None and arr.size != n:
        raise ValueError(f"expected {n} values, got {arr.size}")
    idx = first_error(arr)
    if report is not None:
        report("sort right" if idx is None else f"sort error {idx}")
    return idx is None


def time_op(runner: Callable[[], object], warmups: int = 1, reps: int = 5,
            clock: Callable[[], float] = time.perf_counter, self_timed: bool = False) -> float:
    """Median wall time of ``reps`` runs after ``warmups`` untimed runs, in ms.

    ``clock`` returns seconds. With ``self_timed`` the runner returns its
    own elapsed milliseconds and the clock is not consulted.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    for _ in range(warmups):
        runner()
    samples = []
    for _ in range(reps):
        if self_timed:
            samples.append(float(runner()))
        else:
            t0 = clock()
            runner()
            samples.append((clock() - t0) * 1e3)
    return statistics.median(samples)


def accelerated(host_rank_ms: float, device_ms: float) -> float:
    """Absolute time saved by the device; negative when the device is slower."""
    return float(host_rank_ms) - float(device_ms)


def acc_ratio(host_rank_ms: float, device_ms: float) -> float:
    if device_ms == 0:
        raise ZeroDivisionError("acc_ratio is undefined for device_ms == 0")
    return float(host_rank_ms) / float(device_ms)


# A sorter maps a dataset to (output, stats); stats.elapsed is the timed region.
Sorter = Callable[[Dataset], Tuple[np.ndarray, SortStats]]


def device_sorter(tpb: int = DEFAULT_THREADS_PER_BLOCK,
                  pool: Optional[WorkerPoolConfig] = None) -> Sorter:
    def run(ds):
        stats = SortStats()
        out, _ = parallel_rank_sort(ds, KernelConfig(ds.n, tpb), pool, stats)
        return out, stats

    return run


def default_sorters(tpb: int = DEFAULT_THREADS_PER_BLOCK,
                    pool: Optional[WorkerPoolConfig] = None) -> Dict[str, Sorter]:
    return {
        HOST_RANK: rank_sort,
        HOST_BUBBLE: bubble_sort,
        HOST_MERGE: merge_sort,
        DEVICE_MODEL: device_sorter(tpb, pool),
    }


def run_size(n: int, seed: int = 0, tpb: int = DEFAULT_THREADS_PER_BLOCK,
             pool: Optional[WorkerPoolConfig] = None, reps: int = 5, warmups: int = 1,
             sorters: Optional[Dict[str, Sorter]] = None,
             report: Optional[Callable[[str], None]] = None) -> AccReport:
    """Benchmark one size.

    Every sorter is verified on its first run, before any timing. Raises
    :class:`VerificationFailure` naming the first wrong algorithm.
    """
    KernelConfig(n, tpb)
    ds = gen_vector(n, seed)
    sorters = {**default_sorters(tpb, pool), **(sorters or {})}
    records = {}
    for name in ALGORITHMS:
        sorter = sorters[name]
        out, stats = sorter(ds)
        idx = first_error(out)
        if report is not None:
            verdict = "sort right" if idx is None else f"sort error {idx}"
            report(f"{VERIFY_LABELS[name]}:{verdict}")
        if idx is not None:
            raise VerificationFailure([Failure(name, n, idx)])
        elapsed = time_op(lambda: sorter(ds)[1].elapsed, warmups, reps, self_timed=True)
        records[name] = BenchRecord(name, n, elapsed, True, int(stats.comparisons))
        log.debug("n=%d %s %.6g ms", n, name, elapsed)
    return AccReport.from_times(
        n,
        records[HOST_RANK].elapsed_ms,
        records[HOST_BUBBLE].elapsed_ms,
        records[HOST_MERGE].elapsed_ms,
        records[DEVICE_MODEL].elapsed_ms,
        records=tuple(records[a] for a in ALGORITHMS),
    )


def run_suite(sizes: Iterable[int], seed: int = 0, tpb: int = DEFAULT_THREADS_PER_BLOCK,
              pool: Optional[WorkerPoolConfig] = None, reps: int = 5, warmups: int = 1,
              sorters: Optional[Dict[str, Sorter]] = None,
              report: Optional[Callable[[str], None]] = None) -> List[AccReport]:
    """Run :func:`run_size` for each size, ascending.

    A verification failure drops only that size. Once all sizes have run,
    any failures are raised together as one :class:`VerificationFailure`
    whose ``reports`` holds the sizes that passed.
    """
    sizes = sorted(set(int(n) for n in sizes))
    for n in sizes:
        KernelConfig(n, tpb)
    reports, failures = [], []
    for n in sizes:
        try:
            reports.append(run_size(n, seed, tpb, pool, reps, warmups, sorters, report))
        except VerificationFailure as exc:
            log.error("n=%d: %s", n, exc)
            failures.extend(exc.failures)
    if failures:
        raise VerificationFailure(failures, reports)
    return reports


def _fmt(x: float) -> str:
    return "%.6g" % x


def emit_csv(reports: Iterable[AccReport]) -> str:
    lines = [CSV_HEADER]
    for r in sorted(reports, key=lambda r: r.n):
        lines.append(",".join([str(r.n)] + [_fmt(getattr(r, f)) for f in CSV_FIELDS[1:]]))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> List[AccReport]:
    """Inverse of :func:`emit_csv` (to printed precision)."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    return [
        AccReport(int(row["n"]), *(float(row[f]) for f in CSV_FIELDS[1:]))
        for row in reader
    ]


def emit_plot_data(reports: Iterable[AccReport]) -> str:
    """``<n> <acc_ratio>`` rows, ascending ``n``."""
    return "".join("%d %.6g\n" % (r.n, r.acc_ratio) for r in sorted(reports, key=lambda r: r.n))


def format_report(report: AccReport) -> str:
    """Human-readable summary laid out like a console benchmark printout."""
    lines = [f"{VERIFY_LABELS[a]}:sort right" for a in (DEVICE_MODEL, HOST_RANK, HOST_BUBBLE, HOST_MERGE)]
    lines += [
        f"host-rank:{_fmt(report.host_rank_ms)}",
        f"host-bubble:{_fmt(report.host_bubble_ms)}",
        f"host-merge:{_fmt(report.host_merge_ms)}",
        f"device-model: {_fmt(report.device_ms)}",
        f"accelerated : {_fmt(report.accelerated_ms)}",
        f"Acc ratio: {_fmt(report.acc_ratio)}",
    ]
    return "\n".join(lines) + "\n"
