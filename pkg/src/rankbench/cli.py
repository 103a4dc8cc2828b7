"""Command-line entry point: ``rankbench {gen,sort,bench,verify}``.

Exit status is 0 when everything verified, 1 on a verification failure
and 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .bench_harness import emit_csv, emit_plot_data, first_error, run_suite
from .core import SortStats
from .data_gen import format_dataset, gen_vector, is_permutation, load_dataset
from .errors import ConfigMismatch, InvalidSize, VerificationFailure
from .kernel_model import DEFAULT_THREADS_PER_BLOCK, KernelConfig
from .parallel_backend import WorkerPoolConfig, default_workers, launch_parallel
from .sorts_cpu import bubble_sort, merge_sort, rank_sort, rank_sort_stable

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG = 0, 1, 2

HOST_SORTS = {
    "rank": ("cpu-rank", rank_sort),
    "rank-stable": ("cpu-rank-stable", rank_sort_stable),
    "bubble": ("cpu-bubble", bubble_sort),
    "merge": ("cpu-merge", merge_sort),
}
ALGOS = [*HOST_SORTS, "device"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**32:
        raise argparse.ArgumentTypeError(f"must be an unsigned 32-bit integer, got {value}")
    return value


def _sizes(text: str) -> List[int]:
    try:
        sizes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"sizes must be positive integers, got {text!r}")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rankbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a seeded permutation dataset")
    gen.add_argument("--n", type=_positive, required=True)
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--out", help="output file (default: stdout)")

    srt = sub.add_parser("sort", help="run one sorter on gen_vector(n, seed)")
    srt.add_argument("--algo", choices=ALGOS, required=True)
    srt.add_argument("--n", type=_positive, required=True)
    srt.add_argument("--seed", type=_seed, default=0)
    srt.add_argument("--tpb", type=_positive, default=DEFAULT_THREADS_PER_BLOCK,
                     help="threads per block for --algo device")
    srt.add_argument("--workers", type=_positive, default=None)
    srt.add_argument("--trace", metavar="PATH",
                     help="write one 'block=<b> phase=<p> barrier=ok' line per barrier")

    bench = sub.add_parser("bench", help="run every sorter over a list of sizes")
    bench.add_argument("--sizes", type=_sizes, default=[512, 1024, 4096])
    bench.add_argument("--seed", type=_seed, default=0)
    bench.add_argument("--tpb", type=_positive, default=DEFAULT_THREADS_PER_BLOCK)
    bench.add_argument("--workers", type=_positive, default=None)
    bench.add_argument("--reps", type=_positive, default=5)
    bench.add_argument("--warmups", type=int, default=1)
    bench.add_argument("--csv", metavar="PATH", help="CSV output file (default: stdout)")
    bench.add_argument("--plot", metavar="PATH", help="write '<n> <acc_ratio>' rows here")

    ver = sub.add_parser("verify", help="check a dataset file is a permutation of 0..n-1")
    ver.add_argument("--in", dest="infile", required=True)
    return parser


def _pool(args) -> WorkerPoolConfig:
    workers = args.workers if args.workers is not None else default_workers()
    return WorkerPoolConfig(num_workers=workers)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_gen(args) -> int:
    _write(args.out, format_dataset(gen_vector(args.n, args.seed)))
    return EXIT_OK


def _warm_jit() -> None:
    # compile (or load cached) kernels so the timed run excludes JIT time
    tiny = gen_vector(4)
    for _, fn in HOST_SORTS.values():
        fn(tiny)
    launch_parallel(KernelConfig(4, 4), tiny, WorkerPoolConfig(1))


def _cmd_sort(args) -> int:
    ds = gen_vector(args.n, args.seed)
    _warm_jit()
    if args.algo == "device":
        config = KernelConfig(args.n, args.tpb)
        out, trace, elapsed = launch_parallel(config, ds.values, _pool(args))
        label, stats = "device-model", SortStats(trace.comparisons, args.n, elapsed)
        if args.trace:
            _write(args.trace, trace.dump())
    else:
        if args.trace:
            raise UsageError("--trace is only available with --algo device")
        label, fn = HOST_SORTS[args.algo]
        out, stats = fn(ds)
    idx = first_error(out)
    print(f"{label}:" + ("sort right" if idx is None else f"sort error {idx}"))
    print(f"elapsed: {stats.elapsed:.6g} ms")
    print(f"comparisons: {stats.comparisons}")
    return EXIT_OK if idx is None else EXIT_VERIFY


def _cmd_bench(args) -> int:
    if args.warmups < 0:
        raise UsageError("--warmups must be >= 0")
    status = EXIT_OK
    try:
        reports = run_suite(args.sizes, args.seed, args.tpb, _pool(args), args.reps,
                            args.warmups, report=lambda line: print(line, file=sys.stderr))
    except VerificationFailure as exc:
        print(f"rankbench: {exc}", file=sys.stderr)
        reports, status = exc.reports, EXIT_VERIFY
    _write(args.csv, emit_csv(reports))
    if args.plot:
        _write(args.plot, emit_plot_data(reports))
    return status


def _cmd_verify(args) -> int:
    ds = load_dataset(args.infile)
    if is_permutation(ds.values):
        print(f"permutation of 0..{ds.n - 1}: ok")
        return EXIT_OK
    print(f"not a permutation of 0..{ds.n - 1}")
    return EXIT_VERIFY


COMMANDS = {"gen": _cmd_gen, "sort": _cmd_sort, "bench": _cmd_bench, "verify": _cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"{exc}", file=sys.stderr)
    except (ConfigMismatch, InvalidSize) as exc:
        print(f"rankbench: config error: {exc}", file=sys.stderr)
    except (OSError, ValueError) as exc:
        print(f"rankbench: error: {exc}", file=sys.stderr)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
