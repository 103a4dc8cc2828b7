"""
Host sorts against the parallel device model
============================================

Runs the four sorters on seeded permutations, verifies each result, and
prints the report, the CSV and the n-vs-ratio plot data. Speedups come
from host threads standing in for a GPU and are labelled device-model.
"""

import os

from rankbench import WorkerPoolConfig, emit_csv, emit_plot_data, format_report, run_suite

pool = WorkerPoolConfig(num_workers=min(4, os.cpu_count() or 1))
reports = run_suite([512, 1024, 4096], seed=0, pool=pool, reps=5, report=print)

for r in reports:
    print(f"--- n={r.n}")
    print(format_report(r), end="")

#%%
print(emit_csv(reports), end="")
print(emit_plot_data(reports), end="")

#%%
# Optional chart, if matplotlib is around
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.plot([r.n for r in reports], [r.acc_ratio for r in reports], "o-")
    ax.set_xlabel("n")
    ax.set_ylabel("host-rank / device-model")
    fig.savefig("acc_ratio.png", dpi=100)
    print("wrote acc_ratio.png")
