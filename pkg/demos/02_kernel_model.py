"""
Walking through the block/thread enumeration-sort model
=======================================================

Each block stages the input through its own cache one tile at a time.
Between barriers the threads run in ascending tid order, so a launch is
fully deterministic and can be compared bit for bit with the sequential
rank sort.
"""

import numpy as np

from rankbench import (
    KernelConfig,
    barrier_schedule,
    check_barrier_uniformity,
    gen_vector,
    launch_enumeration_sort,
    rank_sort,
    run_block,
)
from rankbench.kernel_model import thread_contexts

a = [3, 1, 0, 2, 7, 5, 4, 6]
cfg = KernelConfig(n=8, threads_per_block=4)
print(cfg, "tiles per block:", cfg.tiles)

#%%
# Run only block 0: its four threads write their own ranks
b = np.full(8, -1, dtype=np.int32)
print(run_block(0, cfg, a, b), b.tolist())
for ctx in thread_contexts(cfg, a, 0):
    print("  ", ctx)

#%%
# Whole grid, with the barrier trace
b, trace = launch_enumeration_sort(cfg, a, trace=True)
print(b.tolist())
print(trace.dump(), end="")

#%%
# Any factorization of n gives the same answer as host rank sort
ds = gen_vector(1024, 0)
ref = rank_sort(ds)[0]
for tpb in (32, 64, 128, 256, 512, 1024):
    out, _ = launch_enumeration_sort(KernelConfig(1024, tpb), ds)
    print(f"tpb={tpb:<5} blocks={1024 // tpb:<4} equal to rank_sort: {np.array_equal(out, ref)}")

#%%
# Why n must be a multiple of threads_per_block: the tail threads drop out of the loop
print(check_barrier_uniformity(KernelConfig(1024, 512)))
print(barrier_schedule(1000, 512, 1))
