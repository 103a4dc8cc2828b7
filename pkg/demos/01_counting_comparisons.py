"""
Counting comparisons in three simple sorts
==========================================

Rank sort compares every pair, bubble sort every adjacent pair on a
shrinking prefix, merge sort only along run boundaries. The counters
returned by each sorter are exact, so the textbook formulas can be
checked directly.
"""

import math

from rankbench import bubble_sort, gen_vector, merge_sort, rank_sort, rank_sort_stable

# A reproducible permutation of 0..n-1 (srand(0)-style seeding)
ds = gen_vector(16, seed=0)
print("input:", ds.values.tolist())

out, stats = rank_sort(ds)
print("rank   :", out.tolist(), stats)

#%%
# The three formulas side by side for a few sizes
print(f"{'n':>6} {'rank':>10} {'n*n':>10} {'bubble':>10} {'n(n-1)/2':>10} {'merge':>8} {'n*log2n':>8}")
for n in (4, 64, 512, 4096):
    ds = gen_vector(n, 0)
    r = rank_sort(ds)[1].comparisons
    b = bubble_sort(ds)[1].comparisons
    m = merge_sort(ds)[1].comparisons
    print(f"{n:>6} {r:>10} {n*n:>10} {b:>10} {n*(n-1)//2:>10} {m:>8} {n*math.ceil(math.log2(n)):>8}")

#%%
# Bubble sort swaps exactly once per inversion
ds = gen_vector(32, 5)
v = ds.values.tolist()
inversions = sum(v[i] > v[j] for i in range(32) for j in range(i + 1, 32))
print("swaps", bubble_sort(ds)[1].moves, "inversions", inversions)

#%%
# Plain rank sort refuses duplicate keys; the stable variant breaks ties by position
try:
    rank_sort([2, 1, 1, 0])
except ValueError as exc:
    print("rank_sort:", exc)
print("rank_sort_stable:", rank_sort_stable([2, 1, 1, 0])[0].tolist())
