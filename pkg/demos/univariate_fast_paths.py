"""
Sorting instead of pairs in one dimension
=========================================

For scalar data, distance sums follow from the sorted sample, and the
distance covariance from a dominance count over ranks.  Both paths agree
with the pairwise kernels and scale to sizes those cannot reach.
"""

import time

import numpy as np

import estat
from estat.univariate import dcov_univariate_fast, pairwise_abs_sum, sorted_row_sums

x = np.sort(np.array([0.0, 1.0, 3.0]))
print("row sums of |x_i - x_j|:", sorted_row_sums(x), " total:", pairwise_abs_sum(x))

rng = np.random.default_rng(3)
x = rng.standard_normal(3_000)
y = np.sin(2 * x) + 0.3 * rng.standard_normal(x.size)
print("pairwise kernel:", estat.dcov_sqr(x, y))
print("O(n log n) path:", dcov_univariate_fast(x, y))

for n in (10**4, 10**5, 10**6):
    x = rng.standard_normal(n)
    y = x**2 + rng.standard_normal(n)
    t = time.perf_counter()
    v = dcov_univariate_fast(x, y)
    print(f"n={n:8d}  dcov^2={v:.5f}  {time.perf_counter() - t:.3f}s")
