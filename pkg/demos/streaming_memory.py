"""
Distance statistics without a distance matrix
=============================================

The estimators never hold the n x n distance matrix.  Here tracemalloc
confirms that the scratch memory of distance covariance grows like n
while the matrix it replaces grows like n^2.
"""

import tracemalloc

import estat

estat.dcor(estat.generate_gaussian(10, 3, 0), estat.generate_gaussian(10, 3, 1))  # compile

for n in (2_000, 4_000, 8_000):
    X = estat.generate_gaussian(n, 3, 0)
    Y = estat.generate_gaussian(n, 3, 1)
    tracemalloc.start()
    r = estat.dcor(X, Y).dcor
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    matrix = 8 * n * n
    print(f"n={n:5d}  dcor={r:.4f}  scratch={peak / 1024:7.1f} KiB"
          f"  one distance matrix={matrix / 2**20:7.1f} MiB  ({100 * peak / matrix:.3f}%)")
