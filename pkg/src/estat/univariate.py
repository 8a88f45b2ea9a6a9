"""
Sorting-based fast paths for univariate samples.

All sums here are full double sums over ordered pairs, the same
convention as :mod:`estat.kernels`.  The textbook sorted-sample identities
(``2 sum i x_(i) - (n + 1) sum x`` and friends) count each unordered pair
once, so they are doubled where used.  All distance (co)variances in this
module are on the squared scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .dataset import ArrayLike, as_univariate
from .estimators import dcov_from_sums


@dataclass(frozen=True)
class DeltaSums:
    """Cross (``delta1``) and within-sample (``delta2``, ``delta3``) distance sums."""

    delta1: float
    delta2: float
    delta3: float


def _rank_weights(n: int) -> np.ndarray:
    # 2i - n - 1 for i = 1..n; sum_i (2i - n - 1) x_(i) is half the full sum
    return 2.0 * np.arange(1, n + 1) - (n + 1.0)


def _half_sum_sorted(xs: np.ndarray) -> float:
    return float(np.dot(_rank_weights(xs.size), xs))


def sorted_row_sums(xs: ArrayLike) -> np.ndarray:
    """
    Row sums ``sum_j |x_(i) - x_j|`` of an ascending sample, in O(n).

    Raises
    ------
    ValueError
        If the input is not sorted ascending.
    """
    xs = as_univariate(xs)
    if xs.size > 1 and np.any(xs[1:] < xs[:-1]):
        raise ValueError("input must be sorted in ascending order")
    n = xs.size
    prefix = np.cumsum(xs)
    i = np.arange(1, n + 1)
    return (2.0 * i - n) * xs + prefix[-1] - 2.0 * prefix


def pairwise_abs_sum(x: ArrayLike) -> float:
    """``sum_i sum_j |x_i - x_j|`` in O(n log n)."""
    x = as_univariate(x)
    return 2.0 * _half_sum_sorted(np.sort(x))


def squared_pairwise_sum(x: ArrayLike) -> float:
    """``sum_{i != j} (x_i - x_j)^2 = 2 (n sum x^2 - (sum x)^2)``."""
    x = as_univariate(x)
    n = x.size
    total = x.sum()
    # centring keeps n sum x^2 - (sum x)^2 free of cancellation
    centred = x - total / n
    return 2.0 * n * float(np.dot(centred, centred))


def _gamma_sums_univariate(x: np.ndarray):
    xs = np.sort(x)
    rows = sorted_row_sums(xs)
    return squared_pairwise_sum(x), float(np.dot(rows, rows)), float(rows.sum())


def dvar_univariate(x: ArrayLike, bias_corrected: bool = False) -> float:
    """Squared distance variance of a univariate sample in O(n log n)."""
    x = as_univariate(x)
    g1, row_sq, total = _gamma_sums_univariate(x)
    return dcov_from_sums(g1, row_sq, total, total, x.size, bias_corrected)


def delta_sums(x: ArrayLike, y: ArrayLike) -> DeltaSums:
    """
    The three distance sums of the two-sample energy distance.

    The cross sum comes from the pooled sample: every ordered pair of the
    pooled data is either within ``x``, within ``y`` or across (twice).
    """
    x = as_univariate(x)
    y = as_univariate(y)
    shift = (x.sum() + y.sum()) / (x.size + y.size)
    x = x - shift
    y = y - shift
    d2 = pairwise_abs_sum(x)
    d3 = pairwise_abs_sum(y)
    pooled = pairwise_abs_sum(np.concatenate((x, y)))
    return DeltaSums(delta1=(pooled - d2 - d3) / 2.0, delta2=d2, delta3=d3)


def energy_distance_univariate(x: ArrayLike, y: ArrayLike) -> float:
    x = as_univariate(x)
    y = as_univariate(y)
    d = delta_sums(x, y)
    n, m = float(x.size), float(y.size)
    return 2.0 * d.delta1 / (n * m) - d.delta2 / n**2 - d.delta3 / m**2


@numba.njit(cache=True, nogil=True)
def _cross_abs_product_half(xs, ys, yrank, n_ranks):
    """
    ``sum_{i<j} |x_i - x_j| |y_i - y_j|`` for ``xs`` ascending.

    For ``i < j`` the x-gap is ``x_j - x_i >= 0`` and the y-gap is
    ``s_ij (y_j - y_i)`` with ``s_ij = sign(y_j - y_i)``; expanding the
    product leaves four signed dominance sums over earlier points, kept in
    Fenwick trees indexed by the rank of y.
    """
    n = xs.shape[0]
    tree = np.zeros((n_ranks + 1, 4))
    seen = np.zeros(4)
    below = np.empty(4)
    upto = np.empty(4)
    vals = np.empty(4)
    acc = 0.0
    for j in range(n):
        r = yrank[j]  # 1-based; equal y share a rank
        below[:] = 0.0
        upto[:] = 0.0
        k = r - 1
        while k > 0:
            for c in range(4):
                below[c] += tree[k, c]
            k -= k & (-k)
        k = r
        while k > 0:
            for c in range(4):
                upto[c] += tree[k, c]
            k -= k & (-k)
        # signed sums: (y_i < y_j) minus (y_i > y_j); ties contribute 0
        s0 = below[0] - (seen[0] - upto[0])
        s1 = below[1] - (seen[1] - upto[1])
        s2 = below[2] - (seen[2] - upto[2])
        s3 = below[3] - (seen[3] - upto[3])
        xj = xs[j]
        yj = ys[j]
        acc += xj * yj * s0 - xj * s2 - yj * s1 + s3
        vals[0] = 1.0
        vals[1] = xj
        vals[2] = yj
        vals[3] = xj * yj
        k = r
        while k <= n_ranks:
            for c in range(4):
                tree[k, c] += vals[c]
            k += k & (-k)
        for c in range(4):
            seen[c] += vals[c]
    return acc


def cross_abs_product_sum(x: np.ndarray, y: np.ndarray) -> float:
    """``sum_{i != j} |x_i - x_j| |y_i - y_j|`` in O(n log n)."""
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order]
    _, inv = np.unique(ys, return_inverse=True)
    yrank = inv.astype(np.int64) + 1
    return 2.0 * _cross_abs_product_half(xs, ys, yrank, int(yrank.max()))


def _row_sums_original_order(x: np.ndarray) -> np.ndarray:
    order = np.argsort(x)
    rows = np.empty_like(x)
    rows[order] = sorted_row_sums(x[order])
    return rows


def dcov_univariate_fast(
    x: ArrayLike, y: ArrayLike, bias_corrected: bool = False
) -> float:
    """
    Squared distance covariance of two univariate samples in O(n log n).

    Row sums come from the sorted-sample identity and the product sum from
    a Fenwick-tree sweep; no pair is visited explicitly.
    """
    x = as_univariate(x)
    y = as_univariate(y)
    if x.size != y.size:
        raise ValueError(f"unequal sample sizes: n={x.size} vs n={y.size}")
    n = x.size
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    # translation invariance; centring limits cancellation in the expansion
    x = x - x.mean()
    y = y - y.mean()
    prod = cross_abs_product_sum(x, y)
    ra = _row_sums_original_order(x)
    rb = _row_sums_original_order(y)
    return dcov_from_sums(
        prod, float(np.dot(ra, rb)), float(ra.sum()), float(rb.sum()), n, bias_corrected
    )
