"""
Single-pass accumulation of pairwise-distance sums.

Every Euclidean distance is evaluated on the fly and folded into a handful
of scalar accumulators; no distance matrix is ever formed.  The kernels
walk the upper triangle once and keep the row sums in an ``n``-length
buffer, so the auxiliary memory of :func:`dvar_sums` is two ``n``-vectors
and that of :func:`dcov_sums` four.

The compiled kernels never allocate: all scratch space is created by the
Python wrappers, which keeps the memory footprint visible to ``tracemalloc``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .dataset import ArrayLike, as_dataset

# Reassociation lets LLVM vectorize the inner loops.  It changes rounding
# at the last-bit level but is fixed at compile time, so results stay
# reproducible.
_FASTMATH = {"reassoc", "contract", "nsz"}

_jit = numba.njit(cache=True, nogil=True, fastmath=_FASTMATH)


@dataclass(frozen=True)
class GammaSums:
    """
    Accumulators of the distance variance.

    ``gamma1`` is the sum of squared distances over ``i != j``, ``row_sq``
    the sum of squared row sums and ``total`` the sum of all distances.
    """

    gamma1: float
    row_sq: float
    total: float


@dataclass(frozen=True)
class CrossSums:
    """Joint accumulators of two paired samples' distances."""

    prod: float
    row_prod: float
    total_a: float
    total_b: float


@_jit
def _sq_dists_after(cols, i, buf):
    # buf[:m] <- squared distances from observation i to observations i+1..n-1
    p, n = cols.shape
    m = n - i - 1
    b = buf[:m]
    src = cols[0, i + 1 :]
    xi = cols[0, i]
    for j in range(m):
        d = src[j] - xi
        b[j] = d * d
    for k in range(1, p):
        src = cols[k, i + 1 :]
        xi = cols[k, i]
        for j in range(m):
            d = src[j] - xi
            b[j] += d * d
    return b


@_jit
def _sq_dists_to(cols, xrow, buf):
    # buf[:m] <- squared distances from the point xrow to every column of cols
    p, m = cols.shape
    b = buf[:m]
    src = cols[0]
    xi = xrow[0]
    for j in range(m):
        d = src[j] - xi
        b[j] = d * d
    for k in range(1, p):
        src = cols[k]
        xi = xrow[k]
        for j in range(m):
            d = src[j] - xi
            b[j] += d * d
    return b


@_jit
def _pairwise_sum_kernel(cols, buf):
    n = cols.shape[1]
    total = 0.0
    for i in range(n - 1):
        b = _sq_dists_after(cols, i, buf)
        s = 0.0
        for j in range(b.shape[0]):
            s += math.sqrt(b[j])
        total += s
    return 2.0 * total


@_jit
def _cross_sum_kernel(xcols, ycols, xrow, buf):
    p, n = xcols.shape
    total = 0.0
    for i in range(n):
        for k in range(p):
            xrow[k] = xcols[k, i]
        b = _sq_dists_to(ycols, xrow, buf)
        s = 0.0
        for j in range(b.shape[0]):
            s += math.sqrt(b[j])
        total += s
    return total


@_jit
def _subset_sum_kernel(cols, index, buf):
    # Full double sum of distances among the observations listed in `index`.
    p = cols.shape[0]
    m = index.shape[0]
    total = 0.0
    for a in range(m - 1):
        i = index[a]
        rest = index[a + 1 :]
        b = buf[: rest.shape[0]]
        for j in range(rest.shape[0]):
            b[j] = 0.0
        for k in range(p):
            xi = cols[k, i]
            for j in range(rest.shape[0]):
                d = cols[k, rest[j]] - xi
                b[j] += d * d
        s = 0.0
        for j in range(b.shape[0]):
            s += math.sqrt(b[j])
        total += s
    return 2.0 * total


@_jit
def _pooled_subset_sum_kernel(xcols, ycols, index, split, buf):
    # As _subset_sum_kernel, over the rows of X stacked on Y (never built).
    # index[:split] addresses X and index[split:] addresses Y (offset by n);
    # keeping the two runs apart avoids a data-dependent branch per pair.
    p = xcols.shape[0]
    n = xcols.shape[1]
    m = index.shape[0]
    total = 0.0
    for a in range(m - 1):
        i = index[a]
        b = buf[: m - a - 1]
        for j in range(b.shape[0]):
            b[j] = 0.0
        lo = max(split, a + 1)
        for k in range(p):
            xi = xcols[k, i] if a < split else ycols[k, i - n]
            for j in range(a + 1, split):
                d = xcols[k, index[j]] - xi
                b[j - a - 1] += d * d
            for j in range(lo, m):
                d = ycols[k, index[j] - n] - xi
                b[j - a - 1] += d * d
        s = 0.0
        for j in range(b.shape[0]):
            s += math.sqrt(b[j])
        total += s
    return 2.0 * total


@_jit
def _dvar_kernel(cols, buf, row):
    n = cols.shape[1]
    for i in range(n):
        row[i] = 0.0
    gamma1 = 0.0
    for i in range(n - 1):
        b = _sq_dists_after(cols, i, buf)
        m = b.shape[0]
        s2 = 0.0
        for j in range(m):
            s2 += b[j]
        gamma1 += s2
        r = 0.0
        tail = row[i + 1 :]
        for j in range(m):
            a = math.sqrt(b[j])
            r += a
            tail[j] += a
        row[i] += r
    row_sq = 0.0
    total = 0.0
    for i in range(n):
        row_sq += row[i] * row[i]
        total += row[i]
    return 2.0 * gamma1, row_sq, total


@_jit
def _joint_kernel(xcols, ycols, abuf, bbuf, arow, brow):
    n = xcols.shape[1]
    for i in range(n):
        arow[i] = 0.0
        brow[i] = 0.0
    prod = 0.0
    ga = 0.0
    gb = 0.0
    for i in range(n - 1):
        a2 = _sq_dists_after(xcols, i, abuf)
        b2 = _sq_dists_after(ycols, i, bbuf)
        m = a2.shape[0]
        sa2 = 0.0
        sb2 = 0.0
        for j in range(m):
            sa2 += a2[j]
            sb2 += b2[j]
        ga += sa2
        gb += sb2
        ra = 0.0
        rb = 0.0
        pr = 0.0
        atail = arow[i + 1 :]
        btail = brow[i + 1 :]
        for j in range(m):
            a = math.sqrt(a2[j])
            b = math.sqrt(b2[j])
            pr += a * b
            ra += a
            rb += b
            atail[j] += a
            btail[j] += b
        prod += pr
        arow[i] += ra
        brow[i] += rb
    row_prod = 0.0
    asq = 0.0
    bsq = 0.0
    ta = 0.0
    tb = 0.0
    for i in range(n):
        row_prod += arow[i] * brow[i]
        asq += arow[i] * arow[i]
        bsq += brow[i] * brow[i]
        ta += arow[i]
        tb += brow[i]
    return 2.0 * prod, row_prod, ta, tb, 2.0 * ga, asq, 2.0 * gb, bsq


def pairwise_sum(X: ArrayLike) -> float:
    """Sum of ``||X_i - X_j||`` over all ordered pairs ``(i, j)``."""
    ds = as_dataset(X)
    return float(_pairwise_sum_kernel(ds.columns, np.empty(ds.n)))


def cross_pairwise_sum(X: ArrayLike, Y: ArrayLike) -> float:
    """Sum of ``||X_i - Y_j||`` over ``i = 1..n``, ``j = 1..m``."""
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.p != yd.p:
        raise ValueError(f"dimension mismatch: p={xd.p} vs p={yd.p}")
    # the longer sample goes in the vectorised inner loop
    if xd.n > yd.n:
        xd, yd = yd, xd
    return float(
        _cross_sum_kernel(xd.columns, yd.columns, np.empty(xd.p), np.empty(yd.n))
    )


def subset_pairwise_sum(X: ArrayLike, index: np.ndarray) -> float:
    """:func:`pairwise_sum` of the rows ``X[index]`` without copying them."""
    ds = as_dataset(X)
    index = np.ascontiguousarray(index, dtype=np.intp)
    if index.size and (index.min() < 0 or index.max() >= ds.n):
        raise IndexError("row index out of range")
    return float(_subset_sum_kernel(ds.columns, index, np.empty(index.size)))


def pooled_subset_pairwise_sum(X: ArrayLike, Y: ArrayLike, index: np.ndarray) -> float:
    """
    :func:`pairwise_sum` over a subset of the rows of ``X`` stacked on ``Y``.

    Indices ``0..n-1`` address ``X`` and ``n..n+m-1`` address ``Y``; the
    stacked matrix is never formed.  The sum does not depend on the order
    of ``index``; it is sorted internally if needed.
    """
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.p != yd.p:
        raise ValueError(f"dimension mismatch: p={xd.p} vs p={yd.p}")
    index = np.ascontiguousarray(index, dtype=np.intp)
    if index.size and (index.min() < 0 or index.max() >= xd.n + yd.n):
        raise IndexError("row index out of range")
    if index.size > 1 and np.any(index[1:] < index[:-1]):
        index = np.sort(index)
    split = int(np.searchsorted(index, xd.n))
    return float(
        _pooled_subset_sum_kernel(xd.columns, yd.columns, index, split, np.empty(index.size))
    )


def dvar_sums(X: ArrayLike) -> GammaSums:
    ds = as_dataset(X)
    g1, rsq, tot = _dvar_kernel(ds.columns, np.empty(ds.n), np.empty(ds.n))
    return GammaSums(gamma1=g1, row_sq=rsq, total=tot)


def row_sums(X: ArrayLike) -> np.ndarray:
    """Per-observation distance sums ``sum_j ||X_i - X_j||``, in input order."""
    ds = as_dataset(X)
    row = np.empty(ds.n)
    _dvar_kernel(ds.columns, np.empty(ds.n), row)
    return row


def joint_sums(X: ArrayLike, Y: ArrayLike) -> tuple[CrossSums, GammaSums, GammaSums]:
    """
    Cross sums of ``(X, Y)`` and the variance sums of each, from one pass.

    This is what distance correlation needs; :func:`dcov_sums` is the same
    pass with the variance terms dropped.
    """
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.n != yd.n:
        raise ValueError(f"unequal sample sizes: n={xd.n} vs n={yd.n}")
    n = xd.n
    prod, rprod, ta, tb, ga, asq, gb, bsq = _joint_kernel(
        xd.columns, yd.columns, np.empty(n), np.empty(n), np.empty(n), np.empty(n)
    )
    return (
        CrossSums(prod=prod, row_prod=rprod, total_a=ta, total_b=tb),
        GammaSums(gamma1=ga, row_sq=asq, total=ta),
        GammaSums(gamma1=gb, row_sq=bsq, total=tb),
    )


def dcov_sums(X: ArrayLike, Y: ArrayLike) -> CrossSums:
    return joint_sums(X, Y)[0]
