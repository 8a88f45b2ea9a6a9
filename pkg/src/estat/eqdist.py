"""
Permutation test for equality of two distributions.

The statistic is the sample energy distance; the usual ``n m / (n + m)``
factor is the same for every permutation and is left out.  The p-value is
``(exceed + 1) / (B + 1)`` where ``exceed`` counts permuted statistics at
least as large as the observed one.

A permutation is a uniformly random choice of which ``n`` of the ``N = n + m``
pooled observations form the first group.  Permutation ``b`` draws from
``SeedSequence(seed, spawn_key=(b,))``, which makes the stream independent
of evaluation order and lets the univariate and multivariate paths (and
the tests) share it.

Univariate data are pooled and sorted once.  A permutation then only needs
the (integer) sorted positions of its first group: one merge pass over the
sorted pool yields both within-group sums from the sorted-sample identity,
and the cross sum is the pooled sum, which never changes, minus the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numba
import numpy as np

from ._parallel import map_indexed
from .dataset import ArrayLike, as_dataset, as_univariate
from .kernels import cross_pairwise_sum, pairwise_sum, pooled_subset_pairwise_sum


@dataclass(frozen=True)
class EqDistResult:
    statistic: float
    permutations: int
    exceed_count: int
    p_value: float
    replicates: np.ndarray | None = None


def permutation_groups(n_pooled: int, n_first: int, b: int, seed: int) -> np.ndarray:
    """Ascending positions (in ``0..n_pooled-1``) of permutation ``b``'s first group."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(b,)))
    return np.sort(rng.permutation(n_pooled)[:n_first])


def iter_permutation_groups(
    n_pooled: int, n_first: int, permutations: int, seed: int
) -> Iterator[np.ndarray]:
    for b in range(permutations):
        yield permutation_groups(n_pooled, n_first, b, seed)


def _check(n: int, m: int, permutations: int) -> None:
    if n < 2 or m < 2:
        raise ValueError(f"each sample needs at least 2 observations, got {n} and {m}")
    if permutations < 1:
        raise ValueError(f"need at least one permutation, got {permutations}")


def _result(observed: float, reps: np.ndarray, keep: bool) -> EqDistResult:
    exceed = int(np.count_nonzero(reps >= observed))
    return EqDistResult(
        statistic=float(observed),
        permutations=reps.size,
        exceed_count=exceed,
        p_value=(exceed + 1) / (reps.size + 1),
        replicates=reps if keep else None,
    )


@numba.njit(cache=True, nogil=True)
def _split_abs_sums(z, first):
    """
    Full within-group sums of ``|z_i - z_j|`` for ``z`` ascending, split
    into the positions listed in ``first`` (ascending) and the rest.
    """
    N = z.shape[0]
    n = first.shape[0]
    m = N - n
    a = 0
    c = 0
    w1 = 0.0
    w2 = 0.0
    for k in range(N):
        if a < n and first[a] == k:
            a += 1
            w1 += (2.0 * a - n - 1.0) * z[k]
        else:
            c += 1
            w2 += (2.0 * c - m - 1.0) * z[k]
    return 2.0 * w1, 2.0 * w2


class _SortedPool:
    """Pooled univariate sample, sorted once, for permuted energy distances."""

    def __init__(self, x: np.ndarray, y: np.ndarray):
        self.n = x.size
        self.m = y.size
        z = np.concatenate((x, y))
        z -= z.mean()
        # the stable order fixes which tied values belong to x; sorting the
        # values themselves can then happen in place
        first = np.argsort(z, kind="stable") < x.size
        z.sort()
        self.z = z
        self.pooled = _split_abs_sums(z, np.empty(0, dtype=np.intp))[1]
        self.observed = self.statistic(np.flatnonzero(first))

    def statistic(self, first: np.ndarray) -> float:
        n, m = self.n, self.m
        d2, d3 = _split_abs_sums(self.z, first)
        d1 = (self.pooled - d2 - d3) / 2.0
        return float(2.0 * d1 / (n * m) - d2 / n**2 - d3 / m**2)


def eqdist_test_univariate(
    x: ArrayLike,
    y: ArrayLike,
    permutations: int = 999,
    seed: int = 0,
    keep_replicates: bool = False,
    workers: int | None = None,
) -> EqDistResult:
    """
    Energy test of equal univariate distributions, O(N log N) per permutation.

    The observed statistic goes through the same sorted-pool arithmetic as
    the permuted ones, so a permutation that reproduces the observed split
    (possible with tied values) reproduces its statistic bit for bit.
    """
    x = as_univariate(x)
    y = as_univariate(y)
    _check(x.size, y.size, permutations)
    pool = _SortedPool(x, y)
    observed = pool.observed
    N = x.size + y.size

    def stat_of(b: int) -> float:
        return pool.statistic(permutation_groups(N, x.size, b, seed))

    return _result(observed, map_indexed(stat_of, permutations, workers), keep_replicates)


def eqdist_test_multivariate(
    X: ArrayLike,
    Y: ArrayLike,
    permutations: int = 999,
    seed: int = 0,
    keep_replicates: bool = False,
    workers: int | None = None,
) -> EqDistResult:
    """
    Energy test of equal multivariate distributions in O(N) extra memory.

    Each permutation re-evaluates the two within-group distance sums on the
    fly over index lists into the pooled data; the pooled sum is computed once.
    """
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.p != yd.p:
        raise ValueError(f"dimension mismatch: p={xd.p} vs p={yd.p}")
    n, m = xd.n, yd.n
    _check(n, m, permutations)
    N = n + m
    total = pairwise_sum(xd) + pairwise_sum(yd) + 2.0 * cross_pairwise_sum(xd, yd)

    def energy(first: np.ndarray) -> float:
        mask = np.ones(N, dtype=bool)
        mask[first] = False
        second = np.flatnonzero(mask)
        d2 = pooled_subset_pairwise_sum(xd, yd, first)
        d3 = pooled_subset_pairwise_sum(xd, yd, second)
        d1 = (total - d2 - d3) / 2.0
        return float(2.0 * d1 / (n * m) - d2 / n**2 - d3 / m**2)

    observed = energy(np.arange(n))

    def stat_of(b: int) -> float:
        return energy(permutation_groups(N, n, b, seed))

    return _result(observed, map_indexed(stat_of, permutations, workers), keep_replicates)


def eqdist_test(
    X: ArrayLike, Y: ArrayLike, permutations: int = 999, seed: int = 0, **kwargs
) -> EqDistResult:
    """Dispatch to the univariate fast path when both samples have one column."""
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.p == 1 and yd.p == 1:
        return eqdist_test_univariate(xd, yd, permutations, seed, **kwargs)
    return eqdist_test_multivariate(xd, yd, permutations, seed, **kwargs)
