"""
Energy statistics computed from streaming distance sums.

Reporting convention
--------------------
The squared-scale statistics ``V^2`` and ``R^2`` are what the formulas
produce and what the ``*_sqr`` functions return.  The plain functions
(:func:`dvar`, :func:`dcov`, :func:`dcor`) follow the convention of the
published reference outputs: biased statistics are reported as square
roots (``V_n``, ``R_n``), bias-corrected ones on the squared scale, since
they can be negative.  A biased ``V^2`` that round-off pushes below zero
is reported as ``-sqrt(|V^2|)`` rather than clamped.

:func:`energy_distance` is the raw sample energy distance;
:func:`edist` multiplies it by ``n m / (n + m)``, the scaling under which
the two-sample statistic is usually reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import ArrayLike, as_dataset
from .kernels import (
    CrossSums,
    GammaSums,
    cross_pairwise_sum,
    dvar_sums,
    joint_sums,
    pairwise_sum,
)


class UndefinedCorrelationError(ValueError):
    """Distance correlation requested for a sample with zero distance variance."""


class CollinearityError(ValueError):
    """Partial distance correlation with a conditioning variable fully correlated."""


# 1 - R^2 below this is treated as an exact collinearity
_COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class DCorResult:
    dcov: float
    dvar_x: float
    dvar_y: float
    dcor: float

    def as_dict(self) -> dict[str, float]:
        return {
            "dcov": self.dcov,
            "dvarX": self.dvar_x,
            "dvarY": self.dvar_y,
            "dcor": self.dcor,
        }


@dataclass(frozen=True)
class EnergyMatrix:
    values: np.ndarray

    @property
    def k(self) -> int:
        return self.values.shape[0]


def _signed_sqrt(v: float) -> float:
    return math.copysign(math.sqrt(abs(v)), v)


def _min_n(n: int, bias_corrected: bool) -> None:
    need = 4 if bias_corrected else 2
    if n < need:
        kind = "bias-corrected" if bias_corrected else "biased"
        raise ValueError(f"{kind} statistic needs n >= {need}, got n={n}")


def dcov_from_sums(
    prod: float, row_prod: float, total_a: float, total_b: float, n: int,
    bias_corrected: bool = False,
) -> float:
    """Squared distance covariance from its three accumulated sums."""
    _min_n(n, bias_corrected)
    if bias_corrected:
        return (
            prod / (n * (n - 3.0))
            - 2.0 * row_prod / (n * (n - 2.0) * (n - 3.0))
            + total_a * total_b / (n * (n - 1.0) * (n - 2.0) * (n - 3.0))
        )
    n = float(n)
    return prod / n**2 - 2.0 * row_prod / n**3 + total_a * total_b / n**4


def _dvar_from_gamma(g: GammaSums, n: int, bias_corrected: bool) -> float:
    return dcov_from_sums(g.gamma1, g.row_sq, g.total, g.total, n, bias_corrected)


def _dcov_from_cross(c: CrossSums, n: int, bias_corrected: bool) -> float:
    return dcov_from_sums(c.prod, c.row_prod, c.total_a, c.total_b, n, bias_corrected)


def energy_distance(X: ArrayLike, Y: ArrayLike) -> float:
    """
    Sample energy distance between two samples of the same dimension.

    ``2/(nm) sum ||X_i - Y_j|| - 1/n^2 sum ||X_i - X_j|| - 1/m^2 sum ||Y_i - Y_j||``
    """
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.p != yd.p:
        raise ValueError(f"dimension mismatch: p={xd.p} vs p={yd.p}")
    n, m = float(xd.n), float(yd.n)
    if xd is yd or np.array_equal(xd.values, yd.values):
        return 0.0
    return (
        2.0 * cross_pairwise_sum(xd, yd) / (n * m)
        - pairwise_sum(xd) / n**2
        - pairwise_sum(yd) / m**2
    )


def edist(X, Y=None):
    """
    Scaled energy distance ``n m / (n + m) * energy_distance(X, Y)``.

    Called with a single sequence of three or more datasets, returns the
    :class:`EnergyMatrix` of all pairs instead.
    """
    if Y is None:
        return edist_matrix(X)
    xd, yd = as_dataset(X), as_dataset(Y)
    return xd.n * yd.n / (xd.n + yd.n) * energy_distance(xd, yd)


def edist_matrix(datasets: Sequence[ArrayLike]) -> EnergyMatrix:
    """Symmetric matrix of :func:`edist` between every pair of datasets."""
    ds = [as_dataset(d) for d in datasets]
    if len(ds) < 2:
        raise ValueError("need at least two datasets")
    dims = {d.p for d in ds}
    if len(dims) > 1:
        raise ValueError(f"datasets have mixed dimensions {sorted(dims)}")
    # within-sample sums are shared by every pair
    self_sums = [pairwise_sum(d) for d in ds]
    k = len(ds)
    out = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            n, m = float(ds[i].n), float(ds[j].n)
            if np.array_equal(ds[i].values, ds[j].values):
                continue
            e = (
                2.0 * cross_pairwise_sum(ds[i], ds[j]) / (n * m)
                - self_sums[i] / n**2
                - self_sums[j] / m**2
            )
            out[i, j] = out[j, i] = n * m / (n + m) * e
    return EnergyMatrix(out)


def dvar_sqr(X: ArrayLike, bias_corrected: bool = False) -> float:
    ds = as_dataset(X)
    _min_n(ds.n, bias_corrected)
    return _dvar_from_gamma(dvar_sums(ds), ds.n, bias_corrected)


def dcov_sqr(X: ArrayLike, Y: ArrayLike, bias_corrected: bool = False) -> float:
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.n != yd.n:
        raise ValueError(f"unequal sample sizes: n={xd.n} vs n={yd.n}")
    _min_n(xd.n, bias_corrected)
    if xd is yd:
        return dvar_sqr(xd, bias_corrected)
    cross, _, _ = joint_sums(xd, yd)
    return _dcov_from_cross(cross, xd.n, bias_corrected)


def _ratio(vxy: float, vx: float, vy: float) -> float:
    if not (vx > 0 and vy > 0):
        raise UndefinedCorrelationError(
            "distance correlation is undefined: a sample has zero distance variance"
        )
    return vxy / math.sqrt(vx * vy)


def dcor_sqr(X: ArrayLike, Y: ArrayLike, bias_corrected: bool = False) -> DCorResult:
    """All four statistics on the squared scale (``V^2``, ``R^2``)."""
    xd, yd = as_dataset(X), as_dataset(Y)
    if xd.n != yd.n:
        raise ValueError(f"unequal sample sizes: n={xd.n} vs n={yd.n}")
    n = xd.n
    _min_n(n, bias_corrected)
    cross, gx, gy = joint_sums(xd, yd)
    vxy = _dcov_from_cross(cross, n, bias_corrected)
    vx = _dvar_from_gamma(gx, n, bias_corrected)
    vy = _dvar_from_gamma(gy, n, bias_corrected)
    return DCorResult(vxy, vx, vy, _ratio(vxy, vx, vy))


def dvar(X: ArrayLike, bias_corrected: bool = False) -> float:
    """Distance variance: ``V_n(X)`` if biased, ``V*_n^2(X)`` if bias-corrected."""
    v = dvar_sqr(X, bias_corrected)
    return v if bias_corrected else _signed_sqrt(v)


def dcov(X: ArrayLike, Y: ArrayLike, bias_corrected: bool = False) -> float:
    """Distance covariance: ``V_n(X, Y)`` if biased, ``V*_n^2(X, Y)`` if bias-corrected."""
    v = dcov_sqr(X, Y, bias_corrected)
    return v if bias_corrected else _signed_sqrt(v)


def dcor(X: ArrayLike, Y: ArrayLike, bias_corrected: bool = False) -> DCorResult:
    """
    Distance covariance, both distance variances and distance correlation.

    Raises
    ------
    UndefinedCorrelationError
        If either sample has zero (or, bias-corrected, non-positive)
        distance variance.
    """
    res = dcor_sqr(X, Y, bias_corrected)
    if bias_corrected:
        return res
    return DCorResult(
        _signed_sqrt(res.dcov),
        _signed_sqrt(res.dvar_x),
        _signed_sqrt(res.dvar_y),
        _signed_sqrt(res.dcor),
    )


def partial_from_correlations(rxy: float, rxz: float, ryz: float) -> float:
    dx = 1.0 - rxz * rxz
    dy = 1.0 - ryz * ryz
    if dx <= _COLLINEAR_TOL or dy <= _COLLINEAR_TOL:
        raise CollinearityError("collinear conditioning variable")
    return (rxy - rxz * ryz) / (math.sqrt(dx) * math.sqrt(dy))


def pdcor(X: ArrayLike, Y: ArrayLike, Z: ArrayLike) -> float:
    """Bias-corrected partial distance correlation of ``X`` and ``Y`` given ``Z``."""
    xd, yd, zd = as_dataset(X), as_dataset(Y), as_dataset(Z)
    if not xd.n == yd.n == zd.n:
        raise ValueError(f"unequal sample sizes: {xd.n}, {yd.n}, {zd.n}")
    rxy = dcor_sqr(xd, yd, True).dcor
    rxz = dcor_sqr(xd, zd, True).dcor
    ryz = dcor_sqr(yd, zd, True).dcor
    return partial_from_correlations(rxy, rxz, ryz)
