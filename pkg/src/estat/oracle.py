"""
Reference implementations built from explicit distance matrices.

These are the textbook double-centering definitions, deliberately naive
and O(n^2) in memory.  They exist to check the streaming code and share
no code path with it.  All values are on the squared scale (V^2, R^2).
"""
from __future__ import annotations

import numpy as np

from .dataset import ArrayLike, as_dataset

ORACLE_CAP = 500


def _checked(X: ArrayLike, cap: int | None) -> np.ndarray:
    values = as_dataset(X).values
    limit = ORACLE_CAP if cap is None else cap
    if values.shape[0] > limit:
        raise ValueError(f"oracle limited to n <= {limit}, got n={values.shape[0]}")
    return values


def distance_matrix(X: ArrayLike, cap: int | None = None) -> np.ndarray:
    values = _checked(X, cap)
    n = values.shape[0]
    D = np.zeros((n, n))
    for i in range(n):
        diff = values - values[i]
        D[i] = np.sqrt(np.sum(diff * diff, axis=1))
    return D


def double_center(D: np.ndarray) -> np.ndarray:
    """``D_ij - mean_i. - mean_.j + mean_..`` for a symmetric distance matrix."""
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(D, D.T):
        raise ValueError("distance matrix is not symmetric")
    row_means = D.mean(axis=1, keepdims=True)
    col_means = D.mean(axis=0, keepdims=True)
    return D - row_means - col_means + D.mean()


def _bias_corrected(A: np.ndarray, B: np.ndarray) -> float:
    n = A.shape[0]
    if n < 4:
        raise ValueError(f"bias-corrected statistics need n >= 4, got n={n}")
    off = ~np.eye(n, dtype=bool)
    cross = np.sum(A[off] * B[off])
    a_rows = A.sum(axis=1)
    b_rows = B.sum(axis=1)
    rows = np.sum(a_rows * b_rows)
    totals = A.sum() * B.sum()
    return (
        cross / (n * (n - 3))
        - 2.0 * rows / (n * (n - 2) * (n - 3))
        + totals / (n * (n - 1) * (n - 2) * (n - 3))
    )


def naive_dcov(
    X: ArrayLike, Y: ArrayLike, bias_corrected: bool = False, cap: int | None = None
) -> float:
    A = distance_matrix(X, cap)
    B = distance_matrix(Y, cap)
    if A.shape != B.shape:
        raise ValueError("unequal sample sizes")
    n = A.shape[0]
    if bias_corrected:
        return float(_bias_corrected(A, B))
    if n < 2:
        raise ValueError("need n >= 2")
    At = double_center(A)
    Bt = double_center(B)
    return float(np.sum(At * Bt) / n**2)


def naive_dvar(X: ArrayLike, bias_corrected: bool = False, cap: int | None = None) -> float:
    return naive_dcov(X, X, bias_corrected, cap)


def naive_dcor(
    X: ArrayLike, Y: ArrayLike, bias_corrected: bool = False, cap: int | None = None
) -> float:
    vxy = naive_dcov(X, Y, bias_corrected, cap)
    vx = naive_dvar(X, bias_corrected, cap)
    vy = naive_dvar(Y, bias_corrected, cap)
    if vx <= 0 or vy <= 0:
        raise ValueError("distance correlation undefined for a degenerate sample")
    return vxy / np.sqrt(vx * vy)


def naive_pdcor(X: ArrayLike, Y: ArrayLike, Z: ArrayLike, cap: int | None = None) -> float:
    rxy = naive_dcor(X, Y, True, cap)
    rxz = naive_dcor(X, Z, True, cap)
    ryz = naive_dcor(Y, Z, True, cap)
    return (rxy - rxz * ryz) / (np.sqrt(1 - rxz**2) * np.sqrt(1 - ryz**2))


def naive_energy(X: ArrayLike, Y: ArrayLike, cap: int | None = None) -> float:
    """Sample energy distance (unscaled), from three explicit matrices."""
    xv = _checked(X, cap)
    yv = _checked(Y, cap)
    if xv.shape[1] != yv.shape[1]:
        raise ValueError("dimension mismatch")
    cross = np.sqrt(((xv[:, None, :] - yv[None, :, :]) ** 2).sum(axis=2))
    return float(
        2.0 * cross.mean()
        - distance_matrix(xv, cap).mean()
        - distance_matrix(yv, cap).mean()
    )
