"""
Data containers, CSV ingestion and seeded synthetic data.

Every estimator in the package accepts either a :class:`Dataset` or
anything :func:`numpy.asarray` understands; one-dimensional input is
treated as a single column.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from os import PathLike
from typing import Union

import numpy as np

ArrayLike = Union["Dataset", np.ndarray, list, tuple]


class CSVFormatError(ValueError):
    """Malformed CSV content, reported with its (1-based) row and column."""

    def __init__(self, message: str, row: int, column: int | None = None):
        self.row = row
        self.column = column
        where = f"row {row}" if column is None else f"row {row}, column {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    An ``n x p`` matrix of observations (rows are observations).

    The values are copied into a read-only, column-major float64 array so
    that ``columns`` (the transposed view used by the distance kernels) is
    contiguous without an extra copy.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64, order="F")
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1, order="F")
        if arr.ndim != 2:
            raise ValueError(f"expected a 1-D or 2-D array, got {arr.ndim}-D")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"empty dataset of shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("dataset contains NaN or infinite values")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    @property
    def columns(self) -> np.ndarray:
        """C-contiguous ``p x n`` view of the data."""
        return self.values.T

    def rows(self, index) -> Dataset:
        return Dataset(self.values[index])

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, p={self.p})"


def as_dataset(data: ArrayLike) -> Dataset:
    if isinstance(data, Dataset):
        return data
    return Dataset(data)


def as_univariate(x: ArrayLike) -> np.ndarray:
    """Coerce to a finite 1-D float64 vector (a ``p = 1`` Dataset is accepted)."""
    if isinstance(x, Dataset):
        if x.p != 1:
            raise ValueError(f"expected univariate data, got p={x.p}")
        return x.values[:, 0]
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a vector, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample contains NaN or infinite values")
    return arr


def load_csv(path: str | PathLike, has_header: bool = False) -> Dataset:
    """
    Read a comma separated numeric matrix.

    Parameters
    ----------
    path:
        File to read (UTF-8).
    has_header:
        Skip the first line.

    Raises
    ------
    OSError
        If the file cannot be opened.
    CSVFormatError
        On ragged rows or non-numeric fields.
    """
    rows: list[list[float]] = []
    width = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if has_header and lineno == 1:
                continue
            if not record or all(not field.strip() for field in record):
                continue
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise CSVFormatError(
                    f"expected {width} fields, found {len(record)}", lineno
                )
            parsed = []
            for col, field in enumerate(record, start=1):
                try:
                    value = float(field)
                except ValueError:
                    raise CSVFormatError(
                        f"non-numeric field {field!r}", lineno, col
                    ) from None
                if not math.isfinite(value):
                    raise CSVFormatError(f"non-finite value {field!r}", lineno, col)
                parsed.append(value)
            rows.append(parsed)
    if not rows:
        raise CSVFormatError("no data rows", 1)
    return Dataset(np.array(rows))


def write_csv(
    data: ArrayLike, path: str | PathLike, header: list[str] | None = None
) -> None:
    # repr() round-trips doubles exactly
    ds = as_dataset(data)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if header is not None:
            fh.write(",".join(header) + "\n")
        for row in ds.values:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def generate_gaussian(n: int, p: int, seed: int) -> Dataset:
    """``n x p`` i.i.d. standard normal draws, a pure function of its arguments."""
    if n < 1 or p < 1:
        raise ValueError(f"n and p must be positive, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    return Dataset(rng.standard_normal((n, p)))


def load_iris() -> Dataset:
    """The 150 x 4 numeric part of Fisher's iris data, in the usual order."""
    ref = resources.files("estat").joinpath("data/iris.csv")
    with resources.as_file(ref) as path:
        return load_csv(path, has_header=True)
