"""
Timing grid and log-log scaling fits.

Inputs for every ``(n, p)`` cell are seeded standard normal matrices.  Each
operation gets one discarded warm-up call per cell (this also absorbs JIT
compilation); calls faster than the timer floor are repeated in a loop and
averaged.  Cells run sequentially.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence, TextIO

import numpy as np
from scipy import stats

from .approx import adcov
from .dataset import Dataset, generate_gaussian
from .eqdist import eqdist_test_univariate
from .estimators import dcor, dcov, dvar, edist, pdcor

TIMER_FLOOR = 1e-3

OPS: dict[str, Callable[[Dataset, Dataset, Dataset], object]] = {
    "dcor": lambda X, Y, Z: dcor(X, Y),
    "edist": lambda X, Y, Z: edist(X, Y),
    "pdcor": lambda X, Y, Z: pdcor(X, Y, Z),
    "dcov": lambda X, Y, Z: dcov(X, Y),
    "dvar": lambda X, Y, Z: dvar(X),
    "adcov": lambda X, Y, Z: adcov(X, Y, seed=0),
    "eqdist": lambda X, Y, Z: eqdist_test_univariate(X.values[:, 0], Y.values[:, 0], 999),
}


@dataclass(frozen=True)
class BenchRecord:
    op_name: str
    n: int
    p: int
    replicate: int
    seconds: float


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    ci_low: float
    ci_high: float


def time_call(fn: Callable[[], object], floor: float = TIMER_FLOOR,
              clock: Callable[[], float] = time.perf_counter) -> float:
    """Wall-clock seconds of one call of ``fn``, looping when under ``floor``."""
    start = clock()
    fn()
    elapsed = clock() - start
    if elapsed >= floor:
        return elapsed
    reps = max(2, int(np.ceil(floor / max(elapsed, 1e-9))))
    start = clock()
    for _ in range(reps):
        fn()
    return (clock() - start) / reps


def _cell_seed(seed: int, n: int, p: int, which: int) -> int:
    return int(np.random.SeedSequence([seed, n, p, which]).generate_state(1)[0])


def run_bench(
    grid: Iterable[tuple[int, int]],
    ops: Sequence[str],
    replicates: int = 3,
    seed: int = 0,
) -> Iterator[BenchRecord]:
    unknown = [op for op in ops if op not in OPS]
    if unknown:
        raise ValueError(f"unknown operations: {unknown}")
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    for n, p in grid:
        X, Y, Z = (generate_gaussian(n, p, _cell_seed(seed, n, p, w)) for w in range(3))
        for op in ops:
            fn = OPS[op]
            call = lambda: fn(X, Y, Z)  # noqa: E731
            call()
            for r in range(replicates):
                yield BenchRecord(op, n, p, r, time_call(call))


def fit_slope(ns: Sequence[float], seconds: Sequence[float], level: float = 0.95) -> SlopeFit:
    """Least-squares slope of ``log(seconds)`` on ``log(n)`` with a t-interval."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(seconds, dtype=float))
    if x.size < 3:
        raise ValueError("need at least three timings to fit a slope")
    if np.ptp(x) == 0:
        raise ValueError("all timings share one sample size")
    fit = stats.linregress(x, y)
    half = stats.t.ppf(0.5 + level / 2, x.size - 2) * fit.stderr
    return SlopeFit(float(fit.slope), float(fit.slope - half), float(fit.slope + half))


def fit_slopes(records: Iterable[BenchRecord]) -> dict[tuple[str, int], SlopeFit]:
    groups: dict[tuple[str, int], list[BenchRecord]] = {}
    for rec in records:
        groups.setdefault((rec.op_name, rec.p), []).append(rec)
    return {
        key: fit_slope([r.n for r in recs], [r.seconds for r in recs])
        for key, recs in groups.items()
    }


def write_records(records: Iterable[BenchRecord], out: TextIO) -> None:
    out.write("op\tn\tp\treplicate\tseconds\n")
    for r in records:
        out.write(f"{r.op_name}\t{r.n}\t{r.p}\t{r.replicate}\t{r.seconds:.6g}\n")


def write_slopes(fits: dict[tuple[str, int], SlopeFit], out: TextIO) -> None:
    out.write("op\tp\tslope\tci_low\tci_high\n")
    for (op, p), f in fits.items():
        out.write(f"{op}\t{p}\t{f.slope:.4f}\t{f.ci_low:.4f}\t{f.ci_high:.4f}\n")
