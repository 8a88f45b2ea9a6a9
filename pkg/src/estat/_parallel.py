"""Order-preserving thread map shared by the permutation and projection loops."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np


def default_workers(workers: int | None = None) -> int:
    """Explicit ``workers`` if given, else ``$ESTAT_THREADS``, else 1."""
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get("ESTAT_THREADS", "1")))


def map_indexed(fn: Callable[[int], float], count: int, workers: int | None) -> np.ndarray:
    w = default_workers(workers)
    if w == 1:
        return np.array([fn(i) for i in range(count)], dtype=np.float64)
    with ThreadPoolExecutor(max_workers=w) as pool:
        return np.array(list(pool.map(fn, range(count))), dtype=np.float64)
