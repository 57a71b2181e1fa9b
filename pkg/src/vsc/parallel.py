"""Order-preserving map with an optional process pool.

Residue chains are pure CPU work on picklable tuples, so processes are the
only parallelism that pays; with workers <= 1 everything stays in-process,
which is also the mode every test uses.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

A = TypeVar("A")
B = TypeVar("B")

__all__ = ["parallel_map"]


def parallel_map(fn: Callable[[A], B], items: Iterable[A], workers: int = 1) -> list[B]:
    seq: Sequence[A] = list(items)
    if workers <= 1 or len(seq) <= 1:
        return [fn(item) for item in seq]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
