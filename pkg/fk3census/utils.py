"""
Utility functions for the fk3census package.
"""
import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

IN = TypeVar("IN")
OUT = TypeVar("OUT")

logger = logging.getLogger(__name__)


def gcd_of(values: Iterable[int]) -> int:
    """
    The gcd of all the values (0 for no values at all).
    """
    return reduce(gcd, values, 0)


def subsets_by_size(n: int) -> Iterator[tuple[int, ...]]:
    """
    Yield every nonempty subset of {0..n-1} as a sorted index tuple, ordered by size and then lexicographically. The
    subsets are produced from bitmasks grouped by popcount.
    """
    masks = sorted(range(1, 1 << n), key=lambda mask: (bin(mask).count("1"), _mask_indices(mask)))
    for mask in masks:
        yield _mask_indices(mask)


def _mask_indices(mask: int) -> tuple[int, ...]:
    return tuple(idx for idx in range(mask.bit_length()) if mask >> idx & 1)


async def amap_jobs(func: Callable[[IN], OUT], batches: Sequence[IN], jobs: int = 1) -> list[OUT]:
    """
    Apply a pure, module level function to every batch and return the results in the order of the batches. With
    `jobs == 1` everything runs inline, otherwise the batches are spread over a pool of `jobs` worker processes. The
    ordering of the results never depends on scheduling.
    """
    if jobs < 1:
        raise ValueError(f"`jobs` must be at least 1, got {jobs}")
    if jobs == 1 or len(batches) < 2:
        return [func(batch) for batch in batches]

    logger.debug("spreading %s batches over %s worker processes", len(batches), jobs)
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(await asyncio.gather(*(loop.run_in_executor(executor, func, batch) for batch in batches)))
