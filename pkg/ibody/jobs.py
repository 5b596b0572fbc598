"""Ordered fan-out of independent work items over worker processes."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

from .conf import setting

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

# Below this many items a pool costs more than it saves.
MIN_PARALLEL_ITEMS = 16


def default_jobs() -> int:
    return max(1, int(setting('IBODY_JOBS')))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = None) -> list[R]:
    """``[fn(x) for x in items]``, optionally across ``jobs`` processes.

    Results always come back in input order, so output never depends on
    scheduling.
    """
    items = list(items)
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(items) < MIN_PARALLEL_ITEMS:
        return [fn(x) for x in items]
    chunksize = max(1, len(items) // (jobs * 4))
    logger.debug('mapping %s over %d items with %d workers', getattr(fn, '__name__', fn), len(items), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
