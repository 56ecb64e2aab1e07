"""Batch runner for sweeps over many independent inputs.

Each job is a pure function of its input, so jobs may run on a thread pool;
results always come back in input order.
"""

import logging
from concurrent.futures import Future, ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .constants import DEFAULT_WORKERS

T = TypeVar("T")
R = TypeVar("R")


class SweepRunner:
    """Runs a function over a batch of inputs with an optional thread pool.

    ``workers=1`` runs everything inline on the calling thread.
    """

    def __init__(self, workers: int = DEFAULT_WORKERS):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.workers = workers
        self._executor: Optional[ThreadPoolExecutor] = None
        if workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sweep")

    def submit_all(self, fn: Callable[[T], R], items: Iterable[T]) -> List["Future[R]"]:
        """Submit one job per item; futures are returned in input order."""
        if self._executor is None:
            raise RuntimeError("submit_all needs a pool; use map() for inline runs")
        return [self._executor.submit(fn, item) for item in items]

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply ``fn`` to every item and return results in input order.

        The first exception raised by a job propagates to the caller.
        """
        items = list(items)
        logging.debug(f"Sweep of {len(items)} jobs on {self.workers} worker(s)")
        if self._executor is None:
            return [fn(item) for item in items]
        return [future.result() for future in self.submit_all(fn, items)]

    def shutdown(self, wait: bool = True) -> None:
        """Shutdown the thread pool executor."""
        if self._executor is not None:
            self._executor.shutdown(wait=wait)
            self._executor = None

    def __enter__(self) -> "SweepRunner":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.shutdown(wait=exc_type is None)
