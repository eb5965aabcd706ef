"""
Replicate execution.

A replicate is a top-level function of its index; the runner maps it over
0..n-1 inline or on a process pool and returns results in index order, so
every reduction is an ordered fold independent of scheduling.
"""

from concurrent.futures import ProcessPoolExecutor
from types import TracebackType
from typing import Callable, List, Optional, Type, TypeVar

import structlog

from seglat.core.config import get_config
from seglat.core.exceptions import ParameterError

logger = structlog.get_logger(__name__)

T = TypeVar("T")


class ReplicateRunner:
    """Ordered map of replicate functions over a process pool."""

    def __init__(self, threads: Optional[int] = None, chunk_size: Optional[int] = None) -> None:
        settings = get_config().simulation
        self.threads = threads if threads is not None else settings.threads
        self.chunk_size = chunk_size if chunk_size is not None else settings.chunk_size
        if self.threads < 1:
            raise ParameterError("threads must be >= 1", field="threads", value=self.threads)
        self._pool: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> "ReplicateRunner":
        if self.threads > 1:
            self._pool = ProcessPoolExecutor(max_workers=self.threads)
            logger.debug("Process pool started", workers=self.threads)
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        exc: Optional[BaseException],
        tb: Optional[TracebackType],
    ) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def map(self, fn: Callable[[int], T], n: int) -> List[T]:
        """[fn(0), ..., fn(n-1)]."""
        if self.threads == 1 or n < 2:
            return [fn(i) for i in range(n)]
        if self._pool is not None:
            return list(self._pool.map(fn, range(n), chunksize=self.chunk_size))
        with ProcessPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(fn, range(n), chunksize=self.chunk_size))


def default_runner(runner: Optional[ReplicateRunner]) -> ReplicateRunner:
    return runner if runner is not None else ReplicateRunner()
