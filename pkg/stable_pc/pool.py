from __future__ import annotations

import logging
import queue
import threading
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np

from .core import LevelCounters

logger = logging.getLogger(__name__)

U = TypeVar("U")

_STOP = object()


class WorkerPool:
    """
    Fixed-size pool of threads draining one shared queue of work units.

    Every worker owns a LevelCounters; the tallies are merged once all
    workers have stopped, which is the level barrier.
    """

    def __init__(self, workers: int, *, name: str = "stablepc") -> None:
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.workers = int(workers)
        self.name = name

    def run(self, units: Sequence[U], task: Callable[[U, LevelCounters], None]) -> LevelCounters:
        total = LevelCounters()
        if self.workers == 1 or len(units) <= 1:
            for unit in units:
                task(unit, total)
            return total

        q: "queue.Queue[object]" = queue.Queue()
        for unit in units:
            q.put(unit)
        size = min(self.workers, len(units))
        for _ in range(size):
            q.put(_STOP)

        failed = threading.Event()
        errors: List[BaseException] = []
        guard = threading.Lock()
        tallies = [LevelCounters() for _ in range(size)]

        def worker(counters: LevelCounters) -> None:
            while True:
                item = q.get()
                if item is _STOP:
                    return
                if failed.is_set():
                    continue
                try:
                    task(item, counters)  # type: ignore[arg-type]
                except BaseException as exc:
                    with guard:
                        errors.append(exc)
                    failed.set()

        threads = [
            threading.Thread(target=worker, args=(tallies[k],), name=f"{self.name}-{k}", daemon=True)
            for k in range(size)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        if errors:
            logger.error("worker failed, %d error(s) collected", len(errors))
            raise errors[0]
        for counters in tallies:
            total.merge(counters)
        return total


def shuffled(units: List[U], seed: Optional[int]) -> List[U]:
    """Units in a seeded random order; unchanged when seed is None."""
    if seed is None:
        return units
    order = np.random.default_rng(seed).permutation(len(units))
    return [units[k] for k in order]
