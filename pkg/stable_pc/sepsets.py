from __future__ import annotations

import threading
from contextlib import contextmanager
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .exceptions import PreconditionError

Pair = Tuple[int, int]
SepSet = Tuple[int, ...]


def _pair(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


class SeparationSets:
    """
    Thread-safe store of separating sets keyed by unordered variable pair.

    Racing writes for the same pair are last-writer-wins.
    """

    def __init__(self, items: Optional[Iterable[Tuple[Pair, Iterable[int]]]] = None) -> None:
        self._data: Dict[Pair, SepSet] = {}
        self._lock = threading.RLock()
        for (i, j), sepset in items or ():
            self.store(i, j, sepset)

    @contextmanager
    def _locked(self):
        with self._lock:
            yield

    def store(self, i: int, j: int, sepset: Iterable[int]) -> None:
        """Record the set that separated i and j."""
        if i == j:
            raise PreconditionError(f"a separating set needs two distinct variables, got ({i}, {j})")
        value = tuple(sorted(int(k) for k in sepset))
        if i in value or j in value:
            raise PreconditionError(f"separating set {value} for ({i}, {j}) contains an endpoint")
        with self._locked():
            self._data[_pair(i, j)] = value

    def get(self, i: int, j: int) -> Tuple[bool, SepSet]:
        with self._locked():
            value = self._data.get(_pair(i, j))
        if value is None:
            return False, ()
        return True, value

    def pairs(self) -> List[Pair]:
        with self._locked():
            return sorted(self._data)

    def items(self) -> List[Tuple[Pair, SepSet]]:
        """Sorted snapshot of (pair, set) entries."""
        with self._locked():
            return sorted(self._data.items())

    def __contains__(self, pair: Pair) -> bool:
        with self._locked():
            return _pair(*pair) in self._data

    def __getitem__(self, pair: Pair) -> SepSet:
        hit, value = self.get(*pair)
        if not hit:
            raise KeyError(pair)
        return value

    def __len__(self) -> int:
        with self._locked():
            return len(self._data)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs())

    def stats(self) -> dict:
        """Number of entries per separating-set size."""
        with self._locked():
            sizes: Dict[int, int] = {}
            for value in self._data.values():
                sizes[len(value)] = sizes.get(len(value), 0) + 1
            return {"total_pairs": len(self._data), "by_size": dict(sorted(sizes.items()))}
