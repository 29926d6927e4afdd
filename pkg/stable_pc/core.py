"""
Domain types shared by every stage of the skeleton search, and the
adjacency compaction that freezes the per-level snapshot G'.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .exceptions import DataError, PreconditionError

Edge = Tuple[int, int]


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class DataMatrix:
    """
    m x n observations, rows are samples and columns are variables.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2:
            raise DataError(f"data must be a 2-D matrix, got {values.ndim} dimension(s)")
        m, n = values.shape
        if m < 4:
            raise DataError(f"at least 4 samples are required, got {m}")
        if n < 2:
            raise DataError(f"at least 2 variables are required, got {n}")
        bad = np.argwhere(~np.isfinite(values))
        if bad.size:
            row, col = (int(x) for x in bad[0])
            raise DataError(f"missing or non-finite value at row {row}, column {col}", row=row, column=col)
        object.__setattr__(self, "values", _readonly(values))

    @property
    def m(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])


@dataclass(frozen=True)
class CorrelationMatrix:
    """
    n x n symmetric correlation matrix with unit diagonal.

    The stored array is made exactly symmetric so that C[i, j] and C[j, i]
    are the same float.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.values, dtype=np.float64, copy=True)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise PreconditionError(f"correlation matrix must be square, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise PreconditionError("correlation matrix contains non-finite entries")
        if not np.allclose(c, c.T, rtol=0.0, atol=1e-9):
            raise PreconditionError("correlation matrix must be symmetric")
        c = (c + c.T) / 2.0
        np.fill_diagonal(c, 1.0)
        if np.any(np.abs(c) > 1.0 + 1e-9):
            raise PreconditionError("correlation entries must lie in [-1, 1]")
        object.__setattr__(self, "values", _readonly(np.clip(c, -1.0, 1.0)))

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def __getitem__(self, key):
        return self.values[key]


class AdjacencyMatrix:
    """
    Symmetric boolean adjacency of the live skeleton G.

    Edge removal is an idempotent clear of both cells under a lock, so many
    workers may remove concurrently; readers take no lock and may observe a
    removal late.
    """

    def __init__(self, matrix: "np.ndarray | Sequence[Sequence[bool]]") -> None:
        a = np.array(matrix, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise PreconditionError(f"adjacency matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise PreconditionError("adjacency matrix must be symmetric")
        if a.diagonal().any():
            raise PreconditionError("adjacency matrix must have a zero diagonal")
        self._a = a
        self._lock = threading.Lock()

    @classmethod
    def complete(cls, n: int) -> "AdjacencyMatrix":
        a = np.ones((n, n), dtype=bool)
        np.fill_diagonal(a, False)
        return cls(a)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "AdjacencyMatrix":
        a = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise PreconditionError(f"invalid edge ({i}, {j}) for {n} variables")
            a[i, j] = a[j, i] = True
        return cls(a)

    @property
    def n(self) -> int:
        return int(self._a.shape[0])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self._a[i, j])

    def remove_edge(self, i: int, j: int) -> bool:
        """Clear (i, j); True only for the call that actually removed it."""
        with self._lock:
            if not self._a[i, j]:
                return False
            self._a[i, j] = False
            self._a[j, i] = False
            return True

    def edges(self) -> List[Edge]:
        ii, jj = np.nonzero(np.triu(self._a, k=1))
        return [(int(i), int(j)) for i, j in zip(ii, jj)]

    def edge_count(self) -> int:
        return int(np.count_nonzero(self._a)) // 2

    def degrees(self) -> np.ndarray:
        return self._a.sum(axis=1)

    def to_array(self) -> np.ndarray:
        return self._a.copy()

    def copy(self) -> "AdjacencyMatrix":
        return AdjacencyMatrix(self._a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __repr__(self) -> str:
        return f"AdjacencyMatrix(n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True)
class CompactedAdjacency:
    """
    Per-row ascending neighbor lists (A'_G) with their counts.
    """

    rows: Tuple[Tuple[int, ...], ...]
    counts: Tuple[int, ...] = field(init=False)
    max_width: int = field(init=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(j) for j in row) for row in self.rows)
        for i, row in enumerate(rows):
            if any(b <= a for a, b in zip(row, row[1:])):
                raise PreconditionError(f"row {i} must be strictly ascending")
        counts = tuple(len(row) for row in rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "max_width", max(counts, default=0))

    @property
    def n(self) -> int:
        return len(self.rows)


def compact(a: AdjacencyMatrix) -> CompactedAdjacency:
    """Freeze the current adjacency into ascending neighbor lists."""
    m = a.to_array()
    return CompactedAdjacency(tuple(tuple(np.flatnonzero(m[i]).tolist()) for i in range(m.shape[0])))


def decompress(compacted: CompactedAdjacency, n: int) -> AdjacencyMatrix:
    m = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(compacted.rows):
        if i >= n:
            raise PreconditionError(f"row {i} is out of range for {n} variables")
        for j in row:
            if not 0 <= j < n:
                raise PreconditionError(f"neighbor index {j} in row {i} is out of range for {n} variables")
            m[i, j] = True
    return AdjacencyMatrix(m)


@dataclass
class LevelCounters:
    """Per-worker tallies, merged at the level barrier."""

    ci_tests: int = 0
    pseudo_inverses: int = 0
    edges_removed: int = 0

    def merge(self, other: "LevelCounters") -> None:
        self.ci_tests += other.ci_tests
        self.pseudo_inverses += other.pseudo_inverses
        self.edges_removed += other.edges_removed


@dataclass(frozen=True)
class LevelStats:
    level: int
    ci_tests: int
    pseudo_inverses: int
    edges_removed: int
    elapsed: float
    tau: float = 0.0
    edges_at_start: int = 0
    units: int = 0

    @property
    def elapsed_ms(self) -> int:
        return int(self.elapsed * 1000)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "ci_tests": self.ci_tests,
            "pseudo_inverses": self.pseudo_inverses,
            "edges_removed": self.edges_removed,
            "edges_at_start": self.edges_at_start,
            "units": self.units,
            "tau": self.tau,
            "elapsed_ms": self.elapsed_ms,
        }
