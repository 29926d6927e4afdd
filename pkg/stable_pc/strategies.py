"""
Execution strategies for levels l >= 1.

Each strategy cuts a level into work units (row, chunk) and knows how to
process one unit. Conditioning sets are always drawn from the level-start
snapshot A'; removals go to the live adjacency, which every unit re-reads
before testing an edge.

Tests are evaluated in batches (a window of one edge's sets, a round of
lanes) but their outcomes are applied in the sequential order: an edge's
tests stop counting at the first one that removes it.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .comb import binomial, unrank_excluding, unrank_for_set_shared
from .config import SkeletonConfig, Strategy
from .core import AdjacencyMatrix, CompactedAdjacency, CorrelationMatrix, LevelCounters
from .sepsets import SeparationSets
from .stats import conditioning_blocks, fisher_z_values, partial_correlation_batch, pseudo_inverses

FIRST_WINDOW = 4
MAX_WINDOW = 256


@dataclass(frozen=True)
class WorkUnit:
    row: int
    chunk: int = 0


@dataclass(frozen=True)
class LevelContext:
    c: CorrelationMatrix
    tau: float
    adjacency: AdjacencyMatrix
    compacted: CompactedAdjacency
    ell: int
    config: SkeletonConfig
    sepsets: SeparationSets


def early_termination_guards(
    row_size: int,
    ell: int,
    chunk: int,
    config: SkeletonConfig,
    strategy: Strategy,
) -> bool:
    """True when the unit (row, chunk) has work to do."""
    if row_size < ell + 1:
        return False
    if strategy is Strategy.EDGE_PARALLEL and chunk * config.beta >= row_size:
        return False
    if strategy is Strategy.SET_SHARED and chunk * config.theta >= binomial(row_size, ell):
        return False
    return True


def windows(total: int) -> Iterator[Tuple[int, int]]:
    """[start, stop) ranks of growing windows covering range(total)."""
    start, size = 0, FIRST_WINDOW
    while start < total:
        stop = min(start + size, total)
        yield start, stop
        start, size = stop, min(size * 2, MAX_WINDOW)


def sweep(
    ctx: LevelContext,
    i: int,
    conds: np.ndarray,
    partners: np.ndarray,
    eligible: np.ndarray,
    counters: LevelCounters,
    *,
    shared: bool = False,
) -> None:
    """
    Test row i against ``partners`` under each conditioning set of ``conds``
    (S x l), in set order. ``eligible[s, p]`` marks the pairs to test.

    A partner counts the tests up to and including its first independent
    one, which removes the edge and records the set. With ``shared`` every
    set gets one pseudo-inverse reused by all its partners; otherwise each
    test inverts its own copy.
    """
    count = conds.shape[0]
    live = np.fromiter((ctx.adjacency.has_edge(i, int(j)) for j in partners), dtype=bool, count=partners.size)
    eligible = eligible & live[None, :]
    if shared:
        counters.pseudo_inverses += count
        inverses = pseudo_inverses(conditioning_blocks(ctx.c, conds))
    s_idx, p_idx = np.nonzero(eligible)
    if s_idx.size == 0:
        return
    tested = conds[s_idx]
    m2_inv = inverses[s_idx] if shared else pseudo_inverses(conditioning_blocks(ctx.c, tested))
    rho, degenerate = partial_correlation_batch(
        ctx.c, np.full(s_idx.size, i, dtype=np.intp), partners[p_idx], tested, m2_inv,
    )
    hit = np.zeros(eligible.shape, dtype=bool)
    hit[s_idx, p_idx] = ~degenerate & (fisher_z_values(rho) <= ctx.tau)

    first = np.where(hit.any(axis=0), hit.argmax(axis=0), count)
    performed = eligible & (np.arange(count)[:, None] <= first[None, :])
    counters.ci_tests += int(performed.sum())
    if not shared:
        counters.pseudo_inverses += int(performed.sum())
    for p in np.flatnonzero(first < count):
        j = int(partners[p])
        if ctx.adjacency.remove_edge(i, j):
            counters.edges_removed += 1
        ctx.sepsets.store(i, j, conds[first[p]].tolist())


def _edge_sweep(ctx: LevelContext, i: int, j: int, conds: List[Sequence[int]], counters: LevelCounters) -> None:
    block = np.asarray(conds, dtype=np.intp).reshape(len(conds), ctx.ell)
    sweep(ctx, i, block, np.array([j], dtype=np.intp), np.ones((len(conds), 1), dtype=bool), counters)


class LevelStrategy(ABC):
    """
    Base interface for level strategies.
    """

    kind: Strategy

    def __init__(self, config: SkeletonConfig) -> None:
        self.config = config

    @property
    def parallel(self) -> bool:
        return True

    @abstractmethod
    def units(self, compacted: CompactedAdjacency, ell: int) -> List[WorkUnit]: ...

    @abstractmethod
    def process(self, unit: WorkUnit, ctx: LevelContext, counters: LevelCounters) -> None: ...

    def _proceed(self, row_size: int, ctx: LevelContext, chunk: int) -> bool:
        if not self.config.early_termination and row_size >= ctx.ell:
            return True
        return early_termination_guards(row_size, ctx.ell, chunk, self.config, self.kind)


class SerialStrategy(LevelStrategy):
    """
    Reference order: every row, every neighbor j, every subset of the row
    without j in lexicographic order, one pseudo-inverse per test.
    """

    kind = Strategy.SERIAL

    @property
    def parallel(self) -> bool:
        return False

    def units(self, compacted: CompactedAdjacency, ell: int) -> List[WorkUnit]:
        return [WorkUnit(i) for i in range(compacted.n)]

    def process(self, unit: WorkUnit, ctx: LevelContext, counters: LevelCounters) -> None:
        i = unit.row
        row = ctx.compacted.rows[i]
        if not self._proceed(len(row), ctx, unit.chunk):
            return
        for j in row:
            sets = combinations([k for k in row if k != j], ctx.ell)
            for start, stop in windows(binomial(len(row) - 1, ctx.ell)):
                if not ctx.adjacency.has_edge(i, j):
                    break
                _edge_sweep(ctx, i, j, list(islice(sets, stop - start)), counters)


class RowParallelStrategy(LevelStrategy):
    """
    One unit per row; the edges of a row and their tests run sequentially
    inside the unit, with sets decoded from their rank.
    """

    kind = Strategy.ROW_PARALLEL

    def units(self, compacted: CompactedAdjacency, ell: int) -> List[WorkUnit]:
        return [WorkUnit(i) for i in range(compacted.n)]

    def process(self, unit: WorkUnit, ctx: LevelContext, counters: LevelCounters) -> None:
        i = unit.row
        row = ctx.compacted.rows[i]
        n_i = len(row)
        if not self._proceed(n_i, ctx, unit.chunk):
            return
        total = binomial(n_i - 1, ctx.ell)
        for p, j in enumerate(row):
            for start, stop in windows(total):
                if not ctx.adjacency.has_edge(i, j):
                    break
                conds = [[row[q] for q in unrank_excluding(n_i - 1, ctx.ell, t, p)] for t in range(start, stop)]
                _edge_sweep(ctx, i, j, conds, counters)


class EdgeParallelStrategy(LevelStrategy):
    """
    Units cover beta consecutive edges of a row. The rank space of each edge
    is swept by gamma lanes in lockstep: lane ty takes t = ty, ty + gamma, ...
    A round's outcomes apply in rank order, so no test after the one that
    removes the edge is counted or recorded.
    """

    kind = Strategy.EDGE_PARALLEL

    def units(self, compacted: CompactedAdjacency, ell: int) -> List[WorkUnit]:
        chunks = max(1, math.ceil(compacted.max_width / self.config.beta))
        return [WorkUnit(i, b) for i in range(compacted.n) for b in range(chunks)]

    def process(self, unit: WorkUnit, ctx: LevelContext, counters: LevelCounters) -> None:
        i = unit.row
        row = ctx.compacted.rows[i]
        n_i = len(row)
        if not self._proceed(n_i, ctx, unit.chunk):
            return
        staged = tuple(row)
        beta, gamma = self.config.beta, self.config.gamma
        total = binomial(n_i - 1, ctx.ell)
        for p in range(unit.chunk * beta, min((unit.chunk + 1) * beta, n_i)):
            j = staged[p]
            for start in range(0, total, gamma):
                if not ctx.adjacency.has_edge(i, j):
                    break
                conds = [
                    [staged[q] for q in unrank_excluding(n_i - 1, ctx.ell, t, p)]
                    for t in range(start, min(start + gamma, total))
                ]
                _edge_sweep(ctx, i, j, conds, counters)


class SetSharedStrategy(LevelStrategy):
    """
    Units are delta groups of a row's conditioning sets, swept by theta
    lanes. Each set's pseudo-inverse is computed once and reused for every
    neighbor of the row outside the set whose edge is still present.
    """

    kind = Strategy.SET_SHARED

    def units(self, compacted: CompactedAdjacency, ell: int) -> List[WorkUnit]:
        return [WorkUnit(i, b) for i in range(compacted.n) for b in range(self.config.delta)]

    def process(self, unit: WorkUnit, ctx: LevelContext, counters: LevelCounters) -> None:
        i = unit.row
        row = ctx.compacted.rows[i]
        n_i = len(row)
        if not self._proceed(n_i, ctx, unit.chunk):
            return
        staged = np.asarray(row, dtype=np.intp)
        theta, delta = self.config.theta, self.config.delta
        total = binomial(n_i, ctx.ell)
        for start in range(unit.chunk * theta, total, theta * delta):
            ranks = range(start, min(start + theta, total))
            positions = np.array([unrank_for_set_shared(n_i, ctx.ell, t) for t in ranks], dtype=np.intp)
            positions = positions.reshape(len(ranks), ctx.ell)
            eligible = np.ones((len(ranks), n_i), dtype=bool)
            eligible[np.arange(len(ranks))[:, None], positions] = False
            sweep(ctx, i, staged[positions], staged, eligible, counters, shared=True)


_STRATEGIES = {
    Strategy.SERIAL: SerialStrategy,
    Strategy.ROW_PARALLEL: RowParallelStrategy,
    Strategy.EDGE_PARALLEL: EdgeParallelStrategy,
    Strategy.SET_SHARED: SetSharedStrategy,
}


def strategy_for(config: SkeletonConfig) -> LevelStrategy:
    return _STRATEGIES[config.strategy](config)
