"""
PC-stable level loop: level zero fast path, then one strategy-driven pass
per level until the snapshot's maximum degree, the configured level cap or
the sample size ends the search.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from .config import SkeletonConfig, Strategy
from .core import (
    AdjacencyMatrix,
    CompactedAdjacency,
    CorrelationMatrix,
    LevelCounters,
    LevelStats,
    compact,
)
from .exceptions import LevelUnreachableError
from .pool import WorkerPool, shuffled
from .sepsets import SeparationSets
from .stats import ci_test, fisher_z_values, threshold_tau
from .strategies import LevelContext, WorkUnit, strategy_for

logger = logging.getLogger(__name__)

STOP_MAX_DEGREE = "max-degree"
STOP_MAX_LEVEL = "max-level"
STOP_UNREACHABLE = "level-unreachable"


@dataclass
class SkeletonResult:
    skeleton: AdjacencyMatrix
    sepsets: SeparationSets
    stats: List[LevelStats] = field(default_factory=list)
    levels_run: int = 0
    stop_reason: str = STOP_MAX_DEGREE

    @property
    def ci_tests(self) -> int:
        return sum(s.ci_tests for s in self.stats)

    @property
    def pseudo_inverses(self) -> int:
        return sum(s.pseudo_inverses for s in self.stats)


def level_zero(
    c: CorrelationMatrix,
    tau0: float,
    adjacency: AdjacencyMatrix,
    sepsets: SeparationSets,
    pool: Optional[WorkerPool] = None,
) -> LevelCounters:
    """
    Marginal test of every pair of the complete graph; ``edges_removed`` of
    the returned counters is the removal count.
    """
    n = c.n
    values = c.values

    def run_row(i: int, counters: LevelCounters) -> None:
        counters.ci_tests += n - i - 1
        weak = np.flatnonzero(fisher_z_values(values[i, i + 1:]) <= tau0) + i + 1
        for j in weak.tolist():
            if adjacency.remove_edge(i, j):
                counters.edges_removed += 1
            sepsets.store(i, j, ())

    return (pool or WorkerPool(1)).run(list(range(n)), run_row)


def _run_level(
    c: CorrelationMatrix,
    tau: float,
    adjacency: AdjacencyMatrix,
    compacted: CompactedAdjacency,
    ell: int,
    config: SkeletonConfig,
    sepsets: SeparationSets,
) -> LevelStats:
    started = time.perf_counter()
    strategy = strategy_for(config)
    ctx = LevelContext(c, tau, adjacency, compacted, ell, config, sepsets)
    units = strategy.units(compacted, ell)
    units = shuffled(units, None if config.schedule_seed is None else config.schedule_seed + ell)
    pool = WorkerPool(config.workers if strategy.parallel else 1)
    edges_at_start = adjacency.edge_count()

    def task(unit: WorkUnit, counters: LevelCounters) -> None:
        strategy.process(unit, ctx, counters)

    counters = pool.run(units, task)
    return LevelStats(
        level=ell,
        ci_tests=counters.ci_tests,
        pseudo_inverses=counters.pseudo_inverses,
        edges_removed=counters.edges_removed,
        elapsed=time.perf_counter() - started,
        tau=tau,
        edges_at_start=edges_at_start,
        units=len(units),
    )


def level_n_serial(
    c: CorrelationMatrix,
    tau: float,
    adjacency: AdjacencyMatrix,
    compacted: CompactedAdjacency,
    ell: int,
    config: SkeletonConfig,
    sepsets: SeparationSets,
) -> LevelStats:
    return _run_level(c, tau, adjacency, compacted, ell, _with(config, Strategy.SERIAL), sepsets)


def level_n_edge_parallel(
    c: CorrelationMatrix,
    tau: float,
    adjacency: AdjacencyMatrix,
    compacted: CompactedAdjacency,
    ell: int,
    config: SkeletonConfig,
    sepsets: SeparationSets,
) -> LevelStats:
    """One level with beta-edge units and gamma rank lanes per edge."""
    return _run_level(c, tau, adjacency, compacted, ell, _with(config, Strategy.EDGE_PARALLEL), sepsets)


def level_n_set_shared(
    c: CorrelationMatrix,
    tau: float,
    adjacency: AdjacencyMatrix,
    compacted: CompactedAdjacency,
    ell: int,
    config: SkeletonConfig,
    sepsets: SeparationSets,
) -> LevelStats:
    """One level with per-row conditioning sets whose pseudo-inverse is shared."""
    return _run_level(c, tau, adjacency, compacted, ell, _with(config, Strategy.SET_SHARED), sepsets)


def _with(config: SkeletonConfig, strategy: Strategy) -> SkeletonConfig:
    return config if config.strategy is strategy else replace(config, strategy=strategy)


def run_pc_stable(c: CorrelationMatrix, m: int, config: Optional[SkeletonConfig] = None) -> SkeletonResult:
    """
    Skeleton of the complete graph over C's variables. The edge set does not
    depend on the strategy, the worker count or the unit order.
    """
    config = config or SkeletonConfig()
    n = c.n
    adjacency = AdjacencyMatrix.complete(n)
    sepsets = SeparationSets()
    result = SkeletonResult(adjacency, sepsets)
    pool = WorkerPool(config.workers if config.strategy is not Strategy.SERIAL else 1)

    logger.info(
        "pc-stable start: n=%d m=%d alpha=%s strategy=%s workers=%d",
        n, m, config.alpha, config.strategy.value, pool.workers,
    )
    ell = 0
    while True:
        compacted = compact(adjacency) if ell > 0 else None
        if compacted is not None and compacted.max_width - 1 < ell:
            result.stop_reason = STOP_MAX_DEGREE
            break
        if config.max_level is not None and ell > config.max_level:
            result.stop_reason = STOP_MAX_LEVEL
            break
        try:
            tau = threshold_tau(config.alpha, m, ell)
        except LevelUnreachableError as exc:
            logger.warning("%s", exc)
            result.stop_reason = STOP_UNREACHABLE
            break

        if compacted is None:
            started = time.perf_counter()
            edges_at_start = adjacency.edge_count()
            counters = level_zero(c, tau, adjacency, sepsets, pool)
            stats = LevelStats(
                level=0,
                ci_tests=counters.ci_tests,
                pseudo_inverses=0,
                edges_removed=counters.edges_removed,
                elapsed=time.perf_counter() - started,
                tau=tau,
                edges_at_start=edges_at_start,
                units=n,
            )
        else:
            stats = _run_level(c, tau, adjacency, compacted, ell, config, sepsets)

        result.stats.append(stats)
        logger.info(
            "level %d: edges=%d tests=%d inverses=%d removed=%d elapsed=%dms",
            ell, stats.edges_at_start, stats.ci_tests, stats.pseudo_inverses,
            stats.edges_removed, stats.elapsed_ms,
        )
        ell += 1

    result.levels_run = len(result.stats)
    logger.info(
        "pc-stable done: levels=%d edges=%d stop=%s",
        result.levels_run, adjacency.edge_count(), result.stop_reason,
    )
    return result


def audit_sepsets(c: CorrelationMatrix, m: int, alpha: float, result: SkeletonResult) -> List[Tuple[int, int]]:
    """Removed pairs whose stored set no longer tests independent."""
    violations = []
    for (i, j), cond in result.sepsets.items():
        tau = threshold_tau(alpha, m, len(cond))
        if not ci_test(c, i, j, cond, tau).independent:
            violations.append((i, j))
    return violations
