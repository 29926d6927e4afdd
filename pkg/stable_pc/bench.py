"""
Benchmark harness: one row per (case, strategy, parameters, repeat) with
wall time, totals and per-level breakdown columns.
"""
from __future__ import annotations

import csv
import itertools
import logging
import time
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence

from .config import SkeletonConfig, Strategy
from .datagen import random_dag, sample_linear_gaussian
from .exceptions import ConfigError
from .io import PathLike
from .skeleton import run_pc_stable
from .stats import compute_correlation

logger = logging.getLogger(__name__)

BASE_COLUMNS = [
    "n", "d", "m", "strategy", "beta", "gamma", "theta", "delta", "workers", "repeat",
    "wall_ms", "levels_run", "stop_reason", "ci_tests", "pseudo_inverses", "edges_removed", "edges_final",
]
LEVEL_FIELDS = ["ms", "tests", "inverses", "removed"]


@dataclass(frozen=True)
class BenchCase:
    n: int
    d: float
    m: int


def parse_cases(spec: str) -> List[BenchCase]:
    """`n:d:m[,n:d:m...]`, e.g. ``100:0.1:1000,200:0.1:1000``."""
    cases = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 3:
            raise ConfigError(f"bench case {chunk!r} must look like n:d:m")
        try:
            cases.append(BenchCase(n=int(parts[0]), d=float(parts[1]), m=int(parts[2])))
        except ValueError:
            raise ConfigError(f"bench case {chunk!r} must look like n:d:m") from None
    if not cases:
        raise ConfigError("no bench cases given")
    return cases


def _parameter_grid(
    strategy: Strategy,
    base: SkeletonConfig,
    betas: Sequence[int],
    gammas: Sequence[int],
    thetas: Sequence[int],
    deltas: Sequence[int],
) -> Iterable[SkeletonConfig]:
    if strategy is Strategy.EDGE_PARALLEL:
        for beta, gamma in itertools.product(betas, gammas):
            yield replace(base, strategy=strategy, beta=beta, gamma=gamma)
    elif strategy is Strategy.SET_SHARED:
        for theta, delta in itertools.product(thetas, deltas):
            yield replace(base, strategy=strategy, theta=theta, delta=delta)
    else:
        yield replace(base, strategy=strategy)


def run_bench(
    cases: Sequence[BenchCase],
    strategies: Sequence[Strategy],
    repeats: int,
    seed: int,
    base: Optional[SkeletonConfig] = None,
    *,
    betas: Optional[Sequence[int]] = None,
    gammas: Optional[Sequence[int]] = None,
    thetas: Optional[Sequence[int]] = None,
    deltas: Optional[Sequence[int]] = None,
) -> List[Dict[str, object]]:
    """
    Data for a case comes from random_dag(n, d, seed) sampled with seed + 1,
    so every repeat and strategy sees the same correlation matrix.
    """
    if repeats < 1:
        raise ConfigError(f"repeats must be >= 1, got {repeats}")
    base = base or SkeletonConfig()
    rows: List[Dict[str, object]] = []
    for case in cases:
        dag = random_dag(case.n, case.d, seed)
        data = sample_linear_gaussian(dag, case.m, seed + 1)
        c = compute_correlation(data)
        for strategy in strategies:
            grid = _parameter_grid(
                strategy, base,
                betas or [base.beta], gammas or [base.gamma],
                thetas or [base.theta], deltas or [base.delta],
            )
            for config in grid:
                for repeat in range(repeats):
                    started = time.perf_counter()
                    result = run_pc_stable(c, case.m, config)
                    wall = time.perf_counter() - started
                    row: Dict[str, object] = {
                        "n": case.n, "d": case.d, "m": case.m,
                        "strategy": config.strategy.value,
                        "beta": config.beta, "gamma": config.gamma,
                        "theta": config.theta, "delta": config.delta,
                        "workers": config.workers, "repeat": repeat,
                        "wall_ms": int(wall * 1000),
                        "levels_run": result.levels_run,
                        "stop_reason": result.stop_reason,
                        "ci_tests": result.ci_tests,
                        "pseudo_inverses": result.pseudo_inverses,
                        "edges_removed": sum(s.edges_removed for s in result.stats),
                        "edges_final": result.skeleton.edge_count(),
                    }
                    for s in result.stats:
                        row[f"level_{s.level}_ms"] = s.elapsed_ms
                        row[f"level_{s.level}_tests"] = s.ci_tests
                        row[f"level_{s.level}_inverses"] = s.pseudo_inverses
                        row[f"level_{s.level}_removed"] = s.edges_removed
                    logger.info(
                        "bench n=%d d=%s m=%d %s repeat=%d: %dms, %d tests",
                        case.n, case.d, case.m, config.strategy.value, repeat, row["wall_ms"], row["ci_tests"],
                    )
                    rows.append(row)
    return rows


def bench_columns(rows: Sequence[Dict[str, object]]) -> List[str]:
    levels = max((int(r["levels_run"]) for r in rows), default=0)
    return BASE_COLUMNS + [f"level_{k}_{f}" for k in range(levels) for f in LEVEL_FIELDS]


def write_bench_csv(path: PathLike, rows: Sequence[Dict[str, object]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=bench_columns(rows), restval="", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
