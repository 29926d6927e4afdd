"""
Command-line surface: ``stablepc gen | skeleton | orient | bench``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from .bench import parse_cases, run_bench, write_bench_csv
from .config import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_DELTA,
    DEFAULT_GAMMA,
    DEFAULT_THETA,
    WORKERS_ENV,
    SkeletonConfig,
    Strategy,
    default_worker_count,
)
from .core import AdjacencyMatrix
from .datagen import random_dag, sample_linear_gaussian, truth_edges
from .exceptions import ConfigError, DataError, NumericalError, StablePCError
from .fingerprint import Fingerprinter
from .io import (
    read_data_csv,
    read_edges,
    read_sepsets,
    write_cpdag,
    write_data_csv,
    write_edges,
    write_json,
    write_sepsets,
)
from .orient import orient
from .report import RunReport
from .skeleton import run_pc_stable
from .stats import compute_correlation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(value: str) -> List[int]:
    try:
        items = [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from None
    if not items:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return items


def _strategy_list(value: str) -> List[Strategy]:
    try:
        return [Strategy.parse(v) for v in value.split(",") if v.strip()]
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sibling(path: Path, suffix: str) -> Path:
    return path.with_name(path.name + suffix)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stablepc", description="PC-stable skeleton discovery on multi-core CPUs")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO logging (-vv for DEBUG)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a random linear-Gaussian dataset")
    gen.add_argument("--n", type=int, required=True, help="Number of variables")
    gen.add_argument("--d", type=float, required=True, help="Edge probability of the lower triangle")
    gen.add_argument("--m", type=int, required=True, help="Number of samples")
    gen.add_argument("--seed", type=int, default=0, help="Seed (DAG uses seed, samples use seed + 1)")
    gen.add_argument("--out", type=Path, required=True, help="Data CSV path; truth goes to <out>.truth")
    gen.set_defaults(handler=cmd_gen)

    sk = sub.add_parser("skeleton", help="Discover the skeleton of a dataset")
    sk.add_argument("--data", type=Path, required=True, help="Numeric CSV, rows are samples")
    sk.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help=f"Significance level (default {DEFAULT_ALPHA})")
    sk.add_argument("--strategy", type=Strategy.parse, default=Strategy.SET_SHARED,
                    help="serial, edge, set or row (default set)")
    sk.add_argument("--beta", type=int, default=DEFAULT_BETA, help=f"Edges per edge-parallel unit (default {DEFAULT_BETA})")
    sk.add_argument("--gamma", type=int, default=DEFAULT_GAMMA, help=f"Rank lanes per edge (default {DEFAULT_GAMMA})")
    sk.add_argument("--theta", type=int, default=DEFAULT_THETA, help=f"Rank lanes per set-shared unit (default {DEFAULT_THETA})")
    sk.add_argument("--delta", type=int, default=DEFAULT_DELTA, help=f"Set-shared units per row (default {DEFAULT_DELTA})")
    sk.add_argument("--workers", type=int, default=None, help=f"Worker threads (default ${WORKERS_ENV} or CPU count, max 8)")
    sk.add_argument("--max-level", type=int, default=None, help="Highest conditioning-set size to test")
    sk.add_argument("--schedule-seed", type=int, default=None, help="Shuffle work units with this seed")
    sk.add_argument("--out", type=Path, required=True, help="Output prefix: <out>.edges, <out>.sepsets, <out>.report.json")
    sk.set_defaults(handler=cmd_skeleton)

    ori = sub.add_parser("orient", help="Orient a skeleton into a CPDAG")
    ori.add_argument("--skeleton", type=Path, required=True, help="Edge list written by `skeleton`")
    ori.add_argument("--sepsets", type=Path, required=True, help="Separating sets written by `skeleton`")
    ori.add_argument("--out", type=Path, required=True, help="CPDAG edge list (`i > j` directed, `i j` undirected)")
    ori.set_defaults(handler=cmd_orient)

    bench = sub.add_parser("bench", help="Time strategies over generated datasets")
    bench.add_argument("--spec", required=True, help="Cases as n:d:m[,n:d:m...]")
    bench.add_argument("--strategies", type=_strategy_list, default=[Strategy.SERIAL, Strategy.EDGE_PARALLEL, Strategy.SET_SHARED],
                       help="Comma-separated strategies (default serial,edge,set)")
    bench.add_argument("--repeats", type=int, default=3, help="Runs per configuration (default 3)")
    bench.add_argument("--seed", type=int, default=0, help="Dataset seed")
    bench.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--max-level", type=int, default=None)
    bench.add_argument("--beta", type=_int_list, default=None, help="Comma-separated beta values to sweep")
    bench.add_argument("--gamma", type=_int_list, default=None, help="Comma-separated gamma values to sweep")
    bench.add_argument("--theta", type=_int_list, default=None, help="Comma-separated theta values to sweep")
    bench.add_argument("--delta", type=_int_list, default=None, help="Comma-separated delta values to sweep")
    bench.add_argument("--out", type=Path, required=True, help="Timings CSV")
    bench.set_defaults(handler=cmd_bench)
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    dag = random_dag(args.n, args.d, args.seed)
    data = sample_linear_gaussian(dag, args.m, args.seed + 1)
    write_data_csv(args.out, data)
    write_edges(_sibling(args.out, ".truth"), dag.n, truth_edges(dag))
    logger.info("wrote %dx%d data and %d truth edges to %s", data.m, data.n, dag.edge_count(), args.out)
    return EXIT_OK


def _skeleton_config(args: argparse.Namespace) -> SkeletonConfig:
    return SkeletonConfig(
        alpha=args.alpha,
        max_level=args.max_level,
        strategy=args.strategy,
        beta=args.beta,
        gamma=args.gamma,
        theta=args.theta,
        delta=args.delta,
        workers=args.workers if args.workers is not None else default_worker_count(),
        schedule_seed=args.schedule_seed,
    )


def cmd_skeleton(args: argparse.Namespace) -> int:
    config = _skeleton_config(args)
    started = time.perf_counter()
    data = read_data_csv(args.data)
    c = compute_correlation(data)
    result = run_pc_stable(c, data.m, config)
    wall = time.perf_counter() - started

    write_edges(_sibling(args.out, ".edges"), data.n, result.skeleton.edges())
    write_sepsets(_sibling(args.out, ".sepsets"), data.n, result.sepsets)
    report = RunReport.from_result(config, result, Fingerprinter().build(data), wall)
    write_json(_sibling(args.out, ".report.json"), report.to_dict())
    logger.info("skeleton: %d edges after %d level(s)", result.skeleton.edge_count(), result.levels_run)
    return EXIT_OK


def cmd_orient(args: argparse.Namespace) -> int:
    n, edges = read_edges(args.skeleton)
    sep_n, sepsets = read_sepsets(args.sepsets)
    if sep_n is not None and sep_n != n:
        raise DataError(f"skeleton has {n} variables but sepsets declare {sep_n}")
    skeleton = AdjacencyMatrix.from_edges(n, edges)
    for i, j in sepsets.pairs():
        if j >= n:
            raise DataError(f"sepset pair ({i}, {j}) is out of range for {n} variables")
        if skeleton.has_edge(i, j):
            raise DataError(f"pair ({i}, {j}) has a separating set but is still an edge of the skeleton")
    cpdag = orient(skeleton, sepsets)
    write_cpdag(args.out, cpdag)
    logger.info("cpdag: %d directed, %d undirected", len(cpdag.directed), len(cpdag.undirected))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    base = SkeletonConfig(
        alpha=args.alpha,
        max_level=args.max_level,
        workers=args.workers if args.workers is not None else default_worker_count(),
    )
    rows = run_bench(
        parse_cases(args.spec), args.strategies, args.repeats, args.seed, base,
        betas=args.beta, gammas=args.gamma, thetas=args.theta, deltas=args.delta,
    )
    write_bench_csv(args.out, rows)
    logger.info("bench: %d row(s) written to %s", len(rows), args.out)
    return EXIT_OK


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DataError, StablePCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
