import csv

import pytest

from stable_pc import SkeletonConfig, Strategy
from stable_pc.bench import BASE_COLUMNS, parse_cases, run_bench, write_bench_csv
from stable_pc.exceptions import ConfigError


def test_parse_cases():
    cases = parse_cases("100:0.1:1000, 200:0.2:500")
    assert [(c.n, c.d, c.m) for c in cases] == [(100, 0.1, 1000), (200, 0.2, 500)]
    with pytest.raises(ConfigError):
        parse_cases("100:0.1")
    with pytest.raises(ConfigError):
        parse_cases("a:b:c")
    with pytest.raises(ConfigError):
        parse_cases("")


def test_rows_per_case_strategy_repeat():
    strategies = [Strategy.SERIAL, Strategy.EDGE_PARALLEL, Strategy.SET_SHARED]
    rows = run_bench(parse_cases("10:0.2:200"), strategies, 3, 4, SkeletonConfig(workers=1))
    assert len(rows) == 9
    assert [r["repeat"] for r in rows] == [0, 1, 2] * 3
    assert len({r["edges_final"] for r in rows}) == 1
    for strategy in ("serial", "edge", "set"):
        assert len({r["ci_tests"] for r in rows if r["strategy"] == strategy}) == 1


def test_level_columns_sum_to_totals():
    rows = run_bench(parse_cases("14:0.3:300"), [Strategy.SET_SHARED], 1, 1, SkeletonConfig(workers=2))
    row = rows[0]
    levels = range(row["levels_run"])
    assert sum(row[f"level_{k}_tests"] for k in levels) == row["ci_tests"]
    assert sum(row[f"level_{k}_inverses"] for k in levels) == row["pseudo_inverses"]
    assert sum(row[f"level_{k}_removed"] for k in levels) == row["edges_removed"]
    assert row["edges_removed"] == 14 * 13 // 2 - row["edges_final"]


def test_parameter_sweep():
    rows = run_bench(
        parse_cases("10:0.2:200"), [Strategy.EDGE_PARALLEL, Strategy.SET_SHARED], 1, 0, SkeletonConfig(workers=1),
        betas=[1, 2], gammas=[4], thetas=[2, 8], deltas=[1, 3],
    )
    assert len(rows) == 2 + 4
    assert {(r["beta"], r["gamma"]) for r in rows if r["strategy"] == "edge"} == {(1, 4), (2, 4)}
    assert len({r["edges_final"] for r in rows}) == 1


def test_csv_output(tmp_path):
    rows = run_bench(parse_cases("10:0.2:200,12:0.2:200"), [Strategy.SERIAL], 1, 0, SkeletonConfig(workers=1))
    path = tmp_path / "bench.csv"
    write_bench_csv(path, rows)
    with open(path, newline="") as fh:
        read = list(csv.DictReader(fh))
    assert len(read) == 2
    assert list(read[0])[: len(BASE_COLUMNS)] == BASE_COLUMNS
    assert "level_0_ms" in read[0]


def test_increasing_n_does_not_reduce_tests():
    rows = run_bench(parse_cases("10:0.1:500,20:0.1:500,40:0.1:500"), [Strategy.SERIAL], 1, 3, SkeletonConfig(workers=1, max_level=0))
    tests = [r["ci_tests"] for r in rows]
    assert tests == sorted(tests)


def test_invalid_repeats():
    with pytest.raises(ConfigError):
        run_bench(parse_cases("10:0.2:200"), [Strategy.SERIAL], 0, 0)
