import threading

import pytest

from stable_pc.pool import WorkerPool, shuffled


def test_runs_every_unit_and_merges_counters():
    seen = []
    guard = threading.Lock()

    def task(unit, counters):
        counters.ci_tests += unit
        counters.pseudo_inverses += 1
        with guard:
            seen.append(unit)

    total = WorkerPool(4).run(list(range(100)), task)
    assert sorted(seen) == list(range(100))
    assert total.ci_tests == sum(range(100))
    assert total.pseudo_inverses == 100


def test_single_worker_runs_inline():
    names = set()

    def task(unit, counters):
        names.add(threading.current_thread().name)

    WorkerPool(1).run([1, 2, 3], task)
    assert names == {threading.current_thread().name}


def test_worker_error_is_reraised():
    def task(unit, counters):
        if unit == 7:
            raise ArithmeticError("boom")

    with pytest.raises(ArithmeticError, match="boom"):
        WorkerPool(3).run(list(range(20)), task)


def test_invalid_size():
    with pytest.raises(ValueError):
        WorkerPool(0)


def test_shuffled_is_seeded_permutation():
    units = list(range(30))
    assert shuffled(units, None) is units
    a = shuffled(units, 4)
    assert sorted(a) == units
    assert a == shuffled(units, 4)
    assert a != units
