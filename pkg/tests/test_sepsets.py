import threading

import pytest

from stable_pc.exceptions import PreconditionError
from stable_pc.sepsets import SeparationSets


def test_store_and_lookup_unordered():
    s = SeparationSets()
    s.store(3, 1, [5, 2])
    hit, value = s.get(1, 3)
    assert hit and value == (2, 5)
    assert (3, 1) in s
    assert s[(1, 3)] == (2, 5)
    assert len(s) == 1


def test_missing_pair():
    s = SeparationSets()
    hit, value = s.get(0, 1)
    assert not hit and value == ()
    try:
        _ = s[(0, 1)]
        raise AssertionError("expected KeyError")
    except KeyError:
        pass


def test_empty_set_is_a_hit():
    s = SeparationSets()
    s.store(0, 1, ())
    assert s.get(0, 1) == (True, ())


def test_rejects_endpoint_in_set():
    s = SeparationSets()
    with pytest.raises(PreconditionError):
        s.store(0, 1, [1])
    with pytest.raises(PreconditionError):
        s.store(2, 2, [])


def test_last_writer_wins_and_snapshots():
    s = SeparationSets([((0, 2), [1]), ((1, 3), [])])
    s.store(2, 0, [4])
    assert s[(0, 2)] == (4,)
    assert s.pairs() == [(0, 2), (1, 3)]
    assert list(s) == [(0, 2), (1, 3)]
    assert s.items() == [((0, 2), (4,)), ((1, 3), ())]
    assert s.stats() == {"total_pairs": 2, "by_size": {0: 1, 1: 1}}
    assert (0, 3) not in s
    assert len(s) == 2


def test_concurrent_writers():
    s = SeparationSets()

    def worker(k):
        for i in range(50):
            s.store(i, i + 100, [200 + k])

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(8)]
    for t in threads: t.start()
    for t in threads: t.join()

    assert len(s) == 50
    assert all(len(v) == 1 and 200 <= v[0] < 208 for _, v in s.items())
