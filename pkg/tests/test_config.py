import pytest

from stable_pc.config import WORKERS_ENV, SkeletonConfig, Strategy, default_worker_count
from stable_pc.exceptions import ConfigError


def test_defaults(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    cfg = SkeletonConfig()
    assert cfg.alpha == 0.05
    assert (cfg.beta, cfg.gamma, cfg.theta, cfg.delta) == (2, 32, 64, 2)
    assert cfg.strategy is Strategy.SET_SHARED
    assert cfg.max_level is None
    assert 1 <= cfg.workers <= 8
    assert cfg.early_termination


def test_workers_from_env(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert default_worker_count() == 3
    assert SkeletonConfig().workers == 3
    monkeypatch.setenv(WORKERS_ENV, "zero")
    with pytest.raises(ConfigError):
        default_worker_count()
    monkeypatch.setenv(WORKERS_ENV, "0")
    with pytest.raises(ConfigError):
        default_worker_count()


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha": 0.0},
        {"alpha": 1.0},
        {"max_level": -1},
        {"beta": 0},
        {"gamma": -2},
        {"theta": 1.5},
        {"delta": True},
        {"workers": 0},
        {"strategy": "gpu"},
    ],
)
def test_invalid_values(kwargs):
    with pytest.raises(ConfigError):
        SkeletonConfig(**{"workers": 1, **kwargs})


def test_strategy_parse_aliases():
    assert Strategy.parse("EDGE") is Strategy.EDGE_PARALLEL
    assert Strategy.parse("set-shared") is Strategy.SET_SHARED
    assert Strategy.parse("row-parallel") is Strategy.ROW_PARALLEL
    assert Strategy.parse(Strategy.SERIAL) is Strategy.SERIAL
    assert SkeletonConfig(strategy="edge", workers=1).strategy is Strategy.EDGE_PARALLEL


def test_to_dict_echo():
    data = SkeletonConfig(alpha=0.01, strategy="serial", workers=2, max_level=3).to_dict()
    assert data["strategy"] == "serial"
    assert data["alpha"] == 0.01
    assert data["max_level"] == 3
    assert data["workers"] == 2
