from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from .exceptions import ConfigError

WORKERS_ENV = "STABLEPC_WORKERS"

# Selected configurations for the edge-parallel and set-shared strategies.
DEFAULT_ALPHA = 0.05
DEFAULT_BETA = 2
DEFAULT_GAMMA = 32
DEFAULT_THETA = 64
DEFAULT_DELTA = 2


class Strategy(str, Enum):
    SERIAL = "serial"
    EDGE_PARALLEL = "edge"
    SET_SHARED = "set"
    ROW_PARALLEL = "row"

    @classmethod
    def parse(cls, value: "str | Strategy") -> "Strategy":
        if isinstance(value, Strategy):
            return value
        name = str(value).strip().lower()
        aliases = {
            "edge-parallel": cls.EDGE_PARALLEL,
            "set-shared": cls.SET_SHARED,
            "row-parallel": cls.ROW_PARALLEL,
        }
        if name in aliases:
            return aliases[name]
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ConfigError(f"unknown strategy {value!r} (choose from {choices})") from None


def default_worker_count() -> int:
    """
    Worker count from ``STABLEPC_WORKERS``, otherwise the CPU count capped at 8.
    """
    raw = os.getenv(WORKERS_ENV)
    if raw is not None and raw.strip():
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
        if value < 1:
            raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
        return value
    return max(1, min(8, os.cpu_count() or 1))


@dataclass(frozen=True)
class SkeletonConfig:
    """
    Parameters of one skeleton discovery run.

    beta/gamma shape the edge-parallel work units (edges per unit, rank
    lanes per edge), theta/delta the set-shared ones (rank lanes per unit,
    unit groups per row).
    """

    alpha: float = DEFAULT_ALPHA
    max_level: Optional[int] = None
    strategy: Strategy = Strategy.SET_SHARED
    beta: int = DEFAULT_BETA
    gamma: int = DEFAULT_GAMMA
    theta: int = DEFAULT_THETA
    delta: int = DEFAULT_DELTA
    workers: int = field(default_factory=default_worker_count)
    schedule_seed: Optional[int] = None
    early_termination: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "strategy", Strategy.parse(self.strategy))
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.max_level is not None and self.max_level < 0:
            raise ConfigError(f"max_level must be >= 0, got {self.max_level}")
        for name in ("beta", "gamma", "theta", "delta", "workers"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["strategy"] = self.strategy.value
        return data
