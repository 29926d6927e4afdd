from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

from .config import SkeletonConfig
from .core import LevelStats
from .fingerprint import Fingerprint
from .skeleton import SkeletonResult


@dataclass(frozen=True)
class RunReport:
    """
    JSON run report of one skeleton discovery. Field names are listed in
    docs/FORMATS.md.
    """

    config: Dict[str, Any]
    levels: List[LevelStats]
    total_ms: int
    input: Fingerprint
    levels_run: int
    stop_reason: str
    edges_initial: int
    edges_final: int
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_result(
        cls,
        config: SkeletonConfig,
        result: SkeletonResult,
        fingerprint: Fingerprint,
        wall_seconds: float,
    ) -> "RunReport":
        n = result.skeleton.n
        return cls(
            config=config.to_dict(),
            levels=list(result.stats),
            total_ms=int(wall_seconds * 1000),
            input=fingerprint,
            levels_run=result.levels_run,
            stop_reason=result.stop_reason,
            edges_initial=n * (n - 1) // 2,
            edges_final=result.skeleton.edge_count(),
        )

    def to_dict(self) -> Dict[str, Any]:
        levels = [s.to_dict() for s in sorted(self.levels, key=lambda s: s.level)]
        return {
            "config": self.config,
            "input": self.input.to_dict(),
            "levels_run": self.levels_run,
            "stop_reason": self.stop_reason,
            "edges_initial": self.edges_initial,
            "edges_final": self.edges_final,
            "total_ms": self.total_ms,
            "totals": {
                "ci_tests": sum(s["ci_tests"] for s in levels),
                "pseudo_inverses": sum(s["pseudo_inverses"] for s in levels),
                "edges_removed": sum(s["edges_removed"] for s in levels),
                "levels_ms": sum(s["elapsed_ms"] for s in levels),
            },
            "levels": levels,
            **self.extra,
        }
