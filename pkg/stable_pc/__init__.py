from .config import SkeletonConfig, Strategy
from .core import AdjacencyMatrix, CompactedAdjacency, CorrelationMatrix, DataMatrix, LevelStats, compact, decompress
from .comb import binomial, rank, unrank, unrank_excluding, unrank_for_set_shared
from .exceptions import (
    ConfigError,
    DataError,
    DegenerateConditioningError,
    LevelUnreachableError,
    NumericalError,
    PreconditionError,
    StablePCError,
)
from .orient import MixedGraph, apply_meek_rules, find_v_structures, orient
from .sepsets import SeparationSets
from .skeleton import (
    SkeletonResult,
    audit_sepsets,
    level_n_edge_parallel,
    level_n_serial,
    level_n_set_shared,
    level_zero,
    run_pc_stable,
)
from .stats import (
    CiDecision,
    ci_test,
    compute_correlation,
    conditional_h,
    extract_conditioning,
    fisher_z,
    partial_correlation,
    pseudo_inverse,
    threshold_tau,
)

__version__ = "0.1.0"

__all__ = [
    "SkeletonConfig", "Strategy",
    "AdjacencyMatrix", "CompactedAdjacency", "CorrelationMatrix", "DataMatrix", "LevelStats", "compact", "decompress",
    "binomial", "rank", "unrank", "unrank_excluding", "unrank_for_set_shared",
    "StablePCError", "ConfigError", "DataError", "PreconditionError", "NumericalError",
    "DegenerateConditioningError", "LevelUnreachableError",
    "MixedGraph", "find_v_structures", "apply_meek_rules", "orient",
    "SeparationSets",
    "SkeletonResult", "run_pc_stable", "level_zero", "level_n_serial", "level_n_edge_parallel",
    "level_n_set_shared", "audit_sepsets",
    "CiDecision", "ci_test", "compute_correlation", "conditional_h", "extract_conditioning", "fisher_z",
    "partial_correlation", "pseudo_inverse", "threshold_tau",
]
