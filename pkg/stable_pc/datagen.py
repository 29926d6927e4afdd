"""
Synthetic linear-Gaussian DAGs and samples.

Random numbers come from numpy's PCG64 bit generator (seeded through
``numpy.random.Generator``), so a seed reproduces the same data on every
platform numpy supports.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .core import DataMatrix
from .exceptions import ConfigError

WEIGHT_LOW = 0.1
WEIGHT_HIGH = 1.0


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class WeightedDag:
    """Strictly lower-triangular weights; weights[i, j] != 0 means j -> i."""

    n: int
    weights: np.ndarray
    density: float
    seed: int

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if w.shape != (self.n, self.n):
            raise ConfigError(f"weights must be {self.n}x{self.n}, got {w.shape}")
        if np.any(np.triu(w) != 0.0):
            raise ConfigError("weights must be strictly lower triangular")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def edge_count(self) -> int:
        return int(np.count_nonzero(self.weights))


def random_dag(n: int, d: float, seed: int) -> WeightedDag:
    """Bernoulli(d) support in the lower triangle, weights uniform in [0.1, 1]."""
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}")
    if not 0.0 < d < 1.0:
        raise ConfigError(f"d must be in (0, 1), got {d}")
    rng = make_rng(seed)
    mask = np.tril(rng.random((n, n)) < d, k=-1)
    weights = np.where(mask, rng.uniform(WEIGHT_LOW, WEIGHT_HIGH, size=(n, n)), 0.0)
    return WeightedDag(n=n, weights=weights, density=d, seed=seed)


def sample_linear_gaussian(dag: WeightedDag, m: int, seed: int) -> DataMatrix:
    """V_i = N_i + sum_{j<i} W[i, j] V_j with independent standard normal N_i."""
    if m < 4:
        raise ConfigError(f"m must be >= 4, got {m}")
    rng = make_rng(seed)
    x = rng.standard_normal((m, dag.n))
    w = dag.weights
    for i in range(1, dag.n):
        parents = np.flatnonzero(w[i, :i])
        if parents.size:
            x[:, i] += x[:, parents] @ w[i, parents]
    return DataMatrix(x)


def analytic_covariance(dag: WeightedDag) -> np.ndarray:
    """(I - W)^-1 (I - W)^-T for unit noise variances."""
    inv = np.linalg.inv(np.eye(dag.n) - dag.weights)
    return inv @ inv.T


def truth_edges(dag: WeightedDag) -> List[Tuple[int, int]]:
    """Support of the weights as (min, max) pairs."""
    ii, jj = np.nonzero(dag.weights)
    return sorted((int(min(i, j)), int(max(i, j))) for i, j in zip(ii, jj))
