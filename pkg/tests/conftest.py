import numpy as np
import pytest

from stable_pc import CorrelationMatrix
from stable_pc.datagen import WeightedDag


def _to_correlation(cov: np.ndarray) -> CorrelationMatrix:
    d = np.sqrt(np.diag(cov))
    return CorrelationMatrix(cov / np.outer(d, d))


@pytest.fixture
def equicorrelated():
    """Factory: n x n correlation matrix with every off-diagonal entry equal to rho."""

    def make(n: int, rho: float) -> CorrelationMatrix:
        c = np.full((n, n), rho)
        np.fill_diagonal(c, 1.0)
        return CorrelationMatrix(c)

    return make


@pytest.fixture
def population_correlation():
    """Factory: exact correlation of V = B V + N for unit-variance noise."""

    def make(b: np.ndarray) -> CorrelationMatrix:
        inv = np.linalg.inv(np.eye(b.shape[0]) - b)
        return _to_correlation(inv @ inv.T)

    return make


@pytest.fixture
def four_node_correlation(population_correlation):
    # V1 and V2 independent roots, V0 = V1 + V2 + N0, V3 = V0 + N3
    b = np.zeros((4, 4))
    b[0, 1] = b[0, 2] = 1.0
    b[3, 0] = 1.0
    return population_correlation(b)


@pytest.fixture
def chain_dag():
    w = np.zeros((3, 3))
    w[1, 0] = w[2, 1] = 1.0
    return WeightedDag(n=3, weights=w, density=1.0, seed=0)

