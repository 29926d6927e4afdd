import numpy as np
import pytest

from stable_pc.datagen import (
    WeightedDag,
    analytic_covariance,
    random_dag,
    sample_linear_gaussian,
    truth_edges,
)
from stable_pc.exceptions import ConfigError
from stable_pc.stats import compute_correlation, partial_correlation


def test_weights_lower_triangular_in_range():
    dag = random_dag(30, 0.3, 4)
    w = dag.weights
    assert np.all(np.triu(w) == 0.0)
    nonzero = w[w != 0.0]
    assert nonzero.size == dag.edge_count()
    assert np.all((nonzero >= 0.1) & (nonzero <= 1.0))


def test_same_seed_same_dag_and_data():
    a, b = random_dag(20, 0.2, 9), random_dag(20, 0.2, 9)
    np.testing.assert_array_equal(a.weights, b.weights)
    np.testing.assert_array_equal(sample_linear_gaussian(a, 50, 10).values, sample_linear_gaussian(b, 50, 10).values)
    assert not np.array_equal(a.weights, random_dag(20, 0.2, 10).weights)


def test_edge_count_statistics():
    assert random_dag(50, 0.001, 0).edge_count() <= 8
    count = random_dag(1000, 0.1, 3).edge_count()
    assert abs(count - 49950) <= 4 * 212


def test_independent_columns():
    dag = WeightedDag(n=3, weights=np.zeros((3, 3)), density=0.0, seed=0)
    c = compute_correlation(sample_linear_gaussian(dag, 10000, 1))
    assert np.max(np.abs(c.values - np.eye(3))) < 0.05


def test_single_edge_correlation():
    w = np.zeros((2, 2))
    w[1, 0] = 1.0
    dag = WeightedDag(n=2, weights=w, density=1.0, seed=0)
    c = compute_correlation(sample_linear_gaussian(dag, 10000, 2))
    assert abs(c[0, 1] - 1 / np.sqrt(2)) < 0.02


def test_chain_partial_correlation(chain_dag):
    c = compute_correlation(sample_linear_gaussian(chain_dag, 10000, 5))
    assert abs(partial_correlation(c, 0, 2, [1])) < 0.05


def test_empirical_covariance_matches_analytic():
    dag = random_dag(6, 0.5, 12)
    data = sample_linear_gaussian(dag, 20000, 13)
    np.testing.assert_allclose(np.cov(data.values, rowvar=False), analytic_covariance(dag), rtol=0.05, atol=0.05)


def test_truth_edges():
    w = np.zeros((3, 3))
    w[2, 0] = 0.5
    w[1, 0] = 0.3
    assert truth_edges(WeightedDag(n=3, weights=w, density=0.5, seed=0)) == [(0, 1), (0, 2)]


def test_invalid_parameters():
    with pytest.raises(ConfigError):
        random_dag(1, 0.5, 0)
    with pytest.raises(ConfigError):
        random_dag(5, 1.0, 0)
    with pytest.raises(ConfigError):
        sample_linear_gaussian(random_dag(5, 0.5, 0), 3, 0)
    with pytest.raises(ConfigError):
        WeightedDag(n=2, weights=np.array([[0.0, 1.0], [0.0, 0.0]]), density=0.5, seed=0)
