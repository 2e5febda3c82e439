import numpy as np
import pytest

from cbetrack.consensus import ConsensusConfig, consensus_matrix_oracle, consensus_round, run_consensus
from cbetrack.graph import Network
from conftest import random_connected
from oracles import laplacian_power_oracle

K2 = Network.from_edges(2, [(0, 1)])


def test_two_agents():
    a, b = consensus_round(K2, [(1, 0, 0, 0, 0, 0), (0,) * 6], 0.25)
    assert a == (0.75, 0, 0, 0, 0, 0)
    assert b == (0.25, 0, 0, 0, 0, 0)


def test_fixed_point(k6):
    same = [(1.5, -2, 3, 0.1, 0.2, 0.3)] * 6
    assert consensus_round(k6, same, 0.1) == same
    assert run_consensus(k6, same, ConsensusConfig(0.2, 50)) == same


def test_round_matches_laplacian(k6, rng):
    X = rng.normal(size=(6, 6))
    M = np.array(laplacian_power_oracle(k6.adjacency, 0.1, 1))
    np.testing.assert_allclose(consensus_round(k6, X.tolist(), 0.1), M @ X, rtol=0, atol=1e-12)


def test_synchronous_not_sequential():
    path = Network.from_edges(3, [(0, 1), (1, 2)])
    out = consensus_round(path, [(1.0,), (0.0,), (0.0,)], 0.5)
    # a sequential sweep would already have moved agent 0 before agent 1 reads it
    assert out == [(0.5,), (0.5,), (0.0,)]


def test_one_round_equals_run(k6, rng):
    X = rng.normal(size=(6, 6)).tolist()
    assert run_consensus(k6, X, ConsensusConfig(0.1, 1)) == consensus_round(k6, X, 0.1)


def test_ten_rounds_match_matrix_power(rng):
    for _ in range(20):
        net = random_connected(rng, int(rng.integers(2, 9)))
        eps = 0.9 / max(net.degrees)
        X = rng.normal(size=(net.n, 6))
        M = np.array(laplacian_power_oracle(net.adjacency, eps, 10))
        np.testing.assert_allclose(run_consensus(net, X.tolist(), ConsensusConfig(eps, 10)), M @ X, atol=1e-10)


def test_long_run_reaches_average(rng):
    net = random_connected(rng, 7, p=0.3)
    eps = 0.5 / max(net.degrees)
    X = rng.normal(size=(7, 6))
    out = np.array(run_consensus(net, X.tolist(), ConsensusConfig(eps, 3000)))
    np.testing.assert_allclose(out, np.broadcast_to(X.mean(axis=0), X.shape), atol=1e-6)


def test_sum_preserved_and_contracting(rng):
    net = random_connected(rng, 8, p=0.3)
    eps = 1.0 / max(net.degrees)
    X = rng.normal(size=(8, 6)).tolist()
    mean = np.mean(X, axis=0)
    start = disagreement = np.linalg.norm(np.subtract(X, mean), axis=1).max()
    for _ in range(10):
        nxt = consensus_round(net, X, eps)
        np.testing.assert_allclose(np.sum(nxt, axis=0), np.sum(X, axis=0), atol=1e-10)
        d = np.linalg.norm(np.subtract(nxt, mean), axis=1).max()
        assert d <= disagreement + 1e-12
        X, disagreement = nxt, d
    assert disagreement < start


def test_oracle_examples():
    assert consensus_matrix_oracle(K2, 0.5, 0) == ((1.0, 0.0), (0.0, 1.0))
    assert consensus_matrix_oracle(K2, 0.5, 1) == ((0.5, 0.5), (0.5, 0.5))
    assert consensus_matrix_oracle(K2, 0.5, 2) == ((0.5, 0.5), (0.5, 0.5))


def test_oracle_agrees_with_independent_power(rng):
    net = random_connected(rng, 6)
    eps = 1.0 / max(net.degrees)
    np.testing.assert_allclose(consensus_matrix_oracle(net, eps, 7),
                               laplacian_power_oracle(net.adjacency, eps, 7), atol=1e-14)


@pytest.mark.parametrize("eps", [0.0, -0.1, 0.21])
def test_epsilon_validation(k6, eps):
    with pytest.raises(ValueError, match="epsilon"):
        consensus_round(k6, [(0.0,) * 6] * 6, eps)


def test_config_validation(k6):
    with pytest.raises(ValueError):
        ConsensusConfig(0.1, 0)
    with pytest.raises(ValueError):
        ConsensusConfig(0.3, 10).validate(k6)
    with pytest.raises(ValueError):
        run_consensus(k6, [(0.0,) * 6] * 5, ConsensusConfig())
