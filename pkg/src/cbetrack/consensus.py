"""Synchronous Laplacian consensus on agent estimates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from cbetrack.graph import Network, max_degree
from cbetrack.linalg import identity, matmul


@dataclass(frozen=True)
class ConsensusConfig:
    epsilon: float = 0.1
    rounds: int = 10

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.rounds) != self.rounds or self.rounds < 1:
            raise ValueError(f"rounds must be a positive integer, got {self.rounds}")

    def validate(self, net: Network) -> None:
        check_epsilon(net, self.epsilon)


def check_epsilon(net: Network, epsilon: float) -> None:
    dmax = max_degree(net)
    if not epsilon > 0.0 or (dmax > 0 and epsilon > 1.0 / dmax):
        bound = 1.0 / dmax if dmax else float("inf")
        raise ValueError(f"epsilon must lie in (0, 1/max_degree] = (0, {bound:g}], got {epsilon:g}")


def _round(neighbor_sets, estimates, epsilon):
    out = []
    for xi, nbrs in zip(estimates, neighbor_sets):
        acc = [0.0] * len(xi)
        for j in nbrs:
            xj = estimates[j]
            for c in range(len(acc)):
                acc[c] += xi[c] - xj[c]
        out.append(tuple(a - epsilon * s for a, s in zip(xi, acc)))
    return out


def consensus_round(net: Network, estimates: Sequence[Sequence[float]], epsilon: float) -> list[tuple[float, ...]]:
    """One Jacobi-style round: every agent reads only previous-round values."""
    if len(estimates) != net.n:
        raise ValueError(f"expected {net.n} estimates, got {len(estimates)}")
    check_epsilon(net, epsilon)
    return _round(net.neighbor_sets, estimates, epsilon)


def run_consensus(net: Network, estimates: Sequence[Sequence[float]], cfg: ConsensusConfig) -> list[tuple[float, ...]]:
    if len(estimates) != net.n:
        raise ValueError(f"expected {net.n} estimates, got {len(estimates)}")
    cfg.validate(net)
    current = [tuple(x) for x in estimates]
    for _ in range(cfg.rounds):
        current = _round(net.neighbor_sets, current, cfg.epsilon)
    return current


def consensus_matrix_oracle(net: Network, epsilon: float, rounds: int) -> tuple[tuple[float, ...], ...]:
    """Dense ``(I - epsilon * Laplacian) ** rounds`` by repeated multiplication.

    Test reference only; it never touches the per-agent update code.
    """
    lap = net.laplacian()
    n = net.n
    step = tuple(
        tuple((1.0 if i == j else 0.0) - epsilon * lap[i][j] for j in range(n)) for i in range(n)
    )
    result = identity(n)
    for _ in range(rounds):
        result = matmul(step, result)
    return result
