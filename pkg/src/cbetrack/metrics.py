"""Innovation magnitude and running mean squared estimation error."""

from __future__ import annotations

from typing import Sequence


class MetricsLog:
    """Append-only per-step log.

    ``msee[k-1][i]`` is agent i's mean over steps 1..k of the squared
    Euclidean estimation error; ``msee_avg[k-1]`` averages it across agents.
    With ``position_only`` the error uses the three position components.
    """

    def __init__(self, n: int, position_only: bool = False):
        self.n = n
        self.position_only = position_only
        self.innovation: list[tuple[float, ...]] = []
        self.msee: list[tuple[float, ...]] = []
        self.msee_avg: list[float] = []
        self._sq_sums = [0.0] * n

    @property
    def steps(self) -> int:
        return len(self.msee_avg)

    def record_step(
        self,
        k: int,
        innovation_mags: Sequence[float],
        estimates: Sequence[Sequence[float]],
        truth: Sequence[float],
    ) -> "MetricsLog":
        if k != self.steps + 1:
            raise ValueError(f"expected step {self.steps + 1}, got {k}")
        if len(innovation_mags) != self.n or len(estimates) != self.n:
            raise ValueError(f"expected {self.n} agents")
        dims = 3 if self.position_only else len(truth)
        row = []
        for i, est in enumerate(estimates):
            sq = 0.0
            for c in range(dims):
                d = est[c] - truth[c]
                sq += d * d
            self._sq_sums[i] += sq
            row.append(self._sq_sums[i] / k)
        self.innovation.append(tuple(float(m) for m in innovation_mags))
        self.msee.append(tuple(row))
        self.msee_avg.append(sum(row) / self.n)
        return self


def msee_from_scratch(
    estimates: Sequence[Sequence[Sequence[float]]],
    truth: Sequence[Sequence[float]],
    position_only: bool = False,
) -> list[float]:
    """Per-agent MSEE at the last step, recomputed over the whole history."""
    K = len(truth)
    n = len(estimates[0])
    dims = 3 if position_only else len(truth[0])
    return [
        sum(sum((estimates[t][i][c] - truth[t][c]) ** 2 for c in range(dims)) for t in range(K)) / K
        for i in range(n)
    ]
