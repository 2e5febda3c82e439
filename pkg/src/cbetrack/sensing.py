"""Anchor geometry, linearized observation matrices and noisy measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from cbetrack.linalg import Matrix, matvec


@dataclass(frozen=True)
class FaultSpec:
    """Outlier injection: each measurement component independently gets
    ``+magnitude`` or ``-magnitude`` added with probability ``probability``."""

    probability: float
    magnitude: float

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"fault probability must lie in [0, 1], got {self.probability}")
        if not self.magnitude > 0.0:
            raise ValueError(f"fault magnitude must be positive, got {self.magnitude}")


@dataclass(frozen=True)
class AgentSensor:
    id: int
    anchor: tuple[float, float, float]
    neighbors: tuple[int, ...]
    H: Matrix
    sigma_v: float = 0.0
    fault: FaultSpec | None = None

    def __post_init__(self):
        if len(self.H) != len(self.neighbors):
            raise ValueError("H must have one row per neighbor")
        if not self.sigma_v >= 0.0:
            raise ValueError(f"sigma_v must be nonnegative, got {self.sigma_v}")


def observation_matrix(
    anchors: Sequence[Sequence[float]], i: int, neighbors: Sequence[int]
) -> tuple[tuple[float, ...], ...]:
    """One row per neighbor ``j``: ``(p_j - p_i, 0, 0, 0)``.

    Rows follow the order of ``neighbors``. Coincident anchors give an
    all-zero row, which is allowed.
    """
    if not neighbors:
        raise ValueError(f"agent {i} has no neighbors and therefore no measurement")
    pi = anchors[i]
    rows = []
    for j in neighbors:
        if j == i:
            raise ValueError(f"agent {i} listed as its own neighbor")
        pj = anchors[j]
        rows.append((pj[0] - pi[0], pj[1] - pi[1], pj[2] - pi[2], 0.0, 0.0, 0.0))
    return tuple(rows)


def build_sensors(
    anchors: Sequence[Sequence[float]],
    neighbor_sets: Sequence[Sequence[int]],
    sigma_v: float,
    fault: FaultSpec | None = None,
) -> list[AgentSensor]:
    sensors = []
    for i, nbrs in enumerate(neighbor_sets):
        H = observation_matrix(anchors, i, nbrs)
        sensors.append(AgentSensor(i, tuple(float(v) for v in anchors[i]), tuple(nbrs), H, sigma_v, fault))
    return sensors


def box_anchors(n: int, low: float, high: float, rng: np.random.Generator) -> list[tuple[float, float, float]]:
    """``n`` anchor positions drawn uniformly from the cube ``[low, high)^3``."""
    pts = rng.uniform(low, high, size=(n, 3))
    return [tuple(float(v) for v in row) for row in pts]


def sphere_anchors(n: int, radius: float) -> list[tuple[float, float, float]]:
    """``n`` points spread evenly over a sphere (Fibonacci lattice).

    Deterministic, and well conditioned in every direction for n >= 4,
    which keeps all three position axes observable across the network.
    """
    golden = math.pi * (3.0 - math.sqrt(5.0))
    pts = []
    for i in range(n):
        z = 1.0 - 2.0 * (i + 0.5) / n
        rho = math.sqrt(1.0 - z * z)
        theta = golden * i
        pts.append((radius * rho * math.cos(theta), radius * rho * math.sin(theta), radius * z))
    return pts


def measure(sensor: AgentSensor, x: Sequence[float], rng: np.random.Generator) -> tuple[float, ...]:
    """Noisy linear measurement ``H @ x + v`` with optional outliers.

    Draw order per call is fixed: one normal per row, then (only when a
    fault spec is set) one uniform per row for occurrence and one for sign.
    """
    clean = matvec(sensor.H, x)
    m = len(clean)
    noise = rng.normal(0.0, 1.0, m)
    s = sensor.sigma_v
    y = [c + s * float(e) for c, e in zip(clean, noise)]
    if sensor.fault is not None:
        hit = rng.random(m)
        sign = rng.random(m)
        f = sensor.fault
        for r in range(m):
            if hit[r] < f.probability:
                y[r] += f.magnitude if sign[r] < 0.5 else -f.magnitude
    return tuple(y)
