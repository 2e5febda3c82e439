"""Nearly-constant-velocity target model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from cbetrack.linalg import Matrix, add, matvec


class TargetState(NamedTuple):
    """Target state stacked as (px, py, pz, vx, vy, vz)."""

    px: float
    py: float
    pz: float
    vx: float
    vy: float
    vz: float

    @classmethod
    def from_parts(cls, position: Sequence[float], velocity: Sequence[float]) -> "TargetState":
        return cls(*position, *velocity)

    @property
    def position(self) -> tuple[float, float, float]:
        return (self.px, self.py, self.pz)

    @property
    def velocity(self) -> tuple[float, float, float]:
        return (self.vx, self.vy, self.vz)


@dataclass(frozen=True)
class NcvModel:
    delta: float
    A: Matrix
    B: Matrix


@dataclass(frozen=True)
class ProcessNoise:
    """Isotropic Gaussian acceleration noise, std ``sigma_w`` per axis."""

    sigma_w: float

    def __post_init__(self):
        if not self.sigma_w >= 0.0:
            raise ValueError(f"sigma_w must be nonnegative, got {self.sigma_w}")


def transition_matrix(delta: float) -> tuple[tuple[float, ...], ...]:
    return tuple(
        tuple(1.0 if r == c else (delta if c == r + 3 else 0.0) for c in range(6))
        for r in range(6)
    )


def input_matrix(delta: float) -> tuple[tuple[float, ...], ...]:
    half_sq = 0.5 * delta * delta
    return tuple(
        tuple((half_sq if r < 3 else delta) if c == r % 3 else 0.0 for c in range(3))
        for r in range(6)
    )


def build_ncv(delta: float) -> NcvModel:
    """Transition and input matrices for sampling time ``delta``.

    Position integrates velocity over one step; acceleration noise enters
    position with weight delta**2 / 2 and velocity with weight delta.
    """
    delta = float(delta)
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    return NcvModel(delta, transition_matrix(delta), input_matrix(delta))


def propagate(model: NcvModel, x: Sequence[float], w: Sequence[float]) -> TargetState:
    return TargetState(*add(matvec(model.A, x), matvec(model.B, w)))


def sample_process_noise(noise: ProcessNoise, rng: np.random.Generator) -> tuple[float, float, float]:
    # Always consumes three normals, even at sigma_w == 0, so the stream
    # position does not depend on the noise level.
    draw = rng.normal(0.0, 1.0, 3)
    s = noise.sigma_w
    return (s * float(draw[0]), s * float(draw[1]), s * float(draw[2]))
