"""Per-agent saturation-gated innovation filter."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from cbetrack.dynamics import NcvModel
from cbetrack.linalg import matvec, norm2, transpose_apply
from cbetrack.sensing import AgentSensor


@dataclass(frozen=True)
class FilterParams:
    """``xi`` is the observation confidence threshold.

    ``saturate=False`` pins the gain at 1, i.e. a plain linear correction;
    it exists as a baseline for comparing against the saturated filter.
    """

    xi: float = 1.0
    saturate: bool = True

    def __post_init__(self):
        if not self.xi > 0.0:
            raise ValueError(f"xi must be positive, got {self.xi}")


@dataclass(frozen=True)
class AgentEstimate:
    x_hat: tuple[float, ...]
    innovation_mag: float = 0.0
    gain: float = 1.0


def saturation_gain(innovation: Sequence[float], xi: float) -> float:
    """``min(1, xi / ||innovation||)``, with 1 for a zero innovation."""
    if not xi > 0.0:
        raise ValueError(f"xi must be positive, got {xi}")
    mag = norm2(innovation)
    if mag <= xi:
        return 1.0
    return xi / mag


def measurement_update(
    model: NcvModel,
    sensor: AgentSensor,
    params: FilterParams,
    prev: AgentEstimate,
    y: Sequence[float],
) -> AgentEstimate:
    x_pred = matvec(model.A, prev.x_hat)
    predicted_y = matvec(sensor.H, x_pred)
    if len(y) != len(predicted_y):
        raise ValueError(f"measurement has {len(y)} entries, sensor expects {len(predicted_y)}")
    innovation = tuple(a - b for a, b in zip(y, predicted_y))
    mag = norm2(innovation)
    g = saturation_gain(innovation, params.xi) if params.saturate else 1.0
    correction = transpose_apply(sensor.H, innovation)
    x_hat = tuple(p + g * c for p, c in zip(x_pred, correction))
    if not all(math.isfinite(v) for v in x_hat):
        raise FloatingPointError(f"agent {sensor.id} estimate diverged")
    return AgentEstimate(x_hat, mag, g)
