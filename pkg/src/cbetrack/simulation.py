"""End-to-end tracking loop: truth, measurement, filtering, consensus, metrics."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from cbetrack.consensus import ConsensusConfig, run_consensus
from cbetrack.dynamics import ProcessNoise, TargetState, build_ncv, propagate, sample_process_noise
from cbetrack.estimator import AgentEstimate, FilterParams, measurement_update
from cbetrack.graph import DisconnectedGraphError, Network, generate_erdos_renyi
from cbetrack.linalg import norm2, sub
from cbetrack.metrics import MetricsLog
from cbetrack.sensing import FaultSpec, box_anchors, build_sensors, measure, sphere_anchors


class ConfigError(ValueError):
    """Invalid scenario configuration; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


@dataclass
class ScenarioConfig:
    n: int = 6
    er_probability: float = 0.5
    seed: int = 42
    delta: float = 0.1
    sigma_w: float = 0.5
    K: int = 500
    anchors: list[list[float]] | None = None
    anchor_layout: dict = field(default_factory=lambda: {"kind": "sphere", "radius": 0.5})
    sigma_v: float = 0.5
    fault: dict | None = None
    xi: float = 1.0
    saturate: bool = True
    epsilon: float = 0.1
    L: int = 10
    x0: list[float] = field(default_factory=lambda: [10.0, -5.0, 8.0, 1.0, 0.5, -0.2])
    xhat0: list[float] = field(default_factory=lambda: [0.0, 0.0, 0.0, 1.0, 0.5, -0.2])
    msee_position_only: bool = False

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ScenarioConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        for key in doc:
            if key not in known:
                raise ConfigError(key, "unknown configuration key")
        cfg = cls(**doc)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def replace(self, **changes) -> "ScenarioConfig":
        cfg = dataclasses.replace(self, **changes)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        """Check field types and ranges; raise ConfigError naming the field."""

        def need(name, ok, message):
            if not ok:
                raise ConfigError(name, message)

        def is_int(v):
            return isinstance(v, int) and not isinstance(v, bool)

        def is_real(v):
            return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)

        def is_vec(v, length):
            return isinstance(v, (list, tuple)) and len(v) == length and all(is_real(e) for e in v)

        need("n", is_int(self.n) and self.n >= 2, "must be an integer >= 2")
        need("er_probability", is_real(self.er_probability) and 0 <= self.er_probability <= 1, "must lie in [0, 1]")
        need("seed", is_int(self.seed) and 0 <= self.seed < 2**64, "must be an unsigned 64-bit integer")
        need("delta", is_real(self.delta) and self.delta > 0, "must be positive")
        need("sigma_w", is_real(self.sigma_w) and self.sigma_w >= 0, "must be nonnegative")
        need("K", is_int(self.K) and self.K >= 1, "must be an integer >= 1")
        if self.anchors is not None:
            need("anchors", isinstance(self.anchors, (list, tuple)) and len(self.anchors) == self.n
                 and all(is_vec(a, 3) for a in self.anchors), f"must be a list of {self.n} 3-vectors")
        layout = self.anchor_layout
        need("anchor_layout", isinstance(layout, dict) and layout.get("kind") in ("sphere", "box"),
             "must be {\"kind\": \"sphere\", \"radius\": r} or {\"kind\": \"box\", \"low\": a, \"high\": b}")
        if layout["kind"] == "sphere":
            need("anchor_layout", set(layout) == {"kind", "radius"} and is_real(layout["radius"])
                 and layout["radius"] > 0, "sphere layout needs a positive radius")
        else:
            need("anchor_layout", set(layout) == {"kind", "low", "high"} and is_real(layout["low"])
                 and is_real(layout["high"]) and layout["low"] < layout["high"], "box layout needs low < high")
        need("sigma_v", is_real(self.sigma_v) and self.sigma_v >= 0, "must be nonnegative")
        if self.fault is not None:
            need("fault", isinstance(self.fault, dict) and set(self.fault) == {"probability", "magnitude"}
                 and all(is_real(v) for v in self.fault.values()),
                 "must be null or {\"probability\": p, \"magnitude\": m}")
            need("fault", 0 <= self.fault["probability"] <= 1, "probability must lie in [0, 1]")
            need("fault", self.fault["magnitude"] > 0, "magnitude must be positive")
        need("xi", is_real(self.xi) and self.xi > 0, "must be positive")
        need("saturate", isinstance(self.saturate, bool), "must be true or false")
        need("epsilon", is_real(self.epsilon) and self.epsilon > 0, "must be positive")
        need("L", is_int(self.L) and self.L >= 1, "must be an integer >= 1")
        need("x0", is_vec(self.x0, 6), "must be a 6-vector")
        need("xhat0", is_vec(self.xhat0, 6), "must be a 6-vector")
        need("msee_position_only", isinstance(self.msee_position_only, bool), "must be true or false")


@dataclass
class SimulationResult:
    truth: list[TargetState]
    estimates: list[list[tuple[float, ...]]]
    metrics: MetricsLog
    config_echo: ScenarioConfig
    network: Network
    anchors: list[tuple[float, float, float]]
    gains: list[tuple[float, ...]]
    spread_before: list[float]
    spread_after: list[float]

    def truth_array(self) -> np.ndarray:
        return np.asarray(self.truth)

    def estimates_array(self) -> np.ndarray:
        return np.asarray(self.estimates)


def spread(estimates) -> float:
    """Largest pairwise Euclidean distance between agent estimates."""
    worst = 0.0
    for i in range(len(estimates)):
        for j in range(i + 1, len(estimates)):
            worst = max(worst, norm2(sub(estimates[i], estimates[j])))
    return worst


def _streams(seed: int, n: int):
    graph_ss, anchor_ss, truth_ss, meas_ss = np.random.SeedSequence(seed).spawn(4)
    return (
        np.random.default_rng(graph_ss),
        np.random.default_rng(anchor_ss),
        np.random.default_rng(truth_ss),
        [np.random.default_rng(s) for s in meas_ss.spawn(n)],
    )


def build_network(config: ScenarioConfig) -> Network:
    graph_ss = np.random.SeedSequence(config.seed).spawn(4)[0]
    graph_seed = int(graph_ss.generate_state(1, np.uint64)[0])
    try:
        net = generate_erdos_renyi(config.n, config.er_probability, graph_seed)
    except DisconnectedGraphError as exc:
        raise ConfigError("er_probability", str(exc)) from exc
    try:
        return net.with_epsilon(config.epsilon)
    except ValueError as exc:
        raise ConfigError("epsilon", str(exc)) from exc


def resolve_anchors(config: ScenarioConfig) -> list[tuple[float, float, float]]:
    if config.anchors is not None:
        return [tuple(float(v) for v in a) for a in config.anchors]
    layout = config.anchor_layout
    if layout["kind"] == "sphere":
        return sphere_anchors(config.n, float(layout["radius"]))
    _, anchor_rng, _, _ = _streams(config.seed, config.n)
    return box_anchors(config.n, float(layout["low"]), float(layout["high"]), anchor_rng)


def run(config: ScenarioConfig) -> SimulationResult:
    """Simulate ``config.K`` steps.

    Each step propagates the truth, lets every agent measure and run its
    saturated update, then runs ``config.L`` consensus rounds. Noise comes
    from independent substreams of the master seed (truth, then one per
    agent), so changing the filter or consensus settings leaves the noise
    realization untouched.
    """
    config.validate()
    net = build_network(config)
    anchors = resolve_anchors(config)
    _, _, truth_rng, meas_rngs = _streams(config.seed, config.n)

    model = build_ncv(config.delta)
    process = ProcessNoise(config.sigma_w)
    fault = FaultSpec(**config.fault) if config.fault is not None else None
    sensors = build_sensors(anchors, net.neighbor_sets, config.sigma_v, fault)
    params = FilterParams(config.xi, config.saturate)
    consensus = ConsensusConfig(config.epsilon, config.L)

    x = TargetState(*map(float, config.x0))
    current = [tuple(map(float, config.xhat0))] * config.n
    log = MetricsLog(config.n, config.msee_position_only)
    truth, history, gains, before, after = [], [], [], [], []

    for k in range(1, config.K + 1):
        x = propagate(model, x, sample_process_noise(process, truth_rng))
        updated = []
        for sensor in sensors:
            y = measure(sensor, x, meas_rngs[sensor.id])
            updated.append(measurement_update(model, sensor, params, AgentEstimate(current[sensor.id]), y))
        local = [u.x_hat for u in updated]
        current = run_consensus(net, local, consensus)

        log.record_step(k, [u.innovation_mag for u in updated], current, x)
        truth.append(x)
        history.append(current)
        gains.append(tuple(u.gain for u in updated))
        before.append(spread(local))
        after.append(spread(current))

    return SimulationResult(truth, history, log, config, net, anchors, gains, before, after)
