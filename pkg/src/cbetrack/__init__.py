"""Decentralized mobile-target tracking with saturated consensus estimation.

A network of static anchor agents tracks a target that moves under a
nearly-constant-velocity model. Each agent runs a saturation-gated
innovation filter on its own measurements, then the network runs a fixed
number of synchronous consensus rounds on the estimates.
"""

from cbetrack.consensus import ConsensusConfig, consensus_matrix_oracle, consensus_round, run_consensus
from cbetrack.dynamics import NcvModel, ProcessNoise, TargetState, build_ncv, propagate, sample_process_noise
from cbetrack.estimator import AgentEstimate, FilterParams, measurement_update, saturation_gain
from cbetrack.graph import Network, generate_erdos_renyi, is_connected, max_degree
from cbetrack.metrics import MetricsLog
from cbetrack.sensing import AgentSensor, FaultSpec, measure, observation_matrix
from cbetrack.simulation import ConfigError, ScenarioConfig, SimulationResult, run

__version__ = "0.1.0"

__all__ = [
    "AgentEstimate",
    "AgentSensor",
    "ConfigError",
    "ConsensusConfig",
    "FaultSpec",
    "FilterParams",
    "MetricsLog",
    "NcvModel",
    "Network",
    "ProcessNoise",
    "ScenarioConfig",
    "SimulationResult",
    "TargetState",
    "build_ncv",
    "consensus_matrix_oracle",
    "consensus_round",
    "generate_erdos_renyi",
    "is_connected",
    "max_degree",
    "measure",
    "measurement_update",
    "observation_matrix",
    "propagate",
    "run",
    "run_consensus",
    "sample_process_noise",
    "saturation_gain",
]
