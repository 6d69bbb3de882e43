from harness.topology import AgvTopologyParams, gen_agv_topology, measured_histogram
from harness.streams import (
    Direction,
    Partition,
    ScenarioSpec,
    WiredClass,
    WirelessClass,
    gen_stream_set,
    reliability_scenario,
    scalability_scenario,
)
from harness.experiments import (
    GridPoint,
    ReliabilityReport,
    ScalabilityReport,
    ScalabilityRow,
    exp_reliability,
    exp_scalability,
)

__all__ = [
    "AgvTopologyParams",
    "gen_agv_topology",
    "measured_histogram",
    "Direction",
    "Partition",
    "ScenarioSpec",
    "WiredClass",
    "WirelessClass",
    "gen_stream_set",
    "reliability_scenario",
    "scalability_scenario",
    "GridPoint",
    "ReliabilityReport",
    "ScalabilityReport",
    "ScalabilityRow",
    "exp_reliability",
    "exp_scalability",
]
