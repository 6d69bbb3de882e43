"""
Scenario description and random stream-set generation.

Wired streams stay inside one partition; wireless streams cross the 5G
bridge in the uplink (AGV → backbone) or downlink direction.  Talker and
listener are drawn uniformly among the end stations of the respective
partitions and routed along a shortest path.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from core.errors import NoPath
from core.network import NetworkGraph, NodeId
from core.stream import Stream, wireless_hop
from core.timebase import NS_PER_US, TimeNs, ms, us
from harness.topology import AgvTopologyParams, partition_of

logger = logging.getLogger(__name__)


class Direction(Enum):
    UPLINK = "uplink"
    DOWNLINK = "downlink"


class Partition(Enum):
    AGV = "agv"
    BACKBONE = "backbone"


@dataclass(frozen=True, slots=True)
class WiredClass:
    label: str
    count: int
    partition: Partition
    period: TimeNs = ms(5)
    latency_bound: TimeNs = us(500)
    jitter_bound: TimeNs = us(1)
    size_bytes: int = 100

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"Stream class {self.label!r} has a negative count")


@dataclass(frozen=True, slots=True)
class WirelessClass:
    label: str
    count: int
    direction: Direction
    reliability: Fraction
    period: TimeNs = ms(20)
    latency_bound: TimeNs = ms(20)
    jitter_bound: TimeNs = us(100)
    size_bytes: int = 100
    tracked: bool = False

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"Stream class {self.label!r} has a negative count")


@dataclass(frozen=True, slots=True)
class ScenarioSpec:
    """Everything needed to regenerate an experiment."""
    name: str = "scenario"
    topology: AgvTopologyParams = field(default_factory=AgvTopologyParams)
    wired: tuple[WiredClass, ...] = ()
    wireless: tuple[WirelessClass, ...] = ()
    reliability_grid: tuple[Fraction, ...] = (
        Fraction("0.90"), Fraction("0.99"), Fraction("0.999"), Fraction("0.9999"),
    )
    jitter_grid: tuple[TimeNs, ...] = tuple(us(j) for j in (1, 20, 40, 60, 80, 100))
    jitter_sweep_reliabilities: tuple[Fraction, ...] = (Fraction("0.90"), Fraction("0.9999"))
    seed: int = 0
    replications: int = 1
    n_cycles: int = 10_000
    workers: int = 1

    def __post_init__(self):
        if not self.reliability_grid or not self.jitter_grid:
            raise ValueError("Experiment grids must not be empty")
        if self.replications < 1:
            raise ValueError("At least one replication is required")
        if self.n_cycles < 0 or self.workers < 1:
            raise ValueError("n_cycles must be >= 0 and workers >= 1")


def reliability_scenario(seed: int = 0, n_cycles: int = 10_000) -> ScenarioSpec:
    """Ten tracked high-criticality wireless streams under congestion."""
    high = Fraction("0.9999")
    low = Fraction("0.5")
    return ScenarioSpec(
        name="reliability",
        wired=(
            WiredClass("wired-agv-", 5, Partition.AGV),
            WiredClass("wired-bb-", 5, Partition.BACKBONE),
        ),
        wireless=(
            WirelessClass("high-up-", 5, Direction.UPLINK, high, tracked=True),
            WirelessClass("high-down-", 5, Direction.DOWNLINK, high, tracked=True),
            WirelessClass("low-up-", 40, Direction.UPLINK, low),
            WirelessClass("low-down-", 40, Direction.DOWNLINK, low),
        ),
        seed=seed,
        n_cycles=n_cycles,
    )


def scalability_scenario(seed: int = 0, replications: int = 10, workers: int = 1) -> ScenarioSpec:
    """30 wired streams and 400 wireless candidates; wireless QoS set per grid point."""
    rel = Fraction("0.90")
    return ScenarioSpec(
        name="scalability",
        wired=(
            WiredClass("wired-agv-", 15, Partition.AGV),
            WiredClass("wired-bb-", 15, Partition.BACKBONE),
        ),
        wireless=(
            WirelessClass("up-", 200, Direction.UPLINK, rel),
            WirelessClass("down-", 200, Direction.DOWNLINK, rel),
        ),
        seed=seed,
        replications=replications,
        workers=workers,
        n_cycles=0,
    )


def _stations(network: NetworkGraph) -> dict[Partition, list[NodeId]]:
    out: dict[Partition, list[NodeId]] = {Partition.AGV: [], Partition.BACKBONE: []}
    for node in network.end_stations():
        part = partition_of(node)
        if part is not None:
            out[Partition(part)].append(node)
    return out


def _route(graph: nx.DiGraph, talker: NodeId, listener: NodeId) -> tuple[NodeId, ...]:
    try:
        return tuple(nx.shortest_path(graph, talker, listener))
    except nx.NetworkXNoPath:
        raise NoPath(f"No path from {talker!r} to {listener!r}") from None


def _phase(period: TimeNs, rng: np.random.Generator) -> TimeNs:
    return int(rng.integers(0, period // NS_PER_US)) * NS_PER_US


def gen_stream_set(spec: ScenarioSpec, network: NetworkGraph, rng: np.random.Generator) -> list[Stream]:
    graph = network.to_digraph()
    stations = _stations(network)
    streams: list[Stream] = []

    for cls in spec.wired:
        pool = stations[cls.partition]
        if len(pool) < 2 and cls.count:
            raise NoPath(f"Partition {cls.partition.value} has fewer than two end stations")
        for k in range(cls.count):
            a, b = rng.choice(len(pool), size=2, replace=False)
            streams.append(Stream(
                id=f"{cls.label}{k}",
                path=_route(graph, pool[a], pool[b]),
                period=cls.period,
                phase=_phase(cls.period, rng),
                size_bytes=cls.size_bytes,
                latency_bound=cls.latency_bound,
                jitter_bound=cls.jitter_bound,
                reliability=Fraction(1),
            ))

    for cls in spec.wireless:
        if cls.direction is Direction.UPLINK:
            talkers, listeners = stations[Partition.AGV], stations[Partition.BACKBONE]
        else:
            talkers, listeners = stations[Partition.BACKBONE], stations[Partition.AGV]
        for k in range(cls.count):
            t = talkers[int(rng.integers(len(talkers)))]
            l = listeners[int(rng.integers(len(listeners)))]
            streams.append(Stream(
                id=f"{cls.label}{k}",
                path=_route(graph, t, l),
                period=cls.period,
                phase=_phase(cls.period, rng),
                size_bytes=cls.size_bytes,
                latency_bound=cls.latency_bound,
                jitter_bound=cls.jitter_bound,
                reliability=cls.reliability,
            ))

    logger.debug("Generated %d streams for %s", len(streams), spec.name)
    return streams


def tracked_streams(spec: ScenarioSpec) -> list[str]:
    return [f"{c.label}{k}" for c in spec.wireless if c.tracked for k in range(c.count)]


def is_wireless(stream: Stream, network: NetworkGraph) -> bool:
    return wireless_hop(stream, network) is not None


def with_wireless_qos(
    streams: Sequence[Stream],
    network: NetworkGraph,
    reliability: Fraction,
    jitter_bound: TimeNs,
) -> list[Stream]:
    """Same stream set with every wireless stream's reliability and jitter replaced."""
    return [
        replace(s, reliability=reliability, jitter_bound=jitter_bound) if is_wireless(s, network) else s
        for s in streams
    ]
