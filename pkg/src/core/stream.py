"""
Periodic time-triggered streams and their per-hypercycle frame instances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from core.errors import HypercycleOverflow, InvalidStream
from core.network import Link, NetworkGraph, NodeId, Port
from core.timebase import MAX_HYPERCYCLE_NS, TimeNs

MIN_FRAME_BYTES = 64
MAX_FRAME_BYTES = 1522


@dataclass(frozen=True)
class Stream:
    id: str
    path: tuple[NodeId, ...]
    period: TimeNs
    phase: TimeNs
    size_bytes: int
    latency_bound: TimeNs
    jitter_bound: TimeNs
    reliability: Fraction
    priority: int = 0

    def __post_init__(self):
        if len(self.path) < 2:
            raise InvalidStream(f"Stream {self.id!r}: path needs a talker and a listener")
        if len(set(self.path)) != len(self.path):
            raise InvalidStream(f"Stream {self.id!r}: path {self.path} is not simple")
        if self.period <= 0:
            raise InvalidStream(f"Stream {self.id!r}: period must be positive")
        if not 0 <= self.phase < self.period:
            raise InvalidStream(f"Stream {self.id!r}: phase {self.phase} not in [0, {self.period})")
        if not MIN_FRAME_BYTES <= self.size_bytes <= MAX_FRAME_BYTES:
            raise InvalidStream(
                f"Stream {self.id!r}: size {self.size_bytes} B outside "
                f"[{MIN_FRAME_BYTES}, {MAX_FRAME_BYTES}]"
            )
        if self.latency_bound < 0 or self.jitter_bound < 0:
            raise InvalidStream(f"Stream {self.id!r}: QoS bounds must be non-negative")
        if not 0 < self.reliability <= 1:
            raise InvalidStream(f"Stream {self.id!r}: reliability must be in (0, 1]")
        if not 0 <= self.priority <= 7:
            raise InvalidStream(f"Stream {self.id!r}: priority must be in 0..7")

    @property
    def talker(self) -> NodeId:
        return self.path[0]

    @property
    def listener(self) -> NodeId:
        return self.path[-1]

    @cached_property
    def ports(self) -> tuple[Port, ...]:
        return tuple(zip(self.path, self.path[1:]))

    def hop_of(self, port: Port) -> int:
        """0-based index of ``port`` on the path."""
        return self.ports.index(port)


@dataclass(frozen=True, slots=True, order=True)
class FrameInstance:
    stream_id: str
    index: int
    release: TimeNs

    def __str__(self) -> str:
        return f"{self.stream_id}#{self.index}"


def hypercycle(streams: Iterable[Stream]) -> TimeNs:
    """lcm of all stream periods."""
    periods = [s.period for s in streams]
    if not periods:
        raise ValueError("hypercycle of an empty stream set is undefined")
    h = math.lcm(*periods)
    if h > MAX_HYPERCYCLE_NS:
        raise HypercycleOverflow(f"Hypercycle {h} ns exceeds {MAX_HYPERCYCLE_NS} ns")
    return h


def expand_frames(stream: Stream, h: TimeNs) -> list[FrameInstance]:
    if h % stream.period:
        raise ValueError(f"Hypercycle {h} is not a multiple of period {stream.period} of {stream.id!r}")
    return [
        FrameInstance(stream.id, i, stream.phase + i * stream.period)
        for i in range(h // stream.period)
    ]


def path_links(stream: Stream, network: NetworkGraph) -> list[Link]:
    """Links along the stream's path; raises ``InvalidStream`` if one is missing."""
    links = []
    for port in stream.ports:
        if not network.has_port(port):
            raise InvalidStream(f"Stream {stream.id!r}: no link {port[0]}->{port[1]}")
        links.append(network.link(port))
    return links


def wireless_hop(stream: Stream, network: NetworkGraph) -> int | None:
    """0-based hop index of the stream's wireless link, if any."""
    hops = [k for k, lk in enumerate(path_links(stream, network)) if lk.is_wireless]
    if len(hops) > 1:
        raise InvalidStream(f"Stream {stream.id!r} crosses more than one wireless link")
    return hops[0] if hops else None


def validate_stream(stream: Stream, network: NetworkGraph) -> None:
    """Check that a stream fits the graph: every hop exists, at most one 5G link."""
    for node in stream.path:
        if node not in network.nodes:
            raise InvalidStream(f"Stream {stream.id!r}: unknown node {node!r}")
    wireless_hop(stream, network)
