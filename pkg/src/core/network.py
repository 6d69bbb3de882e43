"""
Network graph: nodes with roles, directed links, and the logical 5G bridge.

A logical 5G-TSN bridge is two translator nodes (DS-TT and NW-TT)
joined by a pair of directed ``Wireless`` links, one per direction.
Each wireless link resolves to the delay histogram of its direction.

Usage::

    graph = build_network(NetworkDescription(nodes=..., links=..., histograms=...))
    graph.link(("L0", "DS-TT"))
    graph.to_digraph()          # networkx view for path queries
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, TypeAlias

import networkx as nx

from core.errors import DanglingLink, DuplicateLink, DuplicateNodeId, MissingHistogram, NotEthernet
from core.histogram import DelayHistogram
from core.interval import Interval
from core.timebase import NS_PER_S, TimeNs, ceil_div

logger = logging.getLogger(__name__)

NodeId: TypeAlias = str
Port: TypeAlias = tuple[NodeId, NodeId]


class NodeRole(Enum):
    END_STATION = "end-station"
    BRIDGE = "bridge"
    DS_TT = "ds-tt"
    NW_TT = "nw-tt"

    @property
    def is_translator(self) -> bool:
        return self in (NodeRole.DS_TT, NodeRole.NW_TT)


@dataclass(frozen=True, slots=True)
class Ethernet:
    rate_bits_per_s: int
    prop_delay: TimeNs = 0
    proc_delay: TimeNs = 0

    def __post_init__(self):
        if self.rate_bits_per_s <= 0:
            raise ValueError(f"Ethernet rate must be positive, got {self.rate_bits_per_s}")
        if self.prop_delay < 0 or self.proc_delay < 0:
            raise ValueError("Ethernet delays must be non-negative")

    def serialization(self, size_bytes: int) -> TimeNs:
        """``size·8/rate`` rounded up to a whole nanosecond."""
        return ceil_div(size_bytes * 8 * NS_PER_S, self.rate_bits_per_s)


@dataclass(frozen=True, slots=True)
class Wireless:
    histogram_ref: str
    histogram: DelayHistogram | None = None


LinkKind: TypeAlias = Ethernet | Wireless


@dataclass(frozen=True, slots=True)
class Link:
    src: NodeId
    dst: NodeId
    kind: LinkKind

    @property
    def port(self) -> Port:
        return (self.src, self.dst)

    @property
    def is_wireless(self) -> bool:
        return isinstance(self.kind, Wireless)

    def serialization(self, size_bytes: int) -> TimeNs:
        """Port occupancy of one frame; frequency multiplexing makes it 0 on 5G."""
        if isinstance(self.kind, Ethernet):
            return self.kind.serialization(size_bytes)
        return 0


def ethernet_delay(link: Link, size_bytes: int) -> Interval:
    """Degenerate ``[d, d]`` with ``d = ceil(size·8/rate) + prop + proc``."""
    if not isinstance(link.kind, Ethernet):
        raise NotEthernet(f"Link {link.src}->{link.dst} is not an Ethernet link")
    k = link.kind
    return Interval.point(k.serialization(size_bytes) + k.prop_delay + k.proc_delay)


# ------------------------------------------------------------------
# Graph
# ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class NetworkDescription:
    """Unvalidated network as read from a file."""
    nodes: tuple[tuple[NodeId, NodeRole], ...] = ()
    links: tuple[Link, ...] = ()
    histograms: Mapping[str, DelayHistogram] = field(default_factory=dict)
    queues_per_port: int = 1


@dataclass(frozen=True, slots=True)
class NetworkGraph:
    nodes: Mapping[NodeId, NodeRole]
    links: Mapping[Port, Link]
    queues_per_port: int = 1

    def link(self, port: Port) -> Link:
        return self.links[port]

    def role(self, node: NodeId) -> NodeRole:
        return self.nodes[node]

    def has_port(self, port: Port) -> bool:
        return port in self.links

    @property
    def wireless_links(self) -> list[Link]:
        return [lk for lk in self.links.values() if lk.is_wireless]

    def end_stations(self) -> list[NodeId]:
        return [n for n, r in self.nodes.items() if r is NodeRole.END_STATION]

    def to_digraph(self) -> nx.DiGraph:
        """networkx view; edges carry the ``Link`` under ``"link"``."""
        g = nx.DiGraph()
        for node, role in self.nodes.items():
            g.add_node(node, role=role)
        for port, lk in self.links.items():
            g.add_edge(*port, link=lk)
        return g

    def __len__(self) -> int:
        return len(self.nodes)


def build_network(spec: NetworkDescription) -> NetworkGraph:
    """Validate a description and resolve every wireless histogram reference."""
    nodes: dict[NodeId, NodeRole] = {}
    for node_id, role in spec.nodes:
        if node_id in nodes:
            raise DuplicateNodeId(f"Node id {node_id!r} declared twice")
        nodes[node_id] = role

    if not 1 <= spec.queues_per_port <= 8:
        raise ValueError(f"queues_per_port must be in 1..8, got {spec.queues_per_port}")

    links: dict[Port, Link] = {}
    for lk in spec.links:
        for end in (lk.src, lk.dst):
            if end not in nodes:
                raise DanglingLink(f"Link {lk.src}->{lk.dst} references unknown node {end!r}")
        if lk.port in links:
            raise DuplicateLink(f"Link {lk.src}->{lk.dst} declared twice")
        if isinstance(lk.kind, Wireless):
            hist = lk.kind.histogram or spec.histograms.get(lk.kind.histogram_ref)
            if hist is None:
                raise MissingHistogram(
                    f"Link {lk.src}->{lk.dst} references unknown histogram {lk.kind.histogram_ref!r}"
                )
            lk = replace(lk, kind=Wireless(lk.kind.histogram_ref, hist.normalized()))
        links[lk.port] = lk

    logger.debug("Built network with %d nodes and %d links", len(nodes), len(links))
    return NetworkGraph(
        nodes=nodes,
        links=links,
        queues_per_port=spec.queues_per_port,
    )
