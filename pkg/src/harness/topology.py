"""
AGV evaluation topology.

Two wired partitions joined by a logical 5G bridge:

    AGV partition       root switch L0, switches L1/L2 (cross-linked),
                        end stations L3.. spread over L1 and L2
    5G bridge           DS-TT (wired to L0) and NW-TT (wired to R0)
    TSN backbone        binary tree of switches R0.., cross-link R1–R2,
                        end stations hanging off the leaf switches

Every wired link is full-duplex Ethernet; the bridge carries an uplink
(DS-TT → NW-TT) and a downlink (NW-TT → DS-TT) wireless link.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from core.histogram import DelayHistogram
from core.network import (
    Ethernet,
    Link,
    NetworkDescription,
    NetworkGraph,
    NodeId,
    NodeRole,
    Wireless,
    build_network,
)
from core.timebase import TimeNs

logger = logging.getLogger(__name__)

DS_TT = "DS-TT"
NW_TT = "NW-TT"
MEASURED_HISTOGRAM = "measured"


@dataclass(frozen=True, slots=True)
class AgvTopologyParams:
    agv_end_stations: int = 4
    backbone_depth: int = 3
    stations_per_leaf: int = 2
    rate_bits_per_s: int = 100_000_000
    prop_delay: TimeNs = 50
    proc_delay: TimeNs = 0

    def __post_init__(self):
        if self.agv_end_stations < 1:
            raise ValueError("The AGV partition needs at least one end station")
        if self.backbone_depth < 2:
            raise ValueError("The backbone tree needs at least two levels for its cross-link")
        if self.stations_per_leaf < 1:
            raise ValueError("Backbone leaves need at least one end station")

    @property
    def backbone_switches(self) -> int:
        return 2 ** self.backbone_depth - 1


@lru_cache(maxsize=1)
def measured_histogram() -> DelayHistogram:
    """The bundled uplink delay measurement (counts per 10⁵ frames)."""
    raw = json.loads(
        resources.files("harness").joinpath("data/measured_delay.json").read_text(encoding="utf-8")
    )
    return DelayHistogram.from_triples(
        [tuple(b) for b in raw["bins"]], raw["total"], raw.get("name", MEASURED_HISTOGRAM),
    )


def partition_of(node: NodeId) -> str | None:
    """``"agv"``, ``"backbone"`` or None for the translators."""
    if node.startswith("L"):
        return "agv"
    if node.startswith("R"):
        return "backbone"
    return None


def gen_agv_topology(
    params: AgvTopologyParams | None = None,
    uplink: DelayHistogram | None = None,
    downlink: DelayHistogram | None = None,
) -> NetworkGraph:
    """Build the AGV network; both bridge directions default to the measured histogram."""
    p = params or AgvTopologyParams()
    uplink = uplink or measured_histogram()
    downlink = downlink or uplink

    nodes: list[tuple[NodeId, NodeRole]] = []
    edges: list[tuple[NodeId, NodeId]] = []

    # AGV partition
    nodes += [("L0", NodeRole.BRIDGE), ("L1", NodeRole.BRIDGE), ("L2", NodeRole.BRIDGE)]
    edges += [("L0", "L1"), ("L0", "L2"), ("L1", "L2")]
    for i in range(p.agv_end_stations):
        es = f"L{3 + i}"
        nodes.append((es, NodeRole.END_STATION))
        edges.append((("L1", "L2")[i % 2], es))

    # backbone
    n_sw = p.backbone_switches
    nodes += [(f"R{i}", NodeRole.BRIDGE) for i in range(n_sw)]
    edges += [(f"R{(i - 1) // 2}", f"R{i}") for i in range(1, n_sw)]
    edges.append(("R1", "R2"))
    first_leaf = n_sw // 2
    es_id = n_sw
    for leaf in range(first_leaf, n_sw):
        for _ in range(p.stations_per_leaf):
            nodes.append((f"R{es_id}", NodeRole.END_STATION))
            edges.append((f"R{leaf}", f"R{es_id}"))
            es_id += 1

    # 5G bridge
    nodes += [(DS_TT, NodeRole.DS_TT), (NW_TT, NodeRole.NW_TT)]
    edges += [("L0", DS_TT), ("R0", NW_TT)]

    eth = Ethernet(p.rate_bits_per_s, p.prop_delay, p.proc_delay)
    links = [Link(a, b, eth) for a, b in edges] + [Link(b, a, eth) for a, b in edges]
    links += [
        Link(DS_TT, NW_TT, Wireless("uplink")),
        Link(NW_TT, DS_TT, Wireless("downlink")),
    ]
    graph = build_network(NetworkDescription(
        nodes=tuple(nodes),
        links=tuple(links),
        histograms={"uplink": uplink, "downlink": downlink},
    ))
    logger.debug("AGV topology: %d nodes, %d links", len(graph.nodes), len(graph.links))
    return graph
