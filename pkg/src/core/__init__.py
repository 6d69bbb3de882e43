from core.timebase import TimeNs, NS_PER_US, NS_PER_MS, ms, us, to_ms
from core.interval import Interval
from core.histogram import DelayHistogram, HistogramBin
from core.network import (
    Ethernet,
    Link,
    NetworkDescription,
    NetworkGraph,
    NodeId,
    NodeRole,
    Port,
    Wireless,
    build_network,
    ethernet_delay,
)
from core.stream import FrameInstance, Stream, expand_frames, hypercycle, path_links, wireless_hop
from core.validation_result import CheckStatus, ValidationResult
from core.checks import check_inputs
from core.errors import FipsError

__all__ = [
    "TimeNs",
    "NS_PER_US",
    "NS_PER_MS",
    "ms",
    "us",
    "to_ms",
    "Interval",
    "DelayHistogram",
    "HistogramBin",
    "Ethernet",
    "Link",
    "NetworkDescription",
    "NetworkGraph",
    "NodeId",
    "NodeRole",
    "Port",
    "Wireless",
    "build_network",
    "ethernet_delay",
    "FrameInstance",
    "Stream",
    "expand_frames",
    "hypercycle",
    "path_links",
    "wireless_hop",
    "CheckStatus",
    "ValidationResult",
    "check_inputs",
    "FipsError",
]
