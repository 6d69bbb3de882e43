"""
On-disk JSON schemas.

Every file carries ``format_version`` and is parsed strictly: unknown
fields are errors so schema drift is caught at load time.  Times are
integer nanoseconds; reliabilities are exact rationals written as
strings (``"0.9999"`` or ``"9999/10000"``).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Literal, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field

FORMAT_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class _Versioned(_Strict):
    format_version: Literal[1] = FORMAT_VERSION


def _check_fraction(value: str) -> str:
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {value!r}") from None
    return value


FractionStr = Annotated[str, AfterValidator(_check_fraction)]


# ------------------------------------------------------------------
# Histogram
# ------------------------------------------------------------------

class HistogramBody(_Strict):
    name: str = ""
    total: int = 0
    bins: list[tuple[int, int, int]]


class HistogramFile(_Versioned, HistogramBody):
    pass


# ------------------------------------------------------------------
# Network
# ------------------------------------------------------------------

class NodeModel(_Strict):
    id: str
    role: Literal["end-station", "bridge", "ds-tt", "nw-tt"]


class EthernetLinkModel(_Strict):
    kind: Literal["ethernet"] = "ethernet"
    src: str
    dst: str
    rate_bits_per_s: int
    prop_delay_ns: int = 0
    proc_delay_ns: int = 0


class WirelessLinkModel(_Strict):
    kind: Literal["wireless"] = "wireless"
    src: str
    dst: str
    histogram: str


LinkModel = Annotated[Union[EthernetLinkModel, WirelessLinkModel], Field(discriminator="kind")]


class NetworkFile(_Versioned):
    nodes: list[NodeModel]
    links: list[LinkModel]
    histograms: dict[str, HistogramBody] = {}
    histogram_files: dict[str, str] = {}
    queues_per_port: int = 1


# ------------------------------------------------------------------
# Streams
# ------------------------------------------------------------------

class StreamModel(_Strict):
    id: str
    path: list[str]
    period_ns: int
    phase_ns: int = 0
    size_bytes: int
    latency_bound_ns: int
    jitter_bound_ns: int
    reliability: FractionStr = "1"
    priority: int = 0


class StreamsFile(_Versioned):
    streams: list[StreamModel]


# ------------------------------------------------------------------
# Configuration
# ------------------------------------------------------------------

class GclEntry(_Strict):
    src: str
    dst: str
    windows: list[tuple[int, int]]
    batch_starts: list[int] = []


class PdbEntry(_Strict):
    src: str
    dst: str
    stream: str
    dmin_ns: int
    dmax_ns: int
    mass: FractionStr = "1"


class FrameStartEntry(_Strict):
    src: str
    dst: str
    stream: str
    index: int
    release_ns: int
    smin_ns: int
    smax_ns: int


class PsfpEntry(_Strict):
    node: str
    stream: str
    index: int
    release_ns: int
    lo_ns: int
    hi_ns: int


class ConfigurationFile(_Versioned):
    hypercycle_ns: int
    mode: str
    policing_enabled: bool = True
    seed: Optional[int] = None
    accepted: list[str] = []
    rejected: dict[str, str] = {}
    gcl: list[GclEntry] = []
    pdbs: list[PdbEntry] = []
    frame_starts: list[FrameStartEntry] = []
    psfp: list[PsfpEntry] = []


# ------------------------------------------------------------------
# Trace
# ------------------------------------------------------------------

class TraceRecordModel(_Strict):
    src: str
    dst: str
    stream: str
    index: int
    cycle: int
    hop: int
    ready_ns: Optional[int] = None
    tx_offset_ns: Optional[int] = None
    delay_ns: Optional[int] = None
    effective_delay_ns: Optional[int] = None
    raw_delay_ns: Optional[int] = None
    drop: Literal["none", "transit_drop", "psfp_drop", "never_sent"] = "none"
    drop_node: Optional[str] = None
    seq: int = -1


class TraceFile(_Versioned):
    hypercycle_ns: int
    n_cycles: int
    seed: Optional[int] = None
    records: list[TraceRecordModel] = []


# ------------------------------------------------------------------
# QoS report
# ------------------------------------------------------------------

class StreamQosModel(_Strict):
    id: str
    released: int = 0
    delivered: int = 0
    late: int = 0
    psfp_drops: int = 0
    transit_drops: int = 0
    in_flight: int = 0
    excluded: int = 0
    window_misses: int = 0
    latency_min_ns: Optional[int] = None
    latency_max_ns: Optional[int] = None
    latency_sum_ns: int = 0
    delivered_min_ns: Optional[int] = None
    delivered_max_ns: Optional[int] = None
    # derived, ignored when read back
    delivered_fraction: Optional[float] = None
    reliability_halfwidth: Optional[float] = None
    latency_mean_ns: Optional[float] = None
    observed_jitter_ns: Optional[int] = None


class QosReportFile(_Versioned):
    hypercycle_ns: int
    n_cycles: int
    seed: Optional[int] = None
    note: str = (
        "frames in flight at the horizon count as lost unless released in the final hypercycle"
    )
    streams: list[StreamQosModel] = []


# ------------------------------------------------------------------
# Scenario and experiment reports
# ------------------------------------------------------------------

class TopologyModel(_Strict):
    agv_end_stations: int = 4
    backbone_depth: int = 3
    stations_per_leaf: int = 2
    rate_bits_per_s: int = 100_000_000
    prop_delay_ns: int = 50
    proc_delay_ns: int = 0


class WiredClassModel(_Strict):
    label: str
    count: int
    partition: Literal["agv", "backbone"]
    period_ns: int = 5_000_000
    latency_bound_ns: int = 500_000
    jitter_bound_ns: int = 1_000
    size_bytes: int = 100


class WirelessClassModel(_Strict):
    label: str
    count: int
    direction: Literal["uplink", "downlink"]
    reliability: FractionStr
    period_ns: int = 20_000_000
    latency_bound_ns: int = 20_000_000
    jitter_bound_ns: int = 100_000
    size_bytes: int = 100
    tracked: bool = False


class ScenarioBody(_Strict):
    name: str = "scenario"
    topology: TopologyModel = TopologyModel()
    wired: list[WiredClassModel] = []
    wireless: list[WirelessClassModel] = []
    reliability_grid: list[FractionStr] = ["0.90", "0.99", "0.999", "0.9999"]
    jitter_grid_ns: list[int] = [1_000, 20_000, 40_000, 60_000, 80_000, 100_000]
    jitter_sweep_reliabilities: list[FractionStr] = ["0.90", "0.9999"]
    seed: int = 0
    replications: int = 1
    n_cycles: int = 10_000
    workers: int = 1


class ScenarioFile(_Versioned, ScenarioBody):
    pass


class ModeOutcomeModel(_Strict):
    mode: str
    accepted: list[str]
    rejected: dict[str, str]
    qos: QosReportFile


class ReliabilityReportFile(_Versioned):
    experiment: Literal["reliability"] = "reliability"
    scenario: ScenarioBody
    tracked: list[str]
    rows: list[dict]
    outcomes: list[ModeOutcomeModel]


class ScalabilityRowModel(_Strict):
    replication: int
    reliability: str
    jitter_bound_ns: int
    fips_accepted: int
    sti_accepted: int


class ScalabilityAverageModel(_Strict):
    reliability: str
    jitter_bound_ns: int
    fips_mean: float
    sti_mean: float
    ratio: Optional[float] = None


class ScalabilityReportFile(_Versioned):
    experiment: Literal["scalability"] = "scalability"
    scenario: ScenarioBody
    rows: list[ScalabilityRowModel]
    averages: list[ScalabilityAverageModel]
    trend_breaks: list[str] = []
