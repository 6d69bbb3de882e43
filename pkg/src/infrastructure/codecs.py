"""
Conversion between domain objects and their file models.

``*_to_model`` functions are total and deterministic (every list is
emitted in a sorted order) so that equal inputs produce byte-identical
files.  ``*_from_model`` functions rebuild the domain objects and run
their validation.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Callable

from core.histogram import DelayHistogram
from core.interval import Interval
from core.network import (
    Ethernet,
    Link,
    NetworkDescription,
    NetworkGraph,
    NodeRole,
    Wireless,
    build_network,
)
from core.stream import FrameInstance, Stream
from budgets import Pdb
from harness.experiments import GridPoint, ReliabilityReport, ScalabilityReport, ScalabilityRow
from harness.streams import Direction, Partition, ScenarioSpec, WiredClass, WirelessClass
from harness.topology import AgvTopologyParams
from infrastructure import file_formats as ff
from scheduler.configuration import GateWindow, ScheduleTable, TsnConfiguration
from sim.qos import QosReport, StreamTally
from sim.trace import DropEvent, FrameKey, Trace, TraceRecord


# ------------------------------------------------------------------
# Histogram
# ------------------------------------------------------------------

def histogram_to_body(hist: DelayHistogram) -> ff.HistogramBody:
    return ff.HistogramBody(
        name=hist.name, total=hist.total, bins=[(b.low, b.up, b.count) for b in hist.bins],
    )


def histogram_from_body(body: ff.HistogramBody) -> DelayHistogram:
    return DelayHistogram.from_triples(list(body.bins), body.total, body.name)


def histogram_to_model(hist: DelayHistogram) -> ff.HistogramFile:
    return ff.HistogramFile(**histogram_to_body(hist).model_dump())


def histogram_from_model(model: ff.HistogramFile, base: Path | None = None) -> DelayHistogram:
    return histogram_from_body(model)


# ------------------------------------------------------------------
# Network
# ------------------------------------------------------------------

def network_to_model(network: NetworkGraph) -> ff.NetworkFile:
    links: list = []
    histograms: dict[str, ff.HistogramBody] = {}
    for port in sorted(network.links):
        lk = network.links[port]
        if isinstance(lk.kind, Ethernet):
            links.append(ff.EthernetLinkModel(
                src=lk.src, dst=lk.dst, rate_bits_per_s=lk.kind.rate_bits_per_s,
                prop_delay_ns=lk.kind.prop_delay, proc_delay_ns=lk.kind.proc_delay,
            ))
        else:
            links.append(ff.WirelessLinkModel(src=lk.src, dst=lk.dst, histogram=lk.kind.histogram_ref))
            if lk.kind.histogram is not None:
                histograms[lk.kind.histogram_ref] = histogram_to_body(lk.kind.histogram)
    return ff.NetworkFile(
        nodes=[ff.NodeModel(id=n, role=r.value) for n, r in network.nodes.items()],
        links=links,
        histograms=dict(sorted(histograms.items())),
        queues_per_port=network.queues_per_port,
    )


def network_from_model(
    model: ff.NetworkFile,
    base: Path | None = None,
    load_histogram: Callable[[Path], DelayHistogram] | None = None,
) -> NetworkGraph:
    histograms = {ref: histogram_from_body(body) for ref, body in model.histograms.items()}
    for ref, rel_path in model.histogram_files.items():
        if load_histogram is None:
            raise ValueError(f"Histogram {ref!r} refers to a file but no loader was given")
        path = Path(rel_path)
        histograms[ref] = load_histogram(path if path.is_absolute() or base is None else base / path)
    links = []
    for lm in model.links:
        if isinstance(lm, ff.EthernetLinkModel):
            kind = Ethernet(lm.rate_bits_per_s, lm.prop_delay_ns, lm.proc_delay_ns)
        else:
            kind = Wireless(lm.histogram)
        links.append(Link(lm.src, lm.dst, kind))
    return build_network(NetworkDescription(
        nodes=tuple((n.id, NodeRole(n.role)) for n in model.nodes),
        links=tuple(links),
        histograms=histograms,
        queues_per_port=model.queues_per_port,
    ))


# ------------------------------------------------------------------
# Streams
# ------------------------------------------------------------------

def stream_to_model(s: Stream) -> ff.StreamModel:
    return ff.StreamModel(
        id=s.id, path=list(s.path), period_ns=s.period, phase_ns=s.phase, size_bytes=s.size_bytes,
        latency_bound_ns=s.latency_bound, jitter_bound_ns=s.jitter_bound,
        reliability=str(s.reliability), priority=s.priority,
    )


def stream_from_model(m: ff.StreamModel) -> Stream:
    return Stream(
        id=m.id, path=tuple(m.path), period=m.period_ns, phase=m.phase_ns, size_bytes=m.size_bytes,
        latency_bound=m.latency_bound_ns, jitter_bound=m.jitter_bound_ns,
        reliability=Fraction(m.reliability), priority=m.priority,
    )


def streams_to_model(streams: list[Stream]) -> ff.StreamsFile:
    return ff.StreamsFile(streams=[stream_to_model(s) for s in streams])


def streams_from_model(model: ff.StreamsFile, base: Path | None = None) -> list[Stream]:
    return [stream_from_model(m) for m in model.streams]


# ------------------------------------------------------------------
# Configuration
# ------------------------------------------------------------------

def config_to_model(config: TsnConfiguration) -> ff.ConfigurationFile:
    gcl = [
        ff.GclEntry(
            src=port[0], dst=port[1],
            windows=[(w.open, w.close) for w in config.gcl[port]],
            batch_starts=list(config.schedule.starts.get(port, [])),
        )
        for port in sorted(config.gcl)
    ]
    pdbs = [
        ff.PdbEntry(
            src=port[0], dst=port[1], stream=sid, dmin_ns=p.dmin, dmax_ns=p.dmax,
            mass=str(p.achieved_mass),
        )
        for (port, sid), p in sorted(config.pdbs.items())
    ]
    frame_starts = [
        ff.FrameStartEntry(
            src=port[0], dst=port[1], stream=f.stream_id, index=f.index, release_ns=f.release,
            smin_ns=iv.lo, smax_ns=iv.hi,
        )
        for (port, f), iv in sorted(config.schedule.frame_starts.items())
    ]
    psfp = [
        ff.PsfpEntry(
            node=node, stream=f.stream_id, index=f.index, release_ns=f.release, lo_ns=iv.lo, hi_ns=iv.hi,
        )
        for (node, f), iv in sorted(config.psfp.items())
    ]
    return ff.ConfigurationFile(
        hypercycle_ns=config.hypercycle,
        mode=config.mode,
        policing_enabled=config.policing_enabled,
        seed=config.seed,
        accepted=list(config.accepted),
        rejected=dict(sorted(config.rejected.items())),
        gcl=gcl,
        pdbs=pdbs,
        frame_starts=frame_starts,
        psfp=psfp,
    )


def config_from_model(model: ff.ConfigurationFile, base: Path | None = None) -> TsnConfiguration:
    schedule = ScheduleTable()
    gcl = {}
    for e in model.gcl:
        port = (e.src, e.dst)
        gcl[port] = [GateWindow(o, c) for o, c in e.windows]
        if e.batch_starts:
            schedule.starts[port] = list(e.batch_starts)
    for e in model.frame_starts:
        fi = FrameInstance(e.stream, e.index, e.release_ns)
        schedule.frame_starts[((e.src, e.dst), fi)] = Interval(e.smin_ns, e.smax_ns)
    return TsnConfiguration(
        hypercycle=model.hypercycle_ns,
        gcl=gcl,
        psfp={
            (e.node, FrameInstance(e.stream, e.index, e.release_ns)): Interval(e.lo_ns, e.hi_ns)
            for e in model.psfp
        },
        pdbs={
            ((e.src, e.dst), e.stream): Pdb(Interval(e.dmin_ns, e.dmax_ns), Fraction(e.mass))
            for e in model.pdbs
        },
        schedule=schedule,
        mode=model.mode,
        policing_enabled=model.policing_enabled,
        seed=model.seed,
        accepted=list(model.accepted),
        rejected=dict(model.rejected),
    )


# ------------------------------------------------------------------
# Trace
# ------------------------------------------------------------------

def trace_to_model(trace: Trace) -> ff.TraceFile:
    return ff.TraceFile(
        hypercycle_ns=trace.hypercycle,
        n_cycles=trace.n_cycles,
        seed=trace.seed,
        records=[
            ff.TraceRecordModel(
                src=r.port[0], dst=r.port[1], stream=r.frame.stream_id, index=r.frame.index,
                cycle=r.frame.cycle, hop=r.hop, ready_ns=r.ready, tx_offset_ns=r.tx_offset,
                delay_ns=r.delay, effective_delay_ns=r.effective_delay, raw_delay_ns=r.raw_delay,
                drop=r.drop.value, drop_node=r.drop_node, seq=r.seq,
            )
            for r in trace.records
        ],
    )


def trace_from_model(model: ff.TraceFile, base: Path | None = None) -> Trace:
    return Trace(
        hypercycle=model.hypercycle_ns,
        n_cycles=model.n_cycles,
        seed=model.seed,
        records=[
            TraceRecord(
                port=(m.src, m.dst),
                frame=FrameKey(m.stream, m.index, m.cycle),
                hop=m.hop,
                ready=m.ready_ns,
                tx_offset=m.tx_offset_ns,
                delay=m.delay_ns,
                effective_delay=m.effective_delay_ns,
                raw_delay=m.raw_delay_ns,
                drop=DropEvent(m.drop),
                drop_node=m.drop_node,
                seq=m.seq,
            )
            for m in model.records
        ],
    )


# ------------------------------------------------------------------
# QoS report
# ------------------------------------------------------------------

def qos_to_model(report: QosReport) -> ff.QosReportFile:
    return ff.QosReportFile(
        hypercycle_ns=report.hypercycle,
        n_cycles=report.n_cycles,
        seed=report.seed,
        streams=[
            ff.StreamQosModel(
                id=sid,
                released=t.released,
                delivered=t.delivered,
                late=t.late,
                psfp_drops=t.psfp_drops,
                transit_drops=t.transit_drops,
                in_flight=t.in_flight,
                excluded=t.excluded,
                window_misses=t.window_misses,
                latency_min_ns=t.latency_min,
                latency_max_ns=t.latency_max,
                latency_sum_ns=t.latency_sum,
                delivered_min_ns=t.delivered_min,
                delivered_max_ns=t.delivered_max,
                delivered_fraction=t.delivered_fraction,
                reliability_halfwidth=t.reliability_halfwidth,
                latency_mean_ns=t.latency_mean,
                observed_jitter_ns=t.observed_jitter,
            )
            for sid, t in sorted(report.streams.items())
        ],
    )


def qos_from_model(model: ff.QosReportFile, base: Path | None = None) -> QosReport:
    report = QosReport(model.hypercycle_ns, model.n_cycles, model.seed)
    for m in model.streams:
        report.streams[m.id] = StreamTally(
            released=m.released,
            delivered=m.delivered,
            late=m.late,
            psfp_drops=m.psfp_drops,
            transit_drops=m.transit_drops,
            in_flight=m.in_flight,
            excluded=m.excluded,
            window_misses=m.window_misses,
            latency_min=m.latency_min_ns,
            latency_max=m.latency_max_ns,
            latency_sum=m.latency_sum_ns,
            delivered_min=m.delivered_min_ns,
            delivered_max=m.delivered_max_ns,
        )
    return report


# ------------------------------------------------------------------
# Scenario and experiment reports
# ------------------------------------------------------------------

def scenario_to_body(spec: ScenarioSpec) -> ff.ScenarioBody:
    t = spec.topology
    return ff.ScenarioBody(
        name=spec.name,
        topology=ff.TopologyModel(
            agv_end_stations=t.agv_end_stations, backbone_depth=t.backbone_depth,
            stations_per_leaf=t.stations_per_leaf, rate_bits_per_s=t.rate_bits_per_s,
            prop_delay_ns=t.prop_delay, proc_delay_ns=t.proc_delay,
        ),
        wired=[
            ff.WiredClassModel(
                label=c.label, count=c.count, partition=c.partition.value, period_ns=c.period,
                latency_bound_ns=c.latency_bound, jitter_bound_ns=c.jitter_bound, size_bytes=c.size_bytes,
            )
            for c in spec.wired
        ],
        wireless=[
            ff.WirelessClassModel(
                label=c.label, count=c.count, direction=c.direction.value,
                reliability=str(c.reliability), period_ns=c.period, latency_bound_ns=c.latency_bound,
                jitter_bound_ns=c.jitter_bound, size_bytes=c.size_bytes, tracked=c.tracked,
            )
            for c in spec.wireless
        ],
        reliability_grid=[str(r) for r in spec.reliability_grid],
        jitter_grid_ns=list(spec.jitter_grid),
        jitter_sweep_reliabilities=[str(r) for r in spec.jitter_sweep_reliabilities],
        seed=spec.seed,
        replications=spec.replications,
        n_cycles=spec.n_cycles,
        workers=spec.workers,
    )


def scenario_from_body(body: ff.ScenarioBody) -> ScenarioSpec:
    t = body.topology
    return ScenarioSpec(
        name=body.name,
        topology=AgvTopologyParams(
            t.agv_end_stations, t.backbone_depth, t.stations_per_leaf,
            t.rate_bits_per_s, t.prop_delay_ns, t.proc_delay_ns,
        ),
        wired=tuple(
            WiredClass(
                c.label, c.count, Partition(c.partition), c.period_ns,
                c.latency_bound_ns, c.jitter_bound_ns, c.size_bytes,
            )
            for c in body.wired
        ),
        wireless=tuple(
            WirelessClass(
                c.label, c.count, Direction(c.direction), Fraction(c.reliability), c.period_ns,
                c.latency_bound_ns, c.jitter_bound_ns, c.size_bytes, c.tracked,
            )
            for c in body.wireless
        ),
        reliability_grid=tuple(Fraction(r) for r in body.reliability_grid),
        jitter_grid=tuple(body.jitter_grid_ns),
        jitter_sweep_reliabilities=tuple(Fraction(r) for r in body.jitter_sweep_reliabilities),
        seed=body.seed,
        replications=body.replications,
        n_cycles=body.n_cycles,
        workers=body.workers,
    )


def scenario_to_model(spec: ScenarioSpec) -> ff.ScenarioFile:
    return ff.ScenarioFile(**scenario_to_body(spec).model_dump())


def scenario_from_model(model: ff.ScenarioFile, base: Path | None = None) -> ScenarioSpec:
    return scenario_from_body(model)


def reliability_report_to_model(report: ReliabilityReport) -> ff.ReliabilityReportFile:
    return ff.ReliabilityReportFile(
        scenario=scenario_to_body(report.spec),
        tracked=list(report.tracked),
        rows=report.rows(),
        outcomes=[
            ff.ModeOutcomeModel(
                mode=o.mode, accepted=list(o.accepted), rejected=dict(sorted(o.rejected.items())),
                qos=qos_to_model(o.qos),
            )
            for o in report.outcomes
        ],
    )


def scalability_report_to_model(report: ScalabilityReport) -> ff.ScalabilityReportFile:
    return ff.ScalabilityReportFile(
        scenario=scenario_to_body(report.spec),
        rows=[
            ff.ScalabilityRowModel(
                replication=r.replication, reliability=str(r.point.reliability),
                jitter_bound_ns=r.point.jitter_bound, fips_accepted=r.fips_accepted,
                sti_accepted=r.sti_accepted,
            )
            for r in report.rows
        ],
        averages=[
            ff.ScalabilityAverageModel(
                reliability=str(p.reliability), jitter_bound_ns=p.jitter_bound,
                fips_mean=fips, sti_mean=sti, ratio=fips / sti if sti else None,
            )
            for p, fips, sti in report.averages()
        ],
        trend_breaks=report.trend_breaks(),
    )


def scalability_report_from_model(model: ff.ScalabilityReportFile, base: Path | None = None) -> ScalabilityReport:
    report = ScalabilityReport(scenario_from_body(model.scenario))
    report.rows = [
        ScalabilityRow(
            r.replication, GridPoint(Fraction(r.reliability), r.jitter_bound_ns),
            r.fips_accepted, r.sti_accepted,
        )
        for r in model.rows
    ]
    return report
