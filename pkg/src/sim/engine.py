"""
Discrete-event Monte Carlo simulation of a TSN configuration.

Each egress port has one FIFO queue behind the gate schedule of its GCL.
Talkers hand their frames to the first port exactly at the configured
start offset; every other port receives a frame when it arrives from the
previous hop.  The head of a queue starts at the first instant a window
admits its whole transmission and blocks the queue until then.  Ethernet
ports serialize one frame at a time; the 5G port transmits every
eligible frame at once.

Events are totally ordered by ``(time, kind, node, port, cycle, stream,
index, seq)`` so that a run is a pure function of its seed; arrivals at
the same instant queue the older hypercycle first.

Usage::

    result = run_hypercycles(config, network, streams, n_cycles=1000, seed=7)
    result.report.tally("w0").delivered_fraction
"""
from __future__ import annotations

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Sequence

import numpy as np

from core.errors import ConfigMismatch
from core.network import NetworkGraph, Port
from core.stream import FrameInstance, Stream, expand_frames
from core.timebase import TimeNs
from scheduler.configuration import TsnConfiguration
from sim.gates import GateSchedule
from sim.qos import QosAccumulator, QosReport
from sim.sampling import sample_delay
from sim.trace import DropEvent, FrameKey, Trace, TraceRecord

logger = logging.getLogger(__name__)

# Slack after the last release cycle for frames still crossing the network.
DRAIN_CYCLES = 2


class EventKind(IntEnum):
    CYCLE = 0
    ARRIVAL = 1
    WAKE = 2


@dataclass(frozen=True, slots=True)
class SimulationOptions:
    n_cycles: int = 1
    seed: int = 0
    clip_to_pdb: bool = False
    collect_trace: bool = True


@dataclass(slots=True)
class SimulationResult:
    trace: Trace | None
    report: QosReport


@dataclass(slots=True)
class _Queued:
    key: FrameKey
    hop: int
    ready: TimeNs


@dataclass(slots=True)
class _PortState:
    gate: GateSchedule
    wireless: bool
    queue: deque = field(default_factory=deque)
    busy_until: TimeNs = 0
    wake_at: TimeNs | None = None
    seq: int = 0
    stuck: bool = False


class Simulator:
    """One replication of ``config`` over ``n_cycles`` hypercycles."""

    def __init__(
        self,
        config: TsnConfiguration,
        network: NetworkGraph,
        streams: Sequence[Stream],
        options: SimulationOptions,
    ):
        if options.n_cycles < 0:
            raise ValueError("n_cycles must be non-negative")
        self.config = config
        self.network = network
        self.options = options
        self.streams = _select_streams(config, network, streams)
        self.h = config.hypercycle
        self.rng = np.random.default_rng(options.seed)
        self.trace = Trace(self.h, options.n_cycles, options.seed) if options.collect_trace else None
        self.qos = QosAccumulator(self.streams.values(), self.h, options.n_cycles, options.seed)

        self._frames: dict[str, list[FrameInstance]] = {
            sid: expand_frames(s, self.h) for sid, s in self.streams.items()
        }
        used = {p for s in self.streams.values() for p in s.ports}
        self._ports: dict[Port, _PortState] = {
            p: _PortState(GateSchedule(config.gcl.get(p, ()), self.h), network.link(p).is_wireless)
            for p in sorted(used)
        }
        self._events: list[tuple] = []
        self._counter = 0
        self._live: set[FrameKey] = set()

    # -- event queue ------------------------------------------------------

    def _push(self, time: TimeNs, kind: EventKind, port: Port, key: FrameKey | None, payload=None) -> None:
        self._counter += 1
        sid, idx, cyc = (key.stream_id, key.index, key.cycle) if key else ("", 0, 0)
        heapq.heappush(
            self._events,
            (time, int(kind), port[0], port, cyc, sid, idx, self._counter, payload),
        )

    def run(self) -> SimulationResult:
        if self.h <= 0 or self.options.n_cycles == 0 or not self.streams:
            return SimulationResult(self.trace, self.qos.report)

        end = (self.options.n_cycles + DRAIN_CYCLES) * self.h
        self._push(0, EventKind.CYCLE, ("", ""), None, 0)
        while self._events:
            time, kind, _, port, *_rest, payload = heapq.heappop(self._events)
            if time > end:
                break
            if kind == EventKind.CYCLE:
                self._release_cycle(time, payload)
            elif kind == EventKind.ARRIVAL:
                self._ports[port].queue.append(payload)
                self._try_transmit(port, time)
            else:
                state = self._ports[port]
                if state.wake_at == time:
                    state.wake_at = None
                self._try_transmit(port, time)

        for key in sorted(self._live):
            self.qos.in_flight(key.stream_id, key.cycle == self.options.n_cycles - 1)
        report = self.qos.report
        if self.options.clip_to_pdb and report.psfp_drops:
            logger.warning("%d PSFP drops with delays clipped into their budgets", report.psfp_drops)
        logger.info(
            "Simulated %d hypercycles of %d streams (seed %s)",
            self.options.n_cycles, len(self.streams), self.options.seed,
        )
        return SimulationResult(self.trace, report)

    # -- handlers ---------------------------------------------------------

    def _release_cycle(self, now: TimeNs, cycle: int) -> None:
        for sid in sorted(self.streams):
            stream = self.streams[sid]
            talker_port = stream.ports[0]
            self.qos.released(sid, len(self._frames[sid]))
            for fi in self._frames[sid]:
                key = FrameKey(sid, fi.index, cycle)
                start = now + self.config.schedule.smin(talker_port, fi)
                self._live.add(key)
                self._push(start, EventKind.ARRIVAL, talker_port, key, _Queued(key, 0, start))
        if cycle + 1 < self.options.n_cycles:
            self._push(now + self.h, EventKind.CYCLE, ("", ""), None, cycle + 1)

    def _wake(self, port: Port, state: _PortState, t: TimeNs) -> None:
        if state.wake_at is None or t < state.wake_at:
            state.wake_at = t
            self._push(t, EventKind.WAKE, port, None)

    def _try_transmit(self, port: Port, now: TimeNs) -> None:
        state = self._ports[port]
        link = self.network.link(port)
        while state.queue:
            if now < state.busy_until:
                self._wake(port, state, state.busy_until)
                return
            head: _Queued = state.queue[0]
            stream = self.streams[head.key.stream_id]
            duration = link.serialization(stream.size_bytes)
            t = state.gate.earliest_start(max(now, head.ready), duration)
            if t is None:
                if not state.stuck:
                    logger.warning("No window at %s->%s fits %s; queue blocked", port[0], port[1], head.key)
                    state.stuck = True
                return
            if t > now:
                self._wake(port, state, t)
                return
            state.queue.popleft()
            self._transmit(port, state, head, stream, now)
            state.busy_until = now + duration

    def _transmit(self, port: Port, state: _PortState, item: _Queued, stream: Stream, now: TimeNs) -> None:
        key = item.key
        link = self.network.link(port)
        fi = self._frames[key.stream_id][key.index]
        pdb = self.config.pdb(port, fi)
        raw = sample_delay(link, stream, self.rng)
        if self.options.clip_to_pdb:
            raw = pdb.interval.clamp(raw)

        receiver = port[1]
        last_hop = item.hop == len(stream.ports) - 1
        policing = self.config.policing_enabled
        seq = state.seq
        state.seq += 1

        if link.is_wireless and policing and raw > pdb.dmax:
            self._record(TraceRecord(
                port, key, item.hop, item.ready, now, None, pdb.dmax,
                raw_delay=raw, drop=DropEvent.PSFP_DROP, drop_node=receiver, seq=seq,
            ))
            self._finish_dropped(stream, key, item.hop, DropEvent.PSFP_DROP)
            return

        arrival = now + raw
        offset = key.cycle * self.h
        if last_hop:
            self._record(TraceRecord(port, key, item.hop, item.ready, now, raw, raw, raw_delay=raw, seq=seq))
            window = self.config.psfp.get((receiver, fi))
            in_window = window is None or window.contains(arrival - offset)
            self.qos.arrived(key.stream_id, arrival - (offset + fi.release), in_window)
            self._live.discard(key)
            return

        if policing and not self.config.psfp[(receiver, fi)].contains(arrival - offset):
            self._record(TraceRecord(
                port, key, item.hop, item.ready, now, raw, raw,
                raw_delay=raw, drop=DropEvent.PSFP_DROP, drop_node=receiver, seq=seq,
            ))
            self._finish_dropped(stream, key, item.hop, DropEvent.PSFP_DROP)
            return

        self._record(TraceRecord(port, key, item.hop, item.ready, now, raw, raw, raw_delay=raw, seq=seq))
        nxt = stream.ports[item.hop + 1]
        self._push(arrival, EventKind.ARRIVAL, nxt, key, _Queued(key, item.hop + 1, arrival))

    def _finish_dropped(self, stream: Stream, key: FrameKey, hop: int, cause: DropEvent) -> None:
        for k in range(hop + 1, len(stream.ports)):
            self._record(TraceRecord(stream.ports[k], key, k, None, None, None, None, drop=DropEvent.NEVER_SENT))
        self.qos.dropped(key.stream_id, cause)
        self._live.discard(key)

    def _record(self, record: TraceRecord) -> None:
        if self.trace is not None:
            self.trace.append(record)


def _select_streams(
    config: TsnConfiguration, network: NetworkGraph, streams: Sequence[Stream],
) -> dict[str, Stream]:
    """Streams the configuration schedules, checked against the inputs."""
    by_id = {s.id: s for s in streams}
    scheduled = {f.stream_id for (_, f) in config.schedule.frame_starts}
    wanted = set(config.accepted) | scheduled
    missing = sorted(wanted - by_id.keys())
    if missing:
        raise ConfigMismatch(f"Configuration schedules unknown streams: {', '.join(missing)}")
    selected: dict[str, Stream] = {}
    for sid in sorted(wanted):
        stream = by_id[sid]
        if config.hypercycle <= 0 or config.hypercycle % stream.period:
            raise ConfigMismatch(
                f"Hypercycle {config.hypercycle} is not a multiple of the period of {sid!r}"
            )
        for port in stream.ports:
            if not network.has_port(port):
                raise ConfigMismatch(f"Stream {sid!r} uses {port[0]}->{port[1]}, absent from the network")
            if (port, sid) not in config.pdbs:
                raise ConfigMismatch(f"No delay budget for {sid!r} at {port[0]}->{port[1]}")
        for fi in expand_frames(stream, config.hypercycle):
            if (stream.ports[0], fi) not in config.schedule.frame_starts:
                raise ConfigMismatch(f"No start offset for {fi} at its talker")
        selected[sid] = stream
    return selected


def run_hypercycles(
    config: TsnConfiguration,
    network: NetworkGraph,
    streams: Sequence[Stream],
    n_cycles: int,
    seed: int,
    clip_to_pdb: bool = False,
    collect_trace: bool = True,
) -> SimulationResult:
    options = SimulationOptions(n_cycles, seed, clip_to_pdb, collect_trace)
    return Simulator(config, network, streams, options).run()
