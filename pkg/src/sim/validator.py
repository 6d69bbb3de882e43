"""
Trace validation against the execution-sequence rules.

Each rule is checked pointwise and reported as a ``Violation``; an empty
list means the trace is a valid execution of the configuration.  Rules
that depend on policing (transmission policing and PSFP) are skipped for
configurations that do not enforce it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import groupby
from enum import Enum
from typing import Sequence

from core.network import NetworkGraph, Port
from core.stream import FrameInstance, Stream, expand_frames
from core.timebase import TimeNs
from scheduler.configuration import TsnConfiguration
from sim.gates import GateSchedule
from sim.trace import FrameKey, Trace, TraceRecord

logger = logging.getLogger(__name__)


class Constraint(Enum):
    TRANSMISSION_CONSISTENCY = "TransmissionConsistency"
    SEQUENTIAL_TRANSMISSION = "SequentialTransmission"
    ISOCHRONOUS_TALKER = "IsochronousTalker"
    FIFO = "FIFO"
    GCL_ENCAPSULATION = "GCL-Encapsulation"
    GCL_PROGRESS = "GCL-Progress"
    TRANSMISSION_POLICING = "TransmissionPolicing"
    PSFP = "PSFP"
    POLICING_CONSISTENCY = "PolicingConsistency"


@dataclass(frozen=True, slots=True)
class Violation:
    constraint: Constraint
    port: Port
    frame: FrameKey
    times: tuple[TimeNs | None, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.constraint.value} at {self.port[0]}->{self.port[1]} for {self.frame}: {self.detail}"


class _Checker:
    def __init__(
        self,
        trace: Trace,
        config: TsnConfiguration,
        network: NetworkGraph,
        streams: Sequence[Stream],
    ):
        self.trace = trace
        self.config = config
        self.network = network
        self.h = config.hypercycle
        present = {r.frame.stream_id for r in trace.records}
        present |= {f.stream_id for (_, f) in config.schedule.frame_starts}
        self.streams = {s.id: s for s in streams if s.id in present}
        self.frames = {sid: expand_frames(s, self.h) for sid, s in self.streams.items()}
        self.gates = {
            port: GateSchedule(windows, self.h) for port, windows in config.gcl.items()
        }
        self.out: list[Violation] = []

    def flag(self, c: Constraint, r: TraceRecord, detail: str, *times: TimeNs | None) -> None:
        self.out.append(Violation(c, r.port, r.frame, tuple(times), detail))

    def instance(self, r: TraceRecord) -> tuple[Stream, FrameInstance]:
        stream = self.streams[r.frame.stream_id]
        return stream, self.frames[stream.id][r.frame.index]

    def serialization(self, r: TraceRecord) -> TimeNs:
        stream = self.streams[r.frame.stream_id]
        return self.network.link(r.port).serialization(stream.size_bytes)

    def run(self) -> list[Violation]:
        by_frame = self.trace.by_frame()
        for key, recs in by_frame.items():
            if key.stream_id not in self.streams:
                continue
            self.check_frame(recs)
        self.check_complete(by_frame)
        for port, recs in self.trace.by_port().items():
            self.check_port(port, recs)
        return self.out

    # -- per frame --------------------------------------------------------

    def check_frame(self, recs: list[TraceRecord]) -> None:
        policing = self.config.policing_enabled
        for i, r in enumerate(recs):
            stream, fi = self.instance(r)
            offset = r.frame.cycle * self.h
            nxt = recs[i + 1] if i + 1 < len(recs) and recs[i + 1].hop == r.hop + 1 else None

            if r.tx_offset is None and r.delay is not None:
                self.flag(Constraint.POLICING_CONSISTENCY, r, "delay recorded for an untransmitted frame", r.delay)
            if nxt is not None and nxt.tx_offset is not None and (r.tx_offset is None or r.delay is None):
                self.flag(
                    Constraint.POLICING_CONSISTENCY, nxt,
                    "frame transmitted again after being dropped", nxt.tx_offset,
                )

            if r.tx_offset is None:
                if r.hop == 0:
                    self.flag(Constraint.ISOCHRONOUS_TALKER, r, "talker never transmitted")
                continue

            if r.hop == 0:
                window = self.config.schedule.frame_starts.get((r.port, fi))
                if window is None or not window.shifted(offset).contains(r.tx_offset):
                    self.flag(
                        Constraint.ISOCHRONOUS_TALKER, r,
                        f"talker started outside its configured offset {window}", r.tx_offset,
                    )

            gate = self.gates.get(r.port)
            if gate is None or not gate.admits(r.tx_offset, self.serialization(r)):
                self.flag(
                    Constraint.GCL_ENCAPSULATION, r,
                    "transmission not contained in an open window", r.tx_offset,
                )

            if nxt is not None and nxt.tx_offset is not None and r.delay is not None:
                if r.tx_offset + r.delay > nxt.tx_offset:
                    self.flag(
                        Constraint.SEQUENTIAL_TRANSMISSION, nxt,
                        "next hop started before the frame was received",
                        r.tx_offset, r.delay, nxt.tx_offset,
                    )

            if not policing:
                continue
            pdb = self.config.pdbs.get((r.port, stream.id))
            if pdb is None:
                continue
            measured = r.raw_delay if r.raw_delay is not None else r.delay
            if r.delay is not None and r.delay > pdb.dmax:
                self.flag(
                    Constraint.TRANSMISSION_POLICING, r,
                    f"delay above the budget maximum {pdb.dmax} was not policed", r.delay,
                )
            if r.delay is None and measured is not None and measured <= pdb.dmax:
                self.flag(
                    Constraint.TRANSMISSION_POLICING, r,
                    "frame discarded although its delay was within budget", measured,
                )
            expected_ed = pdb.dmax if r.delay is None else r.delay
            if r.effective_delay != expected_ed:
                self.flag(
                    Constraint.TRANSMISSION_POLICING, r,
                    f"effective delay {r.effective_delay} should be {expected_ed}", r.effective_delay,
                )

            if r.hop == len(stream.ports) - 1 or nxt is None:
                continue
            window = self.config.psfp.get((r.port[1], fi))
            if window is None:
                continue
            arrival = r.arrival
            outside = arrival is None or not window.shifted(offset).contains(arrival)
            if outside and nxt.tx_offset is not None:
                self.flag(Constraint.PSFP, nxt, f"arrival {arrival} outside {window} was forwarded", arrival)
            if not outside and nxt.tx_offset is None:
                self.flag(Constraint.PSFP, nxt, f"arrival {arrival} inside {window} was dropped", arrival)

    def check_complete(self, by_frame: dict[FrameKey, list[TraceRecord]]) -> None:
        """Frames released before the final hypercycle have a record on every hop.

        A missing record means the frame sat in a queue whose gate never
        opened long enough for it.
        """
        for cycle in range(self.trace.n_cycles - 1):
            for sid, stream in self.streams.items():
                for fi in self.frames[sid]:
                    key = FrameKey(sid, fi.index, cycle)
                    hops = {r.hop for r in by_frame.get(key, ())}
                    missing = next((k for k in range(len(stream.ports)) if k not in hops), None)
                    if missing is not None:
                        self.out.append(Violation(
                            Constraint.GCL_ENCAPSULATION, stream.ports[missing], key, (),
                            "frame never left the queue",
                        ))

    # -- per port ---------------------------------------------------------

    def check_port(self, port: Port, recs: list[TraceRecord]) -> None:
        sent = sorted(
            (r for r in recs if r.tx_offset is not None and r.frame.stream_id in self.streams),
            key=lambda r: (r.tx_offset, r.seq),
        )
        wireless = self.network.link(port).is_wireless

        if not wireless:
            for a, b in zip(sent, sent[1:]):
                if a.tx_offset + self.serialization(a) > b.tx_offset:
                    self.flag(
                        Constraint.TRANSMISSION_CONSISTENCY, b,
                        f"overlaps the transmission of {a.frame}", a.tx_offset, b.tx_offset,
                    )

        # FIFO: anything received strictly earlier is sent earlier.
        queued = sorted((r for r in sent if r.ready is not None), key=lambda r: r.ready)
        earlier: tuple | None = None
        for _, group in groupby(queued, key=lambda r: r.ready):
            group = list(group)
            for r in group:
                if earlier is not None and earlier > (r.tx_offset, r.seq):
                    self.flag(Constraint.FIFO, r, "overtook a frame received earlier", r.ready, r.tx_offset)
            latest = max((r.tx_offset, r.seq) for r in group)
            earlier = latest if earlier is None else max(earlier, latest)

        gate = self.gates.get(port)
        if gate is None:
            return
        prev_end: TimeNs | None = None
        for r in sent:
            duration = self.serialization(r)
            if r.hop > 0 and r.ready is not None:
                e = r.ready if prev_end is None else max(r.ready, prev_end)
                first = gate.earliest_start(e, duration)
                if first is not None and first < r.tx_offset:
                    self.flag(
                        Constraint.GCL_PROGRESS, r,
                        f"could have started at {first} but waited", first, r.tx_offset,
                    )
            prev_end = r.tx_offset + (0 if wireless else duration)


def validate_trace(
    trace: Trace,
    config: TsnConfiguration,
    network: NetworkGraph,
    streams: Sequence[Stream],
) -> list[Violation]:
    violations = _Checker(trace, config, network, streams).run()
    if violations:
        logger.info("Trace has %d violations", len(violations))
    return violations
