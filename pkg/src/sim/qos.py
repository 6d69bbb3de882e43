"""
Quality-of-service bookkeeping.

Every released frame ends in exactly one outcome:

    delivered   reached the listener within its latency bound
    late        reached the listener after its latency bound
    dropped     policed away (PSFP or in transit)
    in flight   still in the network when the simulation stopped

Frames still in flight that were released in the final hypercycle are
excluded from the reliability denominator; older ones count as lost.
Tallies merge by addition, so independent replications combine in any
order.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from core.stream import Stream, expand_frames
from core.timebase import TimeNs
from scheduler.configuration import TsnConfiguration
from sim.trace import DropEvent, Trace


@dataclass(slots=True)
class StreamTally:
    released: int = 0
    delivered: int = 0
    late: int = 0
    psfp_drops: int = 0
    transit_drops: int = 0
    in_flight: int = 0
    excluded: int = 0
    window_misses: int = 0
    latency_min: TimeNs | None = None
    latency_max: TimeNs | None = None
    latency_sum: int = 0
    delivered_min: TimeNs | None = None
    delivered_max: TimeNs | None = None

    @property
    def arrived(self) -> int:
        return self.delivered + self.late

    @property
    def dropped(self) -> int:
        return self.psfp_drops + self.transit_drops

    @property
    def denominator(self) -> int:
        return self.released - self.excluded

    @property
    def delivered_fraction(self) -> float:
        return self.delivered / self.denominator if self.denominator else 1.0

    @property
    def reliability_halfwidth(self) -> float:
        """Three binomial standard deviations of ``delivered_fraction``."""
        n = self.denominator
        if not n:
            return 0.0
        p = self.delivered_fraction
        return 3 * math.sqrt(p * (1 - p) / n)

    @property
    def latency_mean(self) -> float | None:
        return self.latency_sum / self.arrived if self.arrived else None

    @property
    def observed_jitter(self) -> TimeNs:
        if self.delivered_min is None or self.delivered_max is None:
            return 0
        return self.delivered_max - self.delivered_min

    @property
    def drop_breakdown(self) -> dict[str, int]:
        return {
            DropEvent.PSFP_DROP.value: self.psfp_drops,
            DropEvent.TRANSIT_DROP.value: self.transit_drops,
            "late": self.late,
            "in_flight": self.in_flight,
        }

    def merge(self, other: StreamTally) -> StreamTally:
        return StreamTally(
            released=self.released + other.released,
            delivered=self.delivered + other.delivered,
            late=self.late + other.late,
            psfp_drops=self.psfp_drops + other.psfp_drops,
            transit_drops=self.transit_drops + other.transit_drops,
            in_flight=self.in_flight + other.in_flight,
            excluded=self.excluded + other.excluded,
            window_misses=self.window_misses + other.window_misses,
            latency_min=_opt(min, self.latency_min, other.latency_min),
            latency_max=_opt(max, self.latency_max, other.latency_max),
            latency_sum=self.latency_sum + other.latency_sum,
            delivered_min=_opt(min, self.delivered_min, other.delivered_min),
            delivered_max=_opt(max, self.delivered_max, other.delivered_max),
        )


def _opt(fn, a, b):
    if a is None:
        return b
    if b is None:
        return a
    return fn(a, b)


@dataclass(slots=True)
class QosReport:
    hypercycle: TimeNs
    n_cycles: int
    seed: int | None = None
    streams: dict[str, StreamTally] = field(default_factory=dict)

    def tally(self, stream_id: str) -> StreamTally:
        t = self.streams.get(stream_id)
        if t is None:
            t = self.streams[stream_id] = StreamTally()
        return t

    @property
    def psfp_drops(self) -> int:
        return sum(t.psfp_drops for t in self.streams.values())

    def merge(self, other: QosReport) -> QosReport:
        """Combine two replications of the same configuration."""
        if other.hypercycle != self.hypercycle:
            raise ValueError("Cannot merge reports of different hypercycles")
        merged = QosReport(self.hypercycle, self.n_cycles + other.n_cycles, self.seed)
        for sid in sorted(set(self.streams) | set(other.streams)):
            merged.streams[sid] = self.tally(sid).merge(other.tally(sid))
        return merged


class QosAccumulator:
    """Feeds frame outcomes into a ``QosReport``."""

    def __init__(self, streams: Iterable[Stream], hypercycle: TimeNs, n_cycles: int, seed: int | None):
        self.report = QosReport(hypercycle, n_cycles, seed)
        self._streams = {s.id: s for s in streams}
        for sid in sorted(self._streams):
            self.report.tally(sid)

    def released(self, stream_id: str, count: int = 1) -> None:
        self.report.tally(stream_id).released += count

    def arrived(self, stream_id: str, latency: TimeNs, in_window: bool = True) -> None:
        t = self.report.tally(stream_id)
        t.latency_min = latency if t.latency_min is None else min(t.latency_min, latency)
        t.latency_max = latency if t.latency_max is None else max(t.latency_max, latency)
        t.latency_sum += latency
        if not in_window:
            t.window_misses += 1
        if latency <= self._streams[stream_id].latency_bound:
            t.delivered += 1
            t.delivered_min = latency if t.delivered_min is None else min(t.delivered_min, latency)
            t.delivered_max = latency if t.delivered_max is None else max(t.delivered_max, latency)
        else:
            t.late += 1

    def dropped(self, stream_id: str, cause: DropEvent) -> None:
        t = self.report.tally(stream_id)
        if cause is DropEvent.TRANSIT_DROP:
            t.transit_drops += 1
        else:
            t.psfp_drops += 1

    def in_flight(self, stream_id: str, final_cycle: bool) -> None:
        t = self.report.tally(stream_id)
        t.in_flight += 1
        if final_cycle:
            t.excluded += 1


def measure_qos(
    traces: Sequence[Trace],
    streams: Sequence[Stream],
    config: TsnConfiguration | None = None,
) -> QosReport:
    """Aggregate one or more traces of the same configuration.

    With ``config``, arrivals outside the listener's PSFP window are
    counted as window misses.
    """
    if not traces:
        raise ValueError("measure_qos needs at least one trace")
    by_id = {s.id: s for s in streams}
    report: QosReport | None = None
    for trace in traces:
        acc = QosAccumulator(streams, trace.hypercycle, trace.n_cycles, trace.seed)
        frames = {s.id: expand_frames(s, trace.hypercycle) for s in streams}
        seen: dict[str, set] = defaultdict(set)
        for key, recs in trace.by_frame().items():
            stream = by_id.get(key.stream_id)
            if stream is None:
                continue
            seen[key.stream_id].add((key.index, key.cycle))
            release = key.cycle * trace.hypercycle + stream.phase + key.index * stream.period
            drop = next((r for r in recs if r.drop in (DropEvent.PSFP_DROP, DropEvent.TRANSIT_DROP)), None)
            last = recs[-1]
            if drop is not None:
                acc.dropped(key.stream_id, drop.drop)
            elif last.hop == len(stream.ports) - 1 and last.arrival is not None:
                window = config.psfp.get((stream.listener, frames[key.stream_id][key.index])) if config else None
                in_window = window is None or window.contains(last.arrival - key.cycle * trace.hypercycle)
                acc.arrived(key.stream_id, last.arrival - release, in_window)
            else:
                acc.in_flight(key.stream_id, key.cycle == trace.n_cycles - 1)

        for stream in streams:
            per_cycle = trace.hypercycle // stream.period
            acc.released(stream.id, per_cycle * trace.n_cycles)
            for cycle in range(trace.n_cycles):
                for index in range(per_cycle):
                    if (index, cycle) not in seen[stream.id]:
                        acc.in_flight(stream.id, cycle == trace.n_cycles - 1)

        report = acc.report if report is None else report.merge(acc.report)
    assert report is not None
    return report
