"""
Execution-sequence traces.

One ``TraceRecord`` per (port, frame instance) that the simulation got
to decide on: the transmission offset ``T`` and the delay ``D`` (``None``
stands for ∞, i.e. never transmitted / dropped in transit), the
effective delay ``eD`` used for occupancy accounting, and the drop that
ended the frame, if any.  ``ready`` is when the frame entered the
port's queue and ``seq`` the position in the port's transmission order,
which breaks ties between concurrent 5G transmissions.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from core.network import NodeId, Port
from core.timebase import TimeNs


class DropEvent(Enum):
    NONE = "none"
    TRANSIT_DROP = "transit_drop"
    PSFP_DROP = "psfp_drop"
    NEVER_SENT = "never_sent"


@dataclass(frozen=True, slots=True, order=True)
class FrameKey:
    """A frame instance in a given hypercycle."""
    stream_id: str
    index: int
    cycle: int

    def __str__(self) -> str:
        return f"{self.stream_id}#{self.index}@{self.cycle}"


@dataclass(frozen=True, slots=True)
class TraceRecord:
    port: Port
    frame: FrameKey
    hop: int
    ready: TimeNs | None
    tx_offset: TimeNs | None
    delay: TimeNs | None
    effective_delay: TimeNs | None
    raw_delay: TimeNs | None = None
    drop: DropEvent = DropEvent.NONE
    drop_node: NodeId | None = None
    seq: int = -1

    @property
    def arrival(self) -> TimeNs | None:
        if self.tx_offset is None or self.delay is None:
            return None
        return self.tx_offset + self.delay


@dataclass(slots=True)
class Trace:
    hypercycle: TimeNs
    n_cycles: int
    seed: int | None = None
    records: list[TraceRecord] = field(default_factory=list)

    def append(self, record: TraceRecord) -> None:
        self.records.append(record)

    def __iter__(self) -> Iterator[TraceRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def by_port(self) -> dict[Port, list[TraceRecord]]:
        out: dict[Port, list[TraceRecord]] = defaultdict(list)
        for r in self.records:
            out[r.port].append(r)
        return out

    def by_frame(self) -> dict[FrameKey, list[TraceRecord]]:
        """Records of each frame, ordered by hop."""
        out: dict[FrameKey, list[TraceRecord]] = defaultdict(list)
        for r in self.records:
            out[r.frame].append(r)
        for recs in out.values():
            recs.sort(key=lambda r: r.hop)
        return out
