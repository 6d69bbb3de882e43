"""
Transmission orderings: per egress port, the sequence of frame batches
``B1 ≺ B2 ≺ …`` sharing that port's scheduled queue within one hypercycle.

Admission of a stream touches the ordering twice:

    insert_frames     every frame becomes a singleton batch at each hop,
                      placed after the last batch that starts no later
                      than the frame's earliest possible transmission,
                      then pinned behind frames it follows on the
                      previous hop (FIFO consistency).
    merge_candidates  for wireless streams, the frame is additionally
                      offered to its neighbouring batches at the hop
                      that leaves the 5G bridge.

Orderings are copied per candidate; ``Batch`` objects are immutable and
shared between copies.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Sequence

from budgets import PdbTable
from core.network import NetworkGraph, Port
from core.stream import FrameInstance, Stream, expand_frames, wireless_hop
from core.timebase import TimeNs

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Batch:
    """Frames sharing one gate window; order is the Ethernet serialization order."""
    frames: tuple[FrameInstance, ...]

    def __post_init__(self):
        if not self.frames:
            raise ValueError("A batch holds at least one frame")

    def __iter__(self) -> Iterator[FrameInstance]:
        return iter(self.frames)

    def __len__(self) -> int:
        return len(self.frames)

    def __contains__(self, frame: object) -> bool:
        return frame in self.frames

    def with_frame(self, frame: FrameInstance, *, first: bool = False) -> Batch:
        return Batch((frame, *self.frames) if first else (*self.frames, frame))

    def without(self, frame: FrameInstance) -> Batch:
        return Batch(tuple(f for f in self.frames if f != frame))


class TransmissionOrdering:
    """Per-port batch sequences plus the routes of every scheduled stream."""

    def __init__(self):
        self._batches: dict[Port, list[Batch]] = {}
        self._routes: dict[str, tuple[Port, ...]] = {}
        self._index: dict[Port, dict[FrameInstance, int]] = {}

    def copy(self) -> TransmissionOrdering:
        other = TransmissionOrdering()
        other._batches = {p: list(bs) for p, bs in self._batches.items()}
        other._routes = dict(self._routes)
        return other

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def ports(self) -> list[Port]:
        return list(self._batches)

    def batches(self, port: Port) -> Sequence[Batch]:
        return self._batches.get(port, ())

    def route(self, stream_id: str) -> tuple[Port, ...]:
        return self._routes[stream_id]

    @property
    def stream_ids(self) -> list[str]:
        return list(self._routes)

    def batch_index(self, port: Port, frame: FrameInstance) -> int:
        """The position ``I([u,v], f)`` of the batch holding ``frame``."""
        idx = self._index.get(port)
        if idx is None:
            idx = {f: i for i, b in enumerate(self._batches.get(port, ())) for f in b}
            self._index[port] = idx
        return idx[frame]

    def batch_of(self, port: Port, frame: FrameInstance) -> Batch:
        return self._batches[port][self.batch_index(port, frame)]

    def next_port(self, frame: FrameInstance, port: Port) -> Port | None:
        route = self._routes[frame.stream_id]
        k = route.index(port)
        return route[k + 1] if k + 1 < len(route) else None

    def frames(self) -> set[FrameInstance]:
        return {f for bs in self._batches.values() for b in bs for f in b}

    # ------------------------------------------------------------------
    # Mutation (only on private copies)
    # ------------------------------------------------------------------

    def add_route(self, stream_id: str, route: tuple[Port, ...]) -> None:
        self._routes[stream_id] = route

    def insert(self, port: Port, position: int, batch: Batch) -> None:
        self._batches.setdefault(port, []).insert(position, batch)
        self._index.pop(port, None)

    def replace(self, port: Port, position: int, batch: Batch) -> None:
        self._batches[port][position] = batch
        self._index.pop(port, None)

    def remove(self, port: Port, position: int) -> None:
        del self._batches[port][position]
        self._index.pop(port, None)

    def move_into(self, port: Port, frame: FrameInstance, target: int) -> None:
        """Dissolve ``frame``'s singleton batch into the batch at ``target``."""
        own = self.batch_index(port, frame)
        if len(self._batches[port][own]) != 1:
            raise ValueError(f"{frame} is not in a singleton batch at {port}")
        merged = self._batches[port][target].with_frame(frame, first=target > own)
        self.replace(port, target, merged)
        self.remove(port, own)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransmissionOrdering):
            return NotImplemented
        return self._batches == other._batches and self._routes == other._routes


# ------------------------------------------------------------------
# Insertion
# ------------------------------------------------------------------

def phi_lower_bound(
    stream: Stream, frame: FrameInstance, k: int, pdbs: PdbTable,
) -> TimeNs:
    """Earliest possible transmission of ``frame`` at its ``k``-th hop (1-based)."""
    if not 1 <= k < len(stream.path):
        raise ValueError(f"Hop {k} outside 1..{len(stream.path) - 1} for stream {stream.id!r}")
    return frame.release + sum(pdbs[(p, stream.id)].dmax for p in stream.ports[: k - 1])


def insert_frames(
    ordering: TransmissionOrdering,
    stream: Stream,
    pdbs: PdbTable,
    previous_starts: Mapping[tuple[Port, FrameInstance], TimeNs],
    hypercycle: TimeNs,
) -> TransmissionOrdering:
    """Return a copy of ``ordering`` with every frame of ``stream`` inserted.

    ``previous_starts`` holds the transmission start of every already
    scheduled frame (``Smin``) from the previous admission round.
    """
    result = ordering.copy()
    route = stream.ports
    result.add_route(stream.id, route)
    # estimated starts of the frames inserted in this call
    fresh: dict[tuple[Port, FrameInstance], TimeNs] = {}

    def estimate(port: Port, batch: Batch) -> TimeNs | None:
        for f in batch:
            t = previous_starts.get((port, f))
            if t is None:
                t = fresh.get((port, f))
            if t is not None:
                return t
        return None

    for frame in expand_frames(stream, hypercycle):
        position_prev: int | None = None
        for k, port in enumerate(route):
            phi = phi_lower_bound(stream, frame, k + 1, pdbs)
            batches = result.batches(port)

            # after the last batch starting no later than phi
            pos = 0
            for i, b in enumerate(batches):
                s = estimate(port, b)
                if s is not None and s <= phi:
                    pos = i + 1

            if position_prev is not None:
                lo, hi = _fifo_bounds(result, route[k - 1], position_prev, port)
                pos = max(lo, min(pos, hi))

            result.insert(port, pos, Batch((frame,)))
            fresh[(port, frame)] = phi
            position_prev = pos

    logger.debug("Inserted %s into %d ports", stream.id, len(route))
    return result


def _fifo_bounds(
    ordering: TransmissionOrdering, prev_port: Port, prev_pos: int, port: Port,
) -> tuple[int, int]:
    """Admissible insert positions at ``port`` for a frame sitting at
    ``prev_pos`` on ``prev_port``.

    Frames ahead of it on ``prev_port`` that continue to ``port`` must
    stay ahead; frames behind it must stay behind.  When both cannot hold
    the lower bound wins, i.e. already accepted frames keep precedence.
    """
    lo, hi = 0, len(ordering.batches(port))
    for i, batch in enumerate(ordering.batches(prev_port)):
        if i == prev_pos:
            continue
        for f in batch:
            if ordering.next_port(f, prev_port) != port:
                continue
            j = ordering.batch_index(port, f)
            if i < prev_pos:
                lo = max(lo, j + 1)
            else:
                hi = min(hi, j)
    return lo, hi


# ------------------------------------------------------------------
# Merging
# ------------------------------------------------------------------

class MergeKind(Enum):
    NONE = "none"
    PREDECESSOR = "predecessor"
    SUCCESSOR = "successor"


@dataclass(frozen=True, slots=True)
class MergeCandidate:
    kind: MergeKind
    ordering: TransmissionOrdering


def merge_candidates(
    ordering: TransmissionOrdering, stream: Stream, network: NetworkGraph,
) -> list[MergeCandidate]:
    """Unmerged ordering first, then merges with the predecessor and the
    successor batch at the hop leaving the 5G bridge.

    Wired streams, and wireless streams whose 5G link is their last hop,
    only get the unmerged candidate.
    """
    candidates = [MergeCandidate(MergeKind.NONE, ordering)]
    w = wireless_hop(stream, network)
    if w is None or w + 1 >= len(stream.ports):
        return candidates

    port = stream.ports[w + 1]
    frames = [f for b in ordering.batches(port) for f in b if f.stream_id == stream.id]
    for kind, step in ((MergeKind.PREDECESSOR, -1), (MergeKind.SUCCESSOR, 1)):
        merged = _merge_all(ordering, stream, frames, port, step)
        if merged is not None:
            candidates.append(MergeCandidate(kind, merged))
    return candidates


def _merge_all(
    ordering: TransmissionOrdering,
    stream: Stream,
    frames: list[FrameInstance],
    port: Port,
    step: int,
) -> TransmissionOrdering | None:
    result = ordering.copy()
    for frame in frames:
        own = result.batch_index(port, frame)
        target = own + step
        if not 0 <= target < len(result.batches(port)):
            return None
        if any(f.stream_id == stream.id for f in result.batches(port)[target]):
            return None
        result.move_into(port, frame, target)
        if not _propagate(result, stream, frame, port):
            return None
    return result


def _propagate(
    ordering: TransmissionOrdering, stream: Stream, frame: FrameInstance, port: Port,
) -> bool:
    """Keep ``frame`` batched with the co-travellers of its merged batch.

    Frames of one batch leave the port in arbitrary order, so on every
    following hop they share consecutively they must share a batch too.
    Returns ``False`` when the co-travellers are already split over
    several batches there.
    """
    route = stream.ports
    for k in range(route.index(port) + 1, len(route)):
        prev, here = route[k - 1], route[k]
        co = [
            f for f in ordering.batch_of(prev, frame)
            if f != frame and ordering.next_port(f, prev) == here
        ]
        if not co:
            return True
        targets = {ordering.batch_index(here, f) for f in co}
        if len(targets) != 1:
            return False
        target = targets.pop()
        if ordering.batch_index(here, frame) != target:
            ordering.move_into(here, frame, target)
    return True
