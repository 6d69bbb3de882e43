"""
Robust configuration derivation.

Given a transmission ordering, every batch B at port [u,v] gets the
smallest start time S satisfying

    C1  S ≥ Rmax(u, f) for every f ∈ B         (all members have arrived;
                                                Rmax = release at the talker)
    C2  S ≥ close(B_{i-1}) + guard               (predecessor window finished)
    C3  S ≥ close([v,w], B'_{j-1}) + guard − d^min([u,v], f)
                                               (f cannot reach v before the
                                                batch ahead of it there is done)

``close`` is ``S + d^max(B)`` on Ethernet and ``S`` on a 5G link, whose
gate opens for an instant and transmits the whole batch at once.  The
guard is 1 ns on zero-length windows so arrivals never coincide with a
predecessor's gate instant.

The constraints point backwards along paths and queues, so the least
fixed point is found by a depth-first walk over (port, batch) nodes.  A
node reached again while still being expanded means the ordering admits
no schedule.

Derived configuration:
    gate windows   [S, close(B)] per batch
    PSFP windows   [S + d^min(f), S + d^max(B)] at the receiving node
    start ranges   [Smin, Smax] = [S, S + Σ serialization of the other members]
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from budgets import Pdb, PdbTable
from core.errors import CyclicDependency, HorizonExceeded
from core.interval import Interval
from core.network import Ethernet, Link, NetworkGraph, NodeId, Port
from core.stream import FrameInstance, Stream
from core.stream import hypercycle as stream_hypercycle
from core.timebase import TimeNs
from scheduler.ordering import TransmissionOrdering

logger = logging.getLogger(__name__)

# Nanoseconds separating an arrival from a zero-length gate instant.
INSTANT_GUARD_NS = 1


@dataclass(frozen=True, slots=True, order=True)
class GateWindow:
    open: TimeNs
    close: TimeNs

    @property
    def length(self) -> TimeNs:
        return self.close - self.open


@dataclass(slots=True)
class ScheduleTable:
    """Start times S per batch, and [Smin, Smax] per (port, frame)."""
    starts: dict[Port, list[TimeNs]] = field(default_factory=dict)
    frame_starts: dict[tuple[Port, FrameInstance], Interval] = field(default_factory=dict)

    def smin(self, port: Port, frame: FrameInstance) -> TimeNs:
        return self.frame_starts[(port, frame)].lo

    def smin_map(self) -> dict[tuple[Port, FrameInstance], TimeNs]:
        return {k: iv.lo for k, iv in self.frame_starts.items()}


@dataclass(slots=True)
class TsnConfiguration:
    """Scheduler output and simulator input.

    ``accepted`` / ``rejected`` and ``mode`` are metadata; the simulator
    only needs the gate windows, the PSFP windows, the talker start
    offsets held in ``schedule`` and the budgets.
    """
    hypercycle: TimeNs
    gcl: dict[Port, list[GateWindow]] = field(default_factory=dict)
    psfp: dict[tuple[NodeId, FrameInstance], Interval] = field(default_factory=dict)
    pdbs: dict[tuple[Port, str], Pdb] = field(default_factory=dict)
    schedule: ScheduleTable = field(default_factory=ScheduleTable)
    mode: str = "fips"
    policing_enabled: bool = True
    seed: int | None = None
    accepted: list[str] = field(default_factory=list)
    rejected: dict[str, str] = field(default_factory=dict)

    def pdb(self, port: Port, frame: FrameInstance) -> Pdb:
        return self.pdbs[(port, frame.stream_id)]

    def listener_window(self, stream: Stream, frame: FrameInstance) -> Interval:
        return self.psfp[(stream.listener, frame)]

    def frames_of(self, stream_id: str) -> list[FrameInstance]:
        port_frames = {f for (_, f) in self.schedule.frame_starts if f.stream_id == stream_id}
        return sorted(port_frames)


# ------------------------------------------------------------------
# Batch budgets
# ------------------------------------------------------------------

def batch_pdb(link: Link, batch: Iterable[FrameInstance], pdbs: PdbTable) -> Interval:
    """Delay budget of a whole batch on ``link``.

    Ethernet serializes the members back to back: serialization terms add
    up, propagation and processing count once.  On the 5G link members
    travel concurrently, so the batch spans the widest member budget.
    """
    members = [pdbs[(link.port, f.stream_id)] for f in batch]
    if isinstance(link.kind, Ethernet):
        overhead = link.kind.prop_delay + link.kind.proc_delay
        d = sum(p.dmin - overhead for p in members) + overhead
        return Interval.point(d)
    return Interval(min(p.dmin for p in members), max(p.dmax for p in members))


def _serialization(link: Link, pdb: Pdb) -> TimeNs:
    if isinstance(link.kind, Ethernet):
        return pdb.dmin - link.kind.prop_delay - link.kind.proc_delay
    return 0


# ------------------------------------------------------------------
# Fixed point
# ------------------------------------------------------------------

_GRAY, _BLACK = 1, 2

Node = tuple[Port, int]


class _Solver:
    def __init__(
        self,
        ordering: TransmissionOrdering,
        network: NetworkGraph,
        pdbs: PdbTable,
    ):
        self.ordering = ordering
        self.network = network
        self.pdbs = pdbs
        self.start: dict[Node, TimeNs] = {}
        self._span: dict[Node, Interval] = {}
        self._state: dict[Node, int] = {}
        self._bounds: dict[Node, list[tuple[Node | None, TimeNs]]] = {}

    def span(self, node: Node) -> Interval:
        iv = self._span.get(node)
        if iv is None:
            port, i = node
            iv = batch_pdb(self.network.link(port), self.ordering.batches(port)[i], self.pdbs)
            self._span[node] = iv
        return iv

    def occupancy(self, node: Node) -> TimeNs:
        """close(B) - S plus the guard that must follow it."""
        if self.network.link(node[0]).is_wireless:
            return INSTANT_GUARD_NS
        return self.span(node).hi

    def bounds(self, node: Node) -> list[tuple[Node | None, TimeNs]]:
        """``S(node) ≥ S(dep) + offset`` terms; ``dep`` is None for constants."""
        cached = self._bounds.get(node)
        if cached is not None:
            return cached
        port, i = node
        ordering = self.ordering
        terms: list[tuple[Node | None, TimeNs]] = [(None, 0)]
        for f in ordering.batches(port)[i]:
            route = ordering.route(f.stream_id)
            k = route.index(port)
            # C1
            if k == 0:
                terms.append((None, f.release))
            else:
                prev = (route[k - 1], ordering.batch_index(route[k - 1], f))
                terms.append((prev, self.span(prev).hi))
            # C3
            if k + 1 < len(route):
                nxt = route[k + 1]
                j = ordering.batch_index(nxt, f)
                if j > 0:
                    ahead = (nxt, j - 1)
                    dmin = self.pdbs[(port, f.stream_id)].dmin
                    terms.append((ahead, self.occupancy(ahead) - dmin))
        # C2
        if i > 0:
            terms.append(((port, i - 1), self.occupancy((port, i - 1))))
        self._bounds[node] = terms
        return terms

    def solve(self, root: Node) -> None:
        if self._state.get(root) == _BLACK:
            return
        self._state[root] = _GRAY
        stack = [(root, iter(self.bounds(root)))]
        while stack:
            node, pending = stack[-1]
            for dep, _ in pending:
                if dep is None:
                    continue
                state = self._state.get(dep)
                if state is None:
                    self._state[dep] = _GRAY
                    stack.append((dep, iter(self.bounds(dep))))
                    break
                if state == _GRAY:
                    raise CyclicDependency(
                        f"Start of batch {dep[1]} at {dep[0]} depends on itself via {node[0]}"
                    )
            else:
                stack.pop()
                self.start[node] = max(
                    (self.start[d] if d is not None else 0) + off
                    for d, off in self.bounds(node)
                )
                self._state[node] = _BLACK


def derive_configuration(
    ordering: TransmissionOrdering,
    network: NetworkGraph,
    streams: Mapping[str, Stream],
    pdbs: PdbTable,
    horizon: TimeNs | None = None,
    horizon_cycles: int = 2,
) -> TsnConfiguration:
    """Least start times for ``ordering`` and the resulting GCL/PSFP tables.

    ``horizon`` defaults to the hypercycle of ``streams``; a batch may close
    at most ``horizon_cycles`` hypercycles after the release of its members.
    """
    hypercycle = horizon if horizon is not None else stream_hypercycle(streams.values())
    solver = _Solver(ordering, network, pdbs)
    for port in ordering.ports:
        for i in range(len(ordering.batches(port))):
            solver.solve((port, i))

    config = TsnConfiguration(hypercycle=hypercycle)
    for port in ordering.ports:
        link = network.link(port)
        batches = ordering.batches(port)
        starts = [solver.start[(port, i)] for i in range(len(batches))]
        config.schedule.starts[port] = starts
        windows: list[GateWindow] = []
        for i, (batch, s) in enumerate(zip(batches, starts)):
            span = solver.span((port, i))
            close = s if link.is_wireless else s + span.hi
            windows.append(GateWindow(s, close))
            members = {f: _serialization(link, pdbs[(port, f.stream_id)]) for f in batch}
            total_ser = sum(members.values())
            receiver = port[1]
            for f in batch:
                if s + span.hi > f.release + horizon_cycles * hypercycle:
                    raise HorizonExceeded(
                        f"{f} at {port[0]}->{port[1]} ends at {s + span.hi}, beyond {horizon_cycles} hypercycles"
                    )
                config.schedule.frame_starts[(port, f)] = Interval(s, s + total_ser - members[f])
                config.psfp[(receiver, f)] = Interval(
                    s + pdbs[(port, f.stream_id)].dmin, s + span.hi
                )
        config.gcl[port] = windows

    for port in ordering.ports:
        windows = config.gcl[port]
        _check_folded_windows(port, windows, hypercycle, network.link(port).is_wireless)
        arrivals = [_arrival_span(config, ordering, port, batch) for batch in ordering.batches(port)]
        _check_cyclic_fifo(port, windows, arrivals, hypercycle)

    for sid in ordering.stream_ids:
        for port in ordering.route(sid):
            config.pdbs[(port, sid)] = pdbs[(port, sid)]
    return config


# ------------------------------------------------------------------
# Hypercycle wrap
# ------------------------------------------------------------------

def _check_folded_windows(port: Port, windows: list[GateWindow], h: TimeNs, wireless: bool) -> None:
    """Windows taken modulo ``h`` must stay disjoint (5G instants a guard apart)."""
    if not windows:
        return
    guard = INSTANT_GUARD_NS if wireless else 0
    folded = sorted((w.open % h, w.open % h + w.length) for w in windows)
    following = folded[1:] + [(folded[0][0] + h, folded[0][1] + h)]
    for (o, c), (o_next, _) in zip(folded, following):
        if o_next < c + guard:
            raise HorizonExceeded(
                f"Windows at {port[0]}->{port[1]} overlap modulo the hypercycle "
                f"([{o}, {c}] and {o_next % h}, H={h})"
            )


def _arrival_span(
    config: TsnConfiguration, ordering: TransmissionOrdering, port: Port, batch: Iterable[FrameInstance],
) -> Interval:
    """When the members of ``batch`` may enter the queue of ``port``, relative to their release cycle."""
    lo: TimeNs | None = None
    hi: TimeNs | None = None
    for f in batch:
        if ordering.route(f.stream_id)[0] == port:
            iv = Interval.point(config.schedule.smin(port, f))
        else:
            iv = config.psfp[(port[0], f)]
        lo = iv.lo if lo is None else min(lo, iv.lo)
        hi = iv.hi if hi is None else max(hi, iv.hi)
    assert lo is not None and hi is not None
    return Interval(lo, hi)


def _check_cyclic_fifo(port: Port, windows: list[GateWindow], arrivals: list[Interval], h: TimeNs) -> None:
    """FIFO order across hypercycles.

    Over the periodic repetition of a port's batches, every frame whose
    window comes earlier must be queued no later than the earliest member
    of any later window.  At equal instants the simulator enqueues the
    older hypercycle first, so only a newer frame losing that tie counts.
    Pairs inside one hypercycle are already ordered by C1 and C3.
    """
    if not windows:
        return
    lo = min(min(w.open for w in windows), min(a.lo for a in arrivals))
    hi = max(max(w.close for w in windows), max(a.hi for a in arrivals))
    reach = (hi - lo) // h + 1
    instances = sorted(
        (w.open + c * h, c, i) for c in range(2 * reach + 1) for i, w in enumerate(windows)
    )
    latest: tuple[TimeNs, int] | None = None
    for _, c, i in instances:
        shift = c * h
        if c == reach and latest is not None and latest > (arrivals[i].lo + shift, c):
            raise HorizonExceeded(
                f"Batch {i} at {port[0]}->{port[1]} may queue behind a frame of another hypercycle"
            )
        held = (arrivals[i].hi + shift, c)
        latest = held if latest is None else max(latest, held)
