"""
Incremental stream admission.

Streams are admitted one at a time in a fixed order.  For each stream
the current ordering is extended (insert, then optionally merge), every
candidate ordering is turned into a configuration, and the candidate is
kept only if the new stream *and* every previously accepted stream still
meet their latency and jitter bounds.  A stream with no feasible
candidate is rejected and the previous configuration stays in force, so
accepted streams are never evicted.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from budgets import Pdb, pdb_for_link
from core.errors import (
    CyclicDependency,
    HorizonExceeded,
    InvalidStream,
    UnreachableReliability,
)
from core.network import Link, NetworkGraph
from core.stream import Stream, hypercycle, validate_stream
from core.timebase import TimeNs
from scheduler.configuration import TsnConfiguration, derive_configuration
from scheduler.feasibility import Verdict, check_feasibility, worst_case_latency
from scheduler.ordering import MergeCandidate, MergeKind, TransmissionOrdering, insert_frames, merge_candidates

logger = logging.getLogger(__name__)

PdbProvider = Callable[[Link, Stream], Pdb]


class ScheduleMode(Enum):
    FIPS = "fips"
    STI = "sti"


class Rejection(Enum):
    VIOLATES_LATENCY = "violates_latency"
    VIOLATES_JITTER = "violates_jitter"
    CYCLIC_DEPENDENCY = "cyclic_dependency"
    HORIZON_EXCEEDED = "horizon_exceeded"
    BREAKS_ACCEPTED = "breaks_accepted"
    UNREACHABLE_RELIABILITY = "unreachable_reliability"
    INVALID_STREAM = "invalid_stream"


@dataclass(frozen=True, slots=True)
class SchedulerOptions:
    horizon_cycles: int = 2


@dataclass(slots=True)
class ScheduleResult:
    config: TsnConfiguration
    accepted: list[str] = field(default_factory=list)
    rejected: dict[str, Rejection] = field(default_factory=dict)

    @property
    def all_accepted(self) -> bool:
        return not self.rejected


def admission_key(stream: Stream) -> tuple:
    """Strictest streams first: reliability desc, latency bound asc, id asc."""
    return (-stream.reliability, stream.latency_bound, stream.id)


def schedule(
    network: NetworkGraph,
    streams: Sequence[Stream],
    mode: ScheduleMode = ScheduleMode.FIPS,
    options: SchedulerOptions | None = None,
) -> ScheduleResult:
    """Admit ``streams`` with FIPS batching, or with singleton batches (STI)."""
    return run_admission(
        network,
        streams,
        pdb_provider=pdb_for_link,
        batching=mode is ScheduleMode.FIPS,
        label=mode.value,
        options=options,
    )


def run_admission(
    network: NetworkGraph,
    streams: Sequence[Stream],
    *,
    pdb_provider: PdbProvider,
    batching: bool,
    label: str,
    options: SchedulerOptions | None = None,
) -> ScheduleResult:
    options = options or SchedulerOptions()
    if not streams:
        return ScheduleResult(TsnConfiguration(hypercycle=0, mode=label))

    by_id = {s.id: s for s in streams}
    if len(by_id) != len(streams):
        raise InvalidStream("Stream ids must be unique")
    h = hypercycle(streams)

    ordering = TransmissionOrdering()
    config = TsnConfiguration(hypercycle=h, mode=label)
    pdbs: dict = {}
    result = ScheduleResult(config)

    for stream in sorted(streams, key=admission_key):
        try:
            validate_stream(stream, network)
            stream_pdbs = {
                (port, stream.id): pdb_provider(network.link(port), stream)
                for port in stream.ports
            }
        except InvalidStream:
            result.rejected[stream.id] = Rejection.INVALID_STREAM
            continue
        except UnreachableReliability:
            result.rejected[stream.id] = Rejection.UNREACHABLE_RELIABILITY
            continue

        all_pdbs = {**pdbs, **stream_pdbs}
        inserted = insert_frames(ordering, stream, all_pdbs, config.schedule.smin_map(), h)
        if batching:
            candidates = merge_candidates(inserted, stream, network)
        else:
            candidates = [MergeCandidate(MergeKind.NONE, inserted)]

        best: tuple[TimeNs, MergeCandidate, TsnConfiguration] | None = None
        reasons: list[Rejection] = []
        for cand in candidates:
            outcome = _evaluate(cand, network, by_id, all_pdbs, h, options, stream, result.accepted)
            if isinstance(outcome, Rejection):
                logger.debug("%s candidate %s rejected: %s", stream.id, cand.kind.value, outcome.value)
                reasons.append(outcome)
                continue
            latency = worst_case_latency(outcome, stream)
            if best is None or latency < best[0]:
                best = (latency, cand, outcome)

        if best is None:
            result.rejected[stream.id] = reasons[0]
            logger.debug("Rejected %s (%s)", stream.id, reasons[0].value)
            continue

        _, chosen, config = best
        ordering = chosen.ordering
        pdbs = all_pdbs
        result.accepted.append(stream.id)
        logger.debug("Accepted %s with merge=%s", stream.id, chosen.kind.value)

    config.mode = label
    config.accepted = list(result.accepted)
    config.rejected = {sid: r.value for sid, r in result.rejected.items()}
    result.config = config
    logger.info(
        "Admission (%s): %d accepted, %d rejected of %d streams",
        label, len(result.accepted), len(result.rejected), len(streams),
    )
    return result


def _evaluate(
    cand: MergeCandidate,
    network: NetworkGraph,
    by_id: dict[str, Stream],
    pdbs: dict,
    h: TimeNs,
    options: SchedulerOptions,
    stream: Stream,
    accepted: list[str],
) -> TsnConfiguration | Rejection:
    try:
        cfg = derive_configuration(
            cand.ordering, network, by_id, pdbs, h, horizon_cycles=options.horizon_cycles,
        )
    except CyclicDependency:
        return Rejection.CYCLIC_DEPENDENCY
    except HorizonExceeded:
        return Rejection.HORIZON_EXCEEDED

    verdict = check_feasibility(cfg, stream)
    if verdict is Verdict.VIOLATES_LATENCY:
        return Rejection.VIOLATES_LATENCY
    if verdict is Verdict.VIOLATES_JITTER:
        return Rejection.VIOLATES_JITTER
    if not all(check_feasibility(cfg, by_id[sid]) for sid in accepted):
        return Rejection.BREAKS_ACCEPTED
    return cfg
