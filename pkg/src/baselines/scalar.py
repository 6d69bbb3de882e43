"""
Non-robust baselines: schedule with a single scalar 5G delay.

MED and MAX treat the 5G link like an Ethernet hop whose delay is the
histogram median or maximum.  Orderings are STI-shaped (singleton
batches) so the delay model is the only difference from STI, and the
configuration is emitted with policing disabled and every arrival window
set to the whole hypercycle: late frames queue up instead of being
dropped.
"""
from __future__ import annotations

import logging
from typing import Sequence

from budgets import Pdb, ScalarMode, pdb_for_link, scalar_delay
from core.interval import Interval
from core.network import Link, NetworkGraph, Wireless
from core.stream import Stream
from scheduler.admission import (
    PdbProvider,
    ScheduleMode,
    ScheduleResult,
    SchedulerOptions,
    run_admission,
    schedule,
)

logger = logging.getLogger(__name__)


def scalar_pdb_provider(mode: ScalarMode) -> PdbProvider:
    def provide(link: Link, stream: Stream) -> Pdb:
        if isinstance(link.kind, Wireless) and link.kind.histogram is not None:
            s = scalar_delay(link.kind.histogram, mode)
            return Pdb(Interval.point(s), link.kind.histogram.mass_within(Interval(0, s)))
        return pdb_for_link(link, stream)

    return provide


def schedule_scalar(
    network: NetworkGraph,
    streams: Sequence[Stream],
    mode: ScalarMode,
    options: SchedulerOptions | None = None,
) -> ScheduleResult:
    result = run_admission(
        network,
        streams,
        pdb_provider=scalar_pdb_provider(mode),
        batching=False,
        label=mode.value,
        options=options,
    )
    config = result.config
    config.policing_enabled = False
    # every arrival window spans the whole hypercycle
    unpoliced = Interval(0, config.hypercycle)
    config.psfp = {key: unpoliced for key in config.psfp}
    logger.info("Scalar baseline %s: policing disabled", mode.value)
    return result


SCHEDULER_MODES = ("fips", "sti", "med", "max")


def schedule_by_name(
    network: NetworkGraph,
    streams: Sequence[Stream],
    mode: str,
    options: SchedulerOptions | None = None,
) -> ScheduleResult:
    """Dispatch to FIPS/STI admission or to a scalar baseline."""
    if mode in (ScheduleMode.FIPS.value, ScheduleMode.STI.value):
        return schedule(network, streams, ScheduleMode(mode), options)
    if mode in (ScalarMode.MEDIAN.value, ScalarMode.MAXIMUM.value):
        return schedule_scalar(network, streams, ScalarMode(mode), options)
    raise ValueError(f"Unknown scheduler mode {mode!r}; expected one of {', '.join(SCHEDULER_MODES)}")
