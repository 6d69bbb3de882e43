"""
Packet delay budgets.

A budget ``[d^min, d^max]`` for a stream on a 5G link is the shortest
prefix of the delay histogram that still holds the stream's required
reliability.  ``d^min`` is always the first bin's low edge, so only
``d^max`` depends on the requirement.  Ethernet hops get a degenerate
budget equal to their deterministic delay.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, TypeAlias

from core.errors import UnreachableReliability
from core.histogram import DelayHistogram
from core.interval import Interval
from core.network import Link, Port, Wireless, ethernet_delay
from core.stream import Stream
from core.timebase import TimeNs


@dataclass(frozen=True, slots=True)
class Pdb:
    interval: Interval
    achieved_mass: Fraction

    @property
    def dmin(self) -> TimeNs:
        return self.interval.lo

    @property
    def dmax(self) -> TimeNs:
        return self.interval.hi

    @classmethod
    def deterministic(cls, delay: TimeNs) -> Pdb:
        return cls(Interval.point(delay), Fraction(1))


# (port, stream id) -> budget; every frame of a stream shares its stream's budgets.
PdbTable: TypeAlias = Mapping[tuple[Port, str], Pdb]


class ScalarMode(Enum):
    MEDIAN = "med"
    MAXIMUM = "max"


def allocate_pdb(hist: DelayHistogram, rel: Fraction) -> Pdb:
    if not 0 < rel <= 1:
        raise ValueError(f"Reliability must be in (0, 1], got {rel}")
    i = hist.first_bin_reaching(Fraction(rel))
    if i is None:
        raise UnreachableReliability(
            f"Histogram {hist.name or '<anonymous>'} holds mass {hist.mass}, below {rel}"
        )
    return Pdb(Interval(hist.bins[0].low, hist.bins[i].up), hist.cumulative_mass(i))


def pdb_for_link(link: Link, stream: Stream) -> Pdb:
    if isinstance(link.kind, Wireless):
        if link.kind.histogram is None:
            raise ValueError(f"Wireless link {link.src}->{link.dst} has no resolved histogram")
        return allocate_pdb(link.kind.histogram, stream.reliability)
    return Pdb(ethernet_delay(link, stream.size_bytes), Fraction(1))


def scalar_delay(hist: DelayHistogram, mode: ScalarMode) -> TimeNs:
    if mode is ScalarMode.MAXIMUM:
        return hist.bins[-1].up
    i = hist.first_bin_reaching(Fraction(1, 2))
    assert i is not None, "a normalised histogram always reaches half its mass"
    return hist.bins[i].up
