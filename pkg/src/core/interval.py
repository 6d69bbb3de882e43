from __future__ import annotations

from dataclasses import dataclass

from core.timebase import TimeNs


@dataclass(frozen=True, slots=True, order=True)
class Interval:
    """Closed time interval ``[lo, hi]`` in nanoseconds.

    Used for delay budgets ``[d^min, d^max]``, PSFP arrival windows and
    the ``[Smin, Smax]`` transmission-start range of a frame.
    """
    lo: TimeNs
    hi: TimeNs

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Interval lower bound {self.lo} exceeds upper bound {self.hi}")

    @classmethod
    def point(cls, t: TimeNs) -> Interval:
        return cls(t, t)

    @property
    def width(self) -> TimeNs:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, t: TimeNs) -> bool:
        return self.lo <= t <= self.hi

    def shifted(self, dt: TimeNs) -> Interval:
        return Interval(self.lo + dt, self.hi + dt)

    def clamp(self, t: TimeNs) -> TimeNs:
        return min(max(t, self.lo), self.hi)
