"""
Cyclic gate schedule of one egress queue.

Windows are taken modulo the hypercycle, sorted, and merged where they
touch or overlap, since a gate that closes and reopens at the same
instant is simply open.  A frame of transmission time ``d`` may start
at ``t`` iff some window instance ``[o, c]`` has ``o ≤ t`` and
``t + d ≤ c``.  Zero-length windows admit only ``d = 0`` starts at
exactly ``o``.
"""
from __future__ import annotations

from bisect import bisect_right
from typing import Iterable

from core.timebase import TimeNs
from scheduler.configuration import GateWindow


class GateSchedule:

    def __init__(self, windows: Iterable[GateWindow], hypercycle: TimeNs):
        if hypercycle <= 0:
            raise ValueError("Gate schedules need a positive hypercycle")
        self.hypercycle = hypercycle
        normalized = sorted(
            (w.open % hypercycle, w.open % hypercycle + w.length) for w in windows
        )
        merged: list[list[int]] = []
        for o, c in normalized:
            if merged and o <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], c)
            else:
                merged.append([o, c])
        self._windows = [(o, c) for o, c in merged]
        self._opens = [o for o, _ in self._windows]

    @property
    def windows(self) -> list[tuple[TimeNs, TimeNs]]:
        return list(self._windows)

    def __bool__(self) -> bool:
        return bool(self._windows)

    def earliest_start(self, t: TimeNs, duration: TimeNs) -> TimeNs | None:
        """First instant ``≥ t`` at which a ``duration``-long transmission fits.

        ``None`` if no window is long enough.
        """
        if not self._windows:
            return None
        h = self.hypercycle
        phase = t % h
        base = t - phase
        best: TimeNs | None = None

        # window instances that may already be open at ``phase``
        i = bisect_right(self._opens, phase) - 1
        for o, c in ([self._windows[i]] if i >= 0 else []) + [
            (self._windows[-1][0] - h, self._windows[-1][1] - h)
        ]:
            s = max(phase, o)
            if s + duration <= c:
                best = s if best is None else min(best, s)
        if best is not None:
            return base + best

        # later windows in this cycle, then the next cycle
        for j in range(i + 1, len(self._windows)):
            o, c = self._windows[j]
            if o + duration <= c:
                return base + o
        for o, c in self._windows:
            if o + duration <= c:
                return base + h + o
        return None

    def admits(self, t: TimeNs, duration: TimeNs) -> bool:
        """Whether a transmission of ``duration`` may start exactly at ``t``."""
        return self.earliest_start(t, duration) == t
