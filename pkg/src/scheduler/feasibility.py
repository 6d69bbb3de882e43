from __future__ import annotations

from enum import Enum

from core.stream import Stream, expand_frames
from scheduler.configuration import TsnConfiguration


class Verdict(Enum):
    ACCEPTED = "accepted"
    VIOLATES_LATENCY = "violates_latency"
    VIOLATES_JITTER = "violates_jitter"

    def __bool__(self) -> bool:
        return self is Verdict.ACCEPTED


def check_feasibility(config: TsnConfiguration, stream: Stream) -> Verdict:
    """End-to-end check of every frame's listener window against the stream's bounds.

    Reports the first violated bound, latency before jitter.
    """
    for frame in expand_frames(stream, config.hypercycle):
        window = config.listener_window(stream, frame)
        if window.hi - frame.release > stream.latency_bound:
            return Verdict.VIOLATES_LATENCY
        if window.width > stream.jitter_bound:
            return Verdict.VIOLATES_JITTER
    return Verdict.ACCEPTED


def worst_case_latency(config: TsnConfiguration, stream: Stream) -> int:
    return max(
        config.listener_window(stream, f).hi - f.release
        for f in expand_frames(stream, config.hypercycle)
    )
