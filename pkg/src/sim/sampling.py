"""
Per-hop delay sampling.

Ethernet hops are deterministic.  A 5G hop draws a bin with probability
proportional to its count and then a delay uniformly inside ``[low, up)``.
All randomness comes from one ``numpy.random.Generator`` so a run is
reproducible from its seed.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from core.histogram import DelayHistogram
from core.network import Link, Wireless, ethernet_delay
from core.stream import Stream
from core.timebase import TimeNs


@lru_cache(maxsize=64)
def _cumulative(hist: DelayHistogram) -> np.ndarray:
    counts = np.asarray(hist.cumulative_counts, dtype=np.float64)
    cum = counts / counts[-1]
    cum.flags.writeable = False
    return cum


def sample_histogram(hist: DelayHistogram, rng: np.random.Generator) -> TimeNs:
    cum = _cumulative(hist)
    i = min(int(np.searchsorted(cum, rng.random(), side="right")), len(cum) - 1)
    b = hist.bins[i]
    return b.low + int(rng.random() * (b.up - b.low))


def sample_delay(link: Link, stream: Stream, rng: np.random.Generator) -> TimeNs:
    """One realisation of the delay of a frame of ``stream`` over ``link``."""
    if isinstance(link.kind, Wireless):
        if link.kind.histogram is None:
            raise ValueError(f"Wireless link {link.src}->{link.dst} has no resolved histogram")
        return sample_histogram(link.kind.histogram, rng)
    return ethernet_delay(link, stream.size_bytes).lo
