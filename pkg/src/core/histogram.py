"""
Binned 5G port-to-port delay distribution.

Counts are exact integers and ``total`` is the normaliser, so the mass
of a prefix of bins is the exact rational ``Σ count / total``.  A
histogram measured with counts in units of 10⁻⁵ therefore keeps its
0.9999-quantile exact instead of depending on float round-off.

Bin convention: ``[low, up)`` for sampling, closed upper edge when a
bin boundary is used as a delay budget.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import accumulate

from core.interval import Interval
from core.timebase import TimeNs


@dataclass(frozen=True, slots=True)
class HistogramBin:
    low: TimeNs
    up: TimeNs
    count: int

    def __post_init__(self):
        if self.low >= self.up:
            raise ValueError(f"Histogram bin [{self.low}, {self.up}) is empty")
        if self.count < 0:
            raise ValueError(f"Histogram bin [{self.low}, {self.up}) has negative count {self.count}")


@dataclass(frozen=True)
class DelayHistogram:
    """Ordered, contiguous delay bins with exact integer counts.

    ``total`` defaults to the sum of the counts (a normalised histogram).
    A larger total describes a histogram whose bins hold less than the
    full probability mass.
    """
    bins: tuple[HistogramBin, ...]
    total: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.bins:
            raise ValueError("A delay histogram needs at least one bin")
        for prev, nxt in zip(self.bins, self.bins[1:]):
            if prev.up != nxt.low:
                raise ValueError(
                    f"Histogram bins are not contiguous: {prev.up} != {nxt.low}"
                )
        counted = sum(b.count for b in self.bins)
        if counted == 0:
            raise ValueError("A delay histogram needs a positive total count")
        if self.total == 0:
            object.__setattr__(self, "total", counted)
        elif self.total < counted:
            raise ValueError(f"Histogram total {self.total} is below the bin sum {counted}")

    @classmethod
    def from_triples(
        cls, triples: list[tuple[TimeNs, TimeNs, int]], total: int = 0, name: str = "",
    ) -> DelayHistogram:
        return cls(tuple(HistogramBin(lo, up, c) for lo, up, c in triples), total, name)

    # ------------------------------------------------------------------
    # Mass
    # ------------------------------------------------------------------

    @cached_property
    def cumulative_counts(self) -> tuple[int, ...]:
        return tuple(accumulate(b.count for b in self.bins))

    def cumulative_mass(self, i: int) -> Fraction:
        """Exact probability of the first ``i + 1`` bins."""
        return Fraction(self.cumulative_counts[i], self.total)

    @property
    def mass(self) -> Fraction:
        return self.cumulative_mass(len(self.bins) - 1)

    @property
    def is_normalized(self) -> bool:
        return self.mass == 1

    def normalized(self) -> DelayHistogram:
        return DelayHistogram(self.bins, 0, self.name)

    def first_bin_reaching(self, mass: Fraction) -> int | None:
        """Index of the first bin whose cumulative mass is ``≥ mass``."""
        # Compare numerators: cum/total >= p  ⇔  cum * p.den >= p.num * total
        threshold = mass.numerator * self.total
        for i, cum in enumerate(self.cumulative_counts):
            if cum * mass.denominator >= threshold:
                return i
        return None

    def mass_within(self, interval: Interval) -> Fraction:
        """Exact mass of the bins lying completely inside ``interval``."""
        inside = sum(
            b.count for b in self.bins if interval.lo <= b.low and b.up <= interval.hi
        )
        return Fraction(inside, self.total)

    # ------------------------------------------------------------------
    # Support
    # ------------------------------------------------------------------

    @property
    def support(self) -> Interval:
        return Interval(self.bins[0].low, self.bins[-1].up)

    def __len__(self) -> int:
        return len(self.bins)
