"""
Tests for core/histogram.py: exact mass arithmetic on binned delays.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core import Interval, ms
from core.histogram import DelayHistogram, HistogramBin
from tests.builders import SMALL_BINS


@st.composite
def histograms(draw) -> DelayHistogram:
    n = draw(st.integers(min_value=1, max_value=12))
    widths = draw(st.lists(st.integers(1, 10_000), min_size=n, max_size=n))
    counts = draw(st.lists(st.integers(0, 1_000), min_size=n, max_size=n))
    if sum(counts) == 0:
        counts[0] = 1
    low = draw(st.integers(0, 1_000_000))
    bins = []
    for w, c in zip(widths, counts):
        bins.append((low, low + w, c))
        low += w
    return DelayHistogram.from_triples(bins)


# ===========================================================
# Construction
# ===========================================================

class TestConstruction:

    def test_total_defaults_to_bin_sum(self, hist):
        assert hist.total == 100
        assert hist.is_normalized

    def test_partial_mass(self):
        h = DelayHistogram.from_triples(SMALL_BINS, total=200)
        assert h.mass == Fraction(1, 2)
        assert not h.is_normalized
        assert h.normalized().is_normalized

    def test_total_below_sum_rejected(self):
        with pytest.raises(ValueError):
            DelayHistogram.from_triples(SMALL_BINS, total=99)

    def test_gap_between_bins_rejected(self):
        with pytest.raises(ValueError):
            DelayHistogram.from_triples([(0, 10, 1), (11, 20, 1)])

    def test_empty_bin_rejected(self):
        with pytest.raises(ValueError):
            HistogramBin(5, 5, 1)

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            HistogramBin(0, 5, -1)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            DelayHistogram.from_triples([(0, 10, 0)])

    def test_name_does_not_affect_equality(self):
        a = DelayHistogram.from_triples(SMALL_BINS, name="a")
        b = DelayHistogram.from_triples(SMALL_BINS, name="b")
        assert a == b


# ===========================================================
# Mass queries
# ===========================================================

class TestMass:

    def test_cumulative(self, hist):
        assert hist.cumulative_counts == (50, 90, 100)
        assert hist.cumulative_mass(1) == Fraction(9, 10)

    @pytest.mark.parametrize("mass, index", [
        (Fraction(1, 2), 0),
        (Fraction(51, 100), 1),
        (Fraction(9, 10), 1),
        (Fraction(1), 2),
    ])
    def test_first_bin_reaching(self, hist, mass, index):
        assert hist.first_bin_reaching(mass) == index

    def test_unreachable(self):
        h = DelayHistogram.from_triples(SMALL_BINS, total=200)
        assert h.first_bin_reaching(Fraction(9, 10)) is None

    def test_mass_within_counts_whole_bins(self, hist):
        assert hist.mass_within(Interval(ms(1), ms(3))) == Fraction(9, 10)
        assert hist.mass_within(Interval(ms(1), ms(4))) == Fraction(9, 10)

    def test_support(self, hist):
        assert hist.support == Interval(ms(1), ms(5))

    @given(h=histograms(), num=st.integers(1, 1_000))
    @settings(max_examples=200)
    def test_first_bin_reaching_is_minimal(self, h, num):
        target = Fraction(num, 1_000)
        i = h.first_bin_reaching(target)
        assert i is not None
        assert h.cumulative_mass(i) >= target
        if i > 0:
            assert h.cumulative_mass(i - 1) < target
