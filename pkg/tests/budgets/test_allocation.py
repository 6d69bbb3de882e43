"""
Tests for budgets/allocation.py, covering delay budgets from histograms.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from budgets import Pdb, ScalarMode, allocate_pdb, pdb_for_link, scalar_delay
from core import Ethernet, Interval, Link, ms
from core.errors import UnreachableReliability
from core.histogram import DelayHistogram
from tests.builders import SMALL_BINS, WIRELESS_PATH_1, make_stream


# ===========================================================
# Measured 5G uplink histogram
# ===========================================================

class TestMeasuredHistogram:

    @pytest.mark.parametrize("rel, dmax", [
        ("0.90", ms("7.717")),
        ("0.99", ms("9.983")),
        ("0.9999", ms("13.176")),
    ])
    def test_percentile_edges(self, measured, rel, dmax):
        pdb = allocate_pdb(measured, Fraction(rel))
        assert pdb.dmax == dmax
        assert pdb.dmin == ms("3.803")

    def test_achieved_mass_meets_requirement(self, measured):
        pdb = allocate_pdb(measured, Fraction("0.99"))
        assert pdb.achieved_mass >= Fraction("0.99")

    def test_full_reliability_spans_support(self, measured):
        pdb = allocate_pdb(measured, Fraction(1))
        assert pdb.interval == measured.support


# ===========================================================
# Allocation
# ===========================================================

class TestAllocatePdb:

    @pytest.mark.parametrize("rel, dmax", [
        ("0.5", ms(2)),
        ("0.51", ms(3)),
        ("0.9", ms(3)),
        ("1", ms(5)),
    ])
    def test_small_histogram(self, hist, rel, dmax):
        assert allocate_pdb(hist, Fraction(rel)).interval == Interval(ms(1), dmax)

    def test_unreachable(self):
        h = DelayHistogram.from_triples(SMALL_BINS, total=200)
        with pytest.raises(UnreachableReliability):
            allocate_pdb(h, Fraction("0.9"))

    @pytest.mark.parametrize("rel", [Fraction(0), Fraction(-1, 2), Fraction(3, 2)])
    def test_out_of_range(self, hist, rel):
        with pytest.raises(ValueError):
            allocate_pdb(hist, rel)

    @given(a=st.integers(1, 10_000), b=st.integers(1, 10_000))
    @settings(max_examples=200)
    def test_monotone_in_reliability(self, measured, a, b):
        lo, hi = sorted((Fraction(a, 10_000), Fraction(b, 10_000)))
        p, q = allocate_pdb(measured, lo), allocate_pdb(measured, hi)
        assert p.dmax <= q.dmax
        assert p.dmin == q.dmin


class TestPdbForLink:

    def test_ethernet_is_degenerate(self):
        link = Link("a", "b", Ethernet(100_000_000, prop_delay=50))
        pdb = pdb_for_link(link, make_stream("s", ("a", "b")))
        assert pdb == Pdb.deterministic(8_050)
        assert pdb.achieved_mass == 1

    def test_wireless_uses_stream_reliability(self, network):
        link = network.link(("DS", "NW"))
        pdb = pdb_for_link(link, make_stream("s", WIRELESS_PATH_1, reliability="0.5"))
        assert pdb.interval == Interval(ms(1), ms(2))
        assert pdb.achieved_mass == Fraction(1, 2)


class TestScalarDelay:

    def test_median_is_half_mass_edge(self, hist):
        assert scalar_delay(hist, ScalarMode.MEDIAN) == ms(2)

    def test_maximum_is_support_end(self, hist):
        assert scalar_delay(hist, ScalarMode.MAXIMUM) == ms(5)
