"""
Tests for baselines/scalar.py: MED/MAX scheduling with one scalar 5G delay.
"""
from fractions import Fraction

import pytest

from baselines import SCHEDULER_MODES, schedule_by_name, schedule_scalar
from budgets import ScalarMode
from core import Interval, ms


class TestScalarBaselines:

    @pytest.mark.parametrize("mode, delay, mass", [
        (ScalarMode.MEDIAN, ms(2), Fraction(1, 2)),
        (ScalarMode.MAXIMUM, ms(5), Fraction(1)),
    ])
    def test_5g_budget_is_a_point(self, network, pair, mode, delay, mass):
        result = schedule_scalar(network, pair, mode)
        pdb = result.config.pdbs[(("DS", "NW"), "w0")]
        assert pdb.interval == Interval.point(delay)
        assert pdb.achieved_mass == mass

    def test_policing_disabled(self, network, pair):
        result = schedule_scalar(network, pair, ScalarMode.MEDIAN)
        assert not result.config.policing_enabled
        assert result.config.mode == "med"

    def test_arrival_windows_span_the_hypercycle(self, network, pair):
        config = schedule_scalar(network, pair, ScalarMode.MAXIMUM).config
        assert config.psfp
        assert set(config.psfp.values()) == {Interval(0, ms(10))}

    def test_median_windows(self, network, pair):
        config = schedule_scalar(network, pair, ScalarMode.MEDIAN).config
        assert config.schedule.starts[("NW", "S2")][0] == 16_000 + ms(2)

    def test_ethernet_hops_unchanged(self, network, pair):
        config = schedule_scalar(network, pair, ScalarMode.MAXIMUM).config
        assert config.pdbs[(("T1", "S1"), "w0")].interval == Interval.point(8_000)


class TestScheduleByName:

    @pytest.mark.parametrize("mode", SCHEDULER_MODES)
    def test_every_mode(self, network, pair, mode):
        result = schedule_by_name(network, pair, mode)
        assert result.config.mode == mode
        assert result.config.policing_enabled == (mode in ("fips", "sti"))

    def test_unknown_mode(self, network, pair):
        with pytest.raises(ValueError):
            schedule_by_name(network, pair, "edf")
