"""
Tests for harness/streams.py: scenario presets and stream-set generation.
"""
from fractions import Fraction

import numpy as np
import pytest

from core import us, wireless_hop
from core.errors import NoPath
from harness.streams import (
    Direction,
    Partition,
    ScenarioSpec,
    WiredClass,
    WirelessClass,
    gen_stream_set,
    is_wireless,
    reliability_scenario,
    scalability_scenario,
    tracked_streams,
    with_wireless_qos,
)
from harness.topology import AgvTopologyParams, gen_agv_topology, partition_of


@pytest.fixture()
def small_spec() -> ScenarioSpec:
    return ScenarioSpec(
        name="small",
        wired=(WiredClass("wa-", 3, Partition.AGV), WiredClass("wb-", 3, Partition.BACKBONE)),
        wireless=(
            WirelessClass("up-", 4, Direction.UPLINK, Fraction("0.99"), tracked=True),
            WirelessClass("down-", 4, Direction.DOWNLINK, Fraction("0.5")),
        ),
    )


class TestPresets:

    def test_reliability_scenario(self):
        spec = reliability_scenario()
        assert sum(c.count for c in spec.wired) == 10
        assert sum(c.count for c in spec.wireless) == 90
        assert len(tracked_streams(spec)) == 10
        low = [c for c in spec.wireless if not c.tracked]
        assert all(c.reliability == Fraction(1, 2) for c in low)
        assert all(c.jitter_bound == us(100) for c in low)

    def test_scalability_scenario(self):
        spec = scalability_scenario(replications=3)
        assert sum(c.count for c in spec.wireless) == 400
        assert spec.replications == 3
        assert spec.n_cycles == 0

    @pytest.mark.parametrize("kwargs", [
        {"replications": 0},
        {"workers": 0},
        {"n_cycles": -1},
        {"jitter_grid": ()},
    ])
    def test_invalid_spec(self, kwargs):
        with pytest.raises(ValueError):
            ScenarioSpec(**kwargs)

    def test_negative_class_count(self):
        with pytest.raises(ValueError):
            WiredClass("x", -1, Partition.AGV)


class TestGenStreamSet:

    def test_counts_and_ids(self, agv, small_spec):
        streams = gen_stream_set(small_spec, agv, np.random.default_rng(0))
        assert len(streams) == 14
        assert len({s.id for s in streams}) == 14
        assert streams[0].id == "wa-0"

    def test_same_seed_same_streams(self, agv, small_spec):
        a = gen_stream_set(small_spec, agv, np.random.default_rng([3, 1]))
        b = gen_stream_set(small_spec, agv, np.random.default_rng([3, 1]))
        assert a == b

    def test_wired_streams_stay_in_their_partition(self, agv, small_spec):
        for s in gen_stream_set(small_spec, agv, np.random.default_rng(1)):
            if s.id.startswith("wa-"):
                assert {partition_of(n) for n in s.path} == {"agv"}
            elif s.id.startswith("wb-"):
                assert {partition_of(n) for n in s.path} == {"backbone"}
                assert s.reliability == 1

    def test_wireless_streams_cross_the_bridge(self, agv, small_spec):
        for s in gen_stream_set(small_spec, agv, np.random.default_rng(2)):
            if s.id.startswith("up-"):
                assert partition_of(s.talker) == "agv"
                assert partition_of(s.listener) == "backbone"
                assert wireless_hop(s, agv) is not None
            elif s.id.startswith("down-"):
                assert partition_of(s.talker) == "backbone"
                assert is_wireless(s, agv)

    def test_phases_on_microsecond_grid(self, agv, small_spec):
        for s in gen_stream_set(small_spec, agv, np.random.default_rng(4)):
            assert s.phase % 1_000 == 0
            assert 0 <= s.phase < s.period

    def test_partition_too_small_for_wired(self, small_spec):
        g = gen_agv_topology(AgvTopologyParams(agv_end_stations=1))
        with pytest.raises(NoPath):
            gen_stream_set(small_spec, g, np.random.default_rng(0))


class TestWirelessQos:

    def test_only_wireless_streams_change(self, agv, small_spec):
        base = gen_stream_set(small_spec, agv, np.random.default_rng(0))
        out = with_wireless_qos(base, agv, Fraction("0.9999"), us(1))
        for before, after in zip(base, out):
            if is_wireless(before, agv):
                assert (after.reliability, after.jitter_bound) == (Fraction("0.9999"), us(1))
                assert after.path == before.path
                assert after.phase == before.phase
            else:
                assert after is before
