"""
Tests for scheduler/admission.py and scheduler/feasibility.py.
"""
from dataclasses import replace

from core import Interval, expand_frames, ms
from scheduler import (
    GateWindow,
    Rejection,
    ScheduleMode,
    Verdict,
    admission_key,
    check_feasibility,
    schedule,
    worst_case_latency,
)
from sim import run_hypercycles, validate_trace
from tests.builders import WIRELESS_PATH_1, make_stream, wireless_pair


# ===========================================================
# Feasibility
# ===========================================================

class TestFeasibility:

    def test_accepted_streams_pass(self, fips_pair, pair):
        for s in pair:
            assert check_feasibility(fips_pair.config, s) is Verdict.ACCEPTED

    def test_latency_first(self, fips_pair, pair):
        tight = replace(pair[0], latency_bound=ms(3), jitter_bound=0)
        assert check_feasibility(fips_pair.config, tight) is Verdict.VIOLATES_LATENCY
        assert not check_feasibility(fips_pair.config, tight)

    def test_worst_case_latency(self, fips_pair, pair):
        assert worst_case_latency(fips_pair.config, pair[1]) == 3_048_000


# ===========================================================
# Admission
# ===========================================================

class TestAdmission:

    def test_admission_order(self):
        strict = make_stream("b", WIRELESS_PATH_1, reliability="0.99")
        fast = make_stream("c", WIRELESS_PATH_1, latency=ms(5))
        plain = make_stream("a", WIRELESS_PATH_1)
        assert sorted([plain, fast, strict], key=admission_key) == [strict, fast, plain]

    def test_fips_accepts_pair(self, fips_pair):
        assert fips_pair.accepted == ["w0", "w1"]
        assert fips_pair.all_accepted
        assert fips_pair.config.mode == "fips"
        assert fips_pair.config.accepted == ["w0", "w1"]
        assert fips_pair.config.hypercycle == ms(10)

    def test_sti_keeps_singletons(self, network, pair):
        result = schedule(network, pair, ScheduleMode.STI)
        assert result.accepted == ["w0", "w1"]
        config = result.config
        assert config.gcl[("NW", "S2")] == [
            GateWindow(3_016_000, 3_024_000),
            GateWindow(5_024_000, 5_032_000),
        ]
        f1 = expand_frames(pair[1], ms(10))[0]
        assert config.listener_window(pair[1], f1) == Interval.point(5_040_000)

    def test_batching_admits_what_sti_cannot(self, network):
        streams = wireless_pair(latency=ms(4))
        sti = schedule(network, streams, ScheduleMode.STI)
        fips = schedule(network, streams, ScheduleMode.FIPS)
        assert sti.accepted == ["w0"]
        assert sti.rejected == {"w1": Rejection.VIOLATES_LATENCY}
        assert fips.accepted == ["w0", "w1"]

    def test_jitter_at_5g_listener(self, network):
        edge = make_stream("edge", ("T1", "S1", "DS", "NW"), jitter=ms(1))
        result = schedule(network, [edge])
        assert result.rejected == {"edge": Rejection.VIOLATES_JITTER}
        assert result.config.rejected == {"edge": "violates_jitter"}

        relaxed = replace(edge, jitter_bound=ms(2))
        assert schedule(network, [relaxed]).accepted == ["edge"]

    def test_invalid_stream_rejected_not_raised(self, network, pair):
        broken = make_stream("broken", ("T1", "T2"))
        result = schedule(network, [*pair, broken])
        assert result.rejected == {"broken": Rejection.INVALID_STREAM}
        assert result.accepted == ["w0", "w1"]

    def test_rejected_stream_leaves_configuration_untouched(self, network, pair):
        hopeless = make_stream("x", WIRELESS_PATH_1, latency=ms(1))
        alone = schedule(network, pair)
        with_extra = schedule(network, [*pair, hopeless])
        assert with_extra.rejected == {"x": Rejection.VIOLATES_LATENCY}
        assert with_extra.config.gcl == alone.config.gcl
        assert with_extra.config.psfp == alone.config.psfp

    def test_empty_stream_set(self, network):
        result = schedule(network, [])
        assert result.accepted == []
        assert result.config.hypercycle == 0

    def test_deterministic(self, network, pair):
        a = schedule(network, pair)
        b = schedule(network, list(reversed(pair)))
        assert a.config.gcl == b.config.gcl
        assert a.config.schedule.frame_starts == b.config.schedule.frame_starts


# ===========================================================
# Windows past the hypercycle boundary
# ===========================================================

class TestHypercycleWrap:

    def test_late_phase_stream_crosses_the_boundary(self, network):
        early = make_stream("a", WIRELESS_PATH_1)
        late = make_stream("b", WIRELESS_PATH_1, phase=ms(8))
        result = schedule(network, [early, late])
        assert result.accepted == ["a", "b"]
        assert result.config.gcl[("NW", "S2")] == [
            GateWindow(3_016_000, 3_024_000),
            GateWindow(11_016_000, 11_024_000),
        ]

        sim = run_hypercycles(result.config, network, [early, late], n_cycles=40, seed=3, clip_to_pdb=True)
        assert validate_trace(sim.trace, result.config, network, [early, late]) == []
        for sid in ("a", "b"):
            t = sim.report.tally(sid)
            assert t.delivered == 40
            assert t.latency_max == 3_032_000

    def test_previous_cycle_arrivals_overtaking_a_window(self, network):
        # b's 5G arrivals spill into the next cycle ahead of a's window
        # while a's own arrivals may already be queued
        early = make_stream("a", WIRELESS_PATH_1)
        late = make_stream("b", WIRELESS_PATH_1, phase=ms(9))
        result = schedule(network, [early, late])
        assert result.accepted == ["a"]
        assert "b" in result.rejected
