"""
Tests for sim/engine.py — event-driven execution of a configuration.
"""
import pytest

from baselines import schedule_by_name
from core import ms
from core.errors import ConfigMismatch
from sim import DropEvent, run_hypercycles, validate_trace


def _records(trace, stream_id, cycle=0):
    return sorted(
        (r for r in trace if r.frame.stream_id == stream_id and r.frame.cycle == cycle),
        key=lambda r: r.hop,
    )


# ===========================================================
# Clipped runs
# ===========================================================

class TestClippedRun:

    def test_no_drops_and_valid(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=50, seed=1, clip_to_pdb=True)
        assert sim.report.psfp_drops == 0
        assert validate_trace(sim.trace, fips_pair.config, network, pair) == []
        for sid in ("w0", "w1"):
            t = sim.report.tally(sid)
            assert t.released == 50
            assert t.delivered == 50
            assert t.window_misses == 0

    def test_first_cycle_timeline(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=1, seed=4, clip_to_pdb=True)
        w0 = _records(sim.trace, "w0")
        assert [r.tx_offset for r in w0[:3]] == [0, 8_000, 16_000]
        assert w0[3].tx_offset in (3_024_000, 3_032_000)
        assert w0[4].tx_offset == 3_040_000
        assert w0[4].arrival == 3_048_000
        assert sim.report.tally("w0").latency_max == 3_048_000

    def test_later_cycles_are_shifted(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=3, seed=4, clip_to_pdb=True)
        # w1 waits for w0 to clear S1->DS before its talker window opens
        assert _records(sim.trace, "w1", cycle=2)[0].tx_offset == 2 * ms(10) + 8_000

    def test_deterministic(self, fips_pair, network, pair):
        a = run_hypercycles(fips_pair.config, network, pair, 20, seed=9)
        b = run_hypercycles(fips_pair.config, network, pair, 20, seed=9)
        assert a.trace.records == b.trace.records
        assert a.report == b.report

    def test_seed_matters(self, fips_pair, network, pair):
        a = run_hypercycles(fips_pair.config, network, pair, 20, seed=1)
        b = run_hypercycles(fips_pair.config, network, pair, 20, seed=2)
        assert a.trace.records != b.trace.records


# ===========================================================
# Policing
# ===========================================================

class TestPolicing:

    def test_over_budget_5g_delay_is_dropped(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=200, seed=5)
        assert sim.report.psfp_drops > 0
        dropped = next(r for r in sim.trace if r.drop is DropEvent.PSFP_DROP)
        assert dropped.port == ("DS", "NW")
        assert dropped.delay is None
        assert dropped.effective_delay == ms(3)
        assert dropped.raw_delay > ms(3)
        assert dropped.drop_node == "NW"
        rest = [r for r in sim.trace if r.frame == dropped.frame and r.hop > dropped.hop]
        assert rest and all(r.drop is DropEvent.NEVER_SENT and r.tx_offset is None for r in rest)
        assert validate_trace(sim.trace, fips_pair.config, network, pair) == []

    def test_every_frame_accounted_for(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=200, seed=5, collect_trace=False)
        assert sim.trace is None
        for sid in ("w0", "w1"):
            t = sim.report.tally(sid)
            assert t.delivered + t.late + t.dropped + t.in_flight == t.released == 200

    def test_delivered_fraction_matches_budget_mass(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=2_000, seed=21, collect_trace=False)
        for sid in ("w0", "w1"):
            t = sim.report.tally(sid)
            assert t.delivered_fraction == pytest.approx(0.9, abs=4 * (0.09 / 2_000) ** 0.5)

    def test_scalar_baseline_queues_late_frames(self, network, pair):
        result = schedule_by_name(network, pair, "med")
        sim = run_hypercycles(result.config, network, pair, n_cycles=100, seed=5)
        assert sim.report.psfp_drops == 0
        assert sum(sim.report.tally(s).late for s in ("w0", "w1")) > 0
        # late frames wait for a window in a later hypercycle
        assert sim.report.tally("w1").latency_max > ms(10)


# ===========================================================
# Inputs
# ===========================================================

class TestInputs:

    def test_zero_cycles(self, fips_pair, network, pair):
        sim = run_hypercycles(fips_pair.config, network, pair, n_cycles=0, seed=0)
        assert sim.report.tally("w0").released == 0
        assert len(sim.trace) == 0

    def test_negative_cycles(self, fips_pair, network, pair):
        with pytest.raises(ValueError):
            run_hypercycles(fips_pair.config, network, pair, n_cycles=-1, seed=0)

    def test_missing_stream(self, fips_pair, network, pair):
        with pytest.raises(ConfigMismatch):
            run_hypercycles(fips_pair.config, network, pair[:1], n_cycles=1, seed=0)

    def test_unscheduled_streams_are_ignored(self, network, pair):
        result = schedule_by_name(network, pair[:1], "fips")
        sim = run_hypercycles(result.config, network, pair, n_cycles=2, seed=0)
        assert set(sim.report.streams) == {"w0"}
