"""
End-to-end robustness: whatever FIPS admits, a simulation with every
wireless delay inside its budget runs without drops and produces a
valid trace.

Topologies are random trees of at most ten nodes around one 5G hop:

    T* ── U1 [── U2] ── DS ≈≈ NW ── D1 [── D2] ── L*
"""
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from core import DelayHistogram, Ethernet, Link, NetworkDescription, NodeRole, Wireless, build_network, ms, us
from harness.experiments import scenario_rng
from harness.streams import Direction, Partition, ScenarioSpec, WiredClass, WirelessClass, gen_stream_set
from scheduler import ScheduleMode, schedule
from sim import run_hypercycles, validate_trace
from tests.builders import SMALL_BINS, make_stream

FAST_BINS = [
    (us(200), us(500), 30),
    (us(500), ms(1), 60),
    (ms(1), ms(2), 10),
]


@st.composite
def networks(draw):
    """A random tree with its uplink, downlink and wired-only paths."""
    talkers = [f"T{k}" for k in range(draw(st.integers(1, 2)))]
    listeners = [f"L{k}" for k in range(draw(st.integers(1, 2)))]
    up = [f"U{k}" for k in range(1, draw(st.integers(1, 2)) + 1)]
    down = [f"D{k}" for k in range(1, draw(st.integers(1, 2)) + 1)]
    eth = Ethernet(
        draw(st.sampled_from([100_000_000, 1_000_000_000])),
        prop_delay=draw(st.sampled_from([0, 50, 500])),
    )
    bins = draw(st.sampled_from([SMALL_BINS, FAST_BINS]))

    pairs = [(t, up[0]) for t in talkers] + [(down[-1], lst) for lst in listeners]
    chain = [*up, "DS"], ["NW", *down]
    for side in chain:
        pairs += list(zip(side, side[1:]))
    links = [Link(a, b, eth) for a, b in pairs] + [Link(b, a, eth) for a, b in pairs]
    links += [Link("DS", "NW", Wireless("h")), Link("NW", "DS", Wireless("h"))]

    nodes = [(n, NodeRole.END_STATION) for n in talkers + listeners]
    nodes += [(n, NodeRole.BRIDGE) for n in up + down]
    nodes += [("DS", NodeRole.DS_TT), ("NW", NodeRole.NW_TT)]
    network = build_network(NetworkDescription(
        nodes=tuple(nodes),
        links=tuple(links),
        histograms={"h": DelayHistogram.from_triples(bins, name="h")},
    ))

    uplinks = [(t, *up, "DS", "NW", *down, lst) for t in talkers for lst in listeners]
    paths = uplinks + [tuple(reversed(p)) for p in uplinks]
    if len(talkers) == 2:
        paths.append((talkers[0], up[0], talkers[1]))
    if len(listeners) == 2:
        paths.append((listeners[0], down[-1], listeners[1]))
    return network, paths


@st.composite
def scenarios(draw):
    network, paths = draw(networks())
    streams = []
    for k in range(draw(st.integers(min_value=1, max_value=5))):
        period = draw(st.sampled_from([ms(10), ms(20)]))
        streams.append(make_stream(
            f"s{k}",
            draw(st.sampled_from(paths)),
            period=period,
            phase=draw(st.integers(0, period // 100_000 - 1)) * 100_000,
            latency=period,
            jitter=period,
            reliability=draw(st.sampled_from(["0.5", "0.9", "0.99", "1"])),
        ))
    return network, streams


def _assert_clean_run(network, streams, n_cycles: int, seed: int) -> None:
    result = schedule(network, streams, ScheduleMode.FIPS)
    if not result.accepted:
        return
    sim = run_hypercycles(result.config, network, streams, n_cycles, seed, clip_to_pdb=True)
    accepted = [s for s in streams if s.id in set(result.accepted)]
    assert sim.report.psfp_drops == 0
    assert validate_trace(sim.trace, result.config, network, accepted) == []
    for sid in result.accepted:
        t = sim.report.tally(sid)
        assert t.dropped == 0
        assert t.late == 0


class TestRobustness:

    @given(scenario=scenarios(), seed=st.integers(0, 2**16))
    @settings(max_examples=30, deadline=None)
    def test_admitted_streams_run_clean(self, scenario, seed):
        network, streams = scenario
        _assert_clean_run(network, streams, n_cycles=50, seed=seed)

    @pytest.mark.slow
    @given(scenario=scenarios(), seed=st.integers(0, 2**16))
    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_thousand_cycles_per_topology(self, scenario, seed):
        network, streams = scenario
        _assert_clean_run(network, streams, n_cycles=1_000, seed=seed)

    @pytest.mark.slow
    def test_agv_scenario_runs_clean(self, agv):
        spec = ScenarioSpec(
            name="robustness",
            wired=(
                WiredClass("wired-agv-", 5, Partition.AGV),
                WiredClass("wired-bb-", 5, Partition.BACKBONE),
            ),
            wireless=(
                WirelessClass("up-", 20, Direction.UPLINK, Fraction("0.99")),
                WirelessClass("down-", 20, Direction.DOWNLINK, Fraction("0.99")),
            ),
            seed=7,
        )
        streams = gen_stream_set(spec, agv, scenario_rng(spec))
        _assert_clean_run(agv, streams, n_cycles=200, seed=7)
