from __future__ import annotations

import pytest

from core.histogram import DelayHistogram
from core.network import NetworkGraph
from core.stream import Stream
from harness.topology import gen_agv_topology, measured_histogram
from scheduler import ScheduleMode, ScheduleResult, schedule
from tests.builders import bridge_network, small_histogram, wireless_pair


@pytest.fixture()
def hist() -> DelayHistogram:
    return small_histogram()


@pytest.fixture()
def network() -> NetworkGraph:
    return bridge_network()


@pytest.fixture()
def pair() -> list[Stream]:
    return wireless_pair()


@pytest.fixture()
def fips_pair(network, pair) -> ScheduleResult:
    """Both 5G streams admitted by FIPS; w1 is merged into w0's batch after the bridge."""
    return schedule(network, pair, ScheduleMode.FIPS)


@pytest.fixture(scope="session")
def measured() -> DelayHistogram:
    return measured_histogram()


@pytest.fixture(scope="session")
def agv() -> NetworkGraph:
    return gen_agv_topology()
