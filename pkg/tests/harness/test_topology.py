"""
Tests for harness/topology.py: the AGV evaluation network.
"""
import pytest

from core import NodeRole
from harness.topology import DS_TT, NW_TT, AgvTopologyParams, gen_agv_topology, partition_of


class TestAgvTopology:

    def test_default_size(self, agv):
        assert len(agv) == 24
        assert len(agv.end_stations()) == 12

    def test_translators(self, agv):
        assert agv.role(DS_TT) is NodeRole.DS_TT
        assert agv.role(NW_TT) is NodeRole.NW_TT
        assert agv.has_port(("L0", DS_TT))
        assert agv.has_port((NW_TT, "R0"))

    def test_bridge_is_the_only_wireless_hop(self, agv):
        wireless = sorted(l.port for l in agv.wireless_links)
        assert wireless == [(DS_TT, NW_TT), (NW_TT, DS_TT)]
        assert agv.link((DS_TT, NW_TT)).kind.histogram_ref == "uplink"

    def test_measured_histogram_on_both_directions(self, agv, measured):
        assert agv.link((DS_TT, NW_TT)).kind.histogram.bins == measured.bins
        assert agv.link((NW_TT, DS_TT)).kind.histogram.bins == measured.bins

    def test_links_are_full_duplex(self, agv):
        for src, dst in agv.links:
            assert agv.has_port((dst, src))

    def test_larger_backbone(self):
        g = gen_agv_topology(AgvTopologyParams(agv_end_stations=2, backbone_depth=4, stations_per_leaf=1))
        # 3 + 2 AGV, 15 + 8 backbone, 2 translators
        assert len(g) == 30

    @pytest.mark.parametrize("kwargs", [
        {"agv_end_stations": 0},
        {"backbone_depth": 1},
        {"stations_per_leaf": 0},
    ])
    def test_invalid_params(self, kwargs):
        with pytest.raises(ValueError):
            AgvTopologyParams(**kwargs)

    @pytest.mark.parametrize("node, part", [
        ("L0", "agv"), ("L5", "agv"), ("R0", "backbone"), ("R14", "backbone"), (DS_TT, None), (NW_TT, None),
    ])
    def test_partition_of(self, node, part):
        assert partition_of(node) == part
