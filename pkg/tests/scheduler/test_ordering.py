"""
Tests for scheduler/ordering.py — batch sequences, frame insertion and
merge candidates.
"""
import pytest

from budgets import pdb_for_link
from core import expand_frames, ms
from scheduler import (
    Batch,
    MergeKind,
    TransmissionOrdering,
    derive_configuration,
    insert_frames,
    merge_candidates,
    phi_lower_bound,
)
from tests.builders import make_stream

H = ms(10)


def _pdbs(network, *streams):
    return {(p, s.id): pdb_for_link(network.link(p), s) for s in streams for p in s.ports}


@pytest.fixture()
def first_round(network, pair):
    """Ordering and configuration after admitting w0 alone."""
    w0, _ = pair
    pdbs = _pdbs(network, *pair)
    ordering = insert_frames(TransmissionOrdering(), w0, pdbs, {}, H)
    config = derive_configuration(ordering, network, {"w0": w0}, pdbs, H)
    return ordering, config, pdbs


# ===========================================================
# Batch
# ===========================================================

class TestBatch:

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Batch(())

    def test_with_frame_and_without(self, pair):
        f0 = expand_frames(pair[0], H)[0]
        f1 = expand_frames(pair[1], H)[0]
        b = Batch((f0,))
        assert b.with_frame(f1).frames == (f0, f1)
        assert b.with_frame(f1, first=True).frames == (f1, f0)
        assert b.with_frame(f1).without(f0).frames == (f1,)
        assert f0 in b and len(b) == 1


# ===========================================================
# Insertion
# ===========================================================

class TestInsertFrames:

    def test_phi_lower_bound(self, network, pair):
        w1 = pair[1]
        pdbs = _pdbs(network, *pair)
        f = expand_frames(w1, H)[0]
        assert phi_lower_bound(w1, f, 1, pdbs) == 0
        assert phi_lower_bound(w1, f, 3, pdbs) == 16_000
        assert phi_lower_bound(w1, f, 4, pdbs) == 3_016_000
        with pytest.raises(ValueError):
            phi_lower_bound(w1, f, 6, pdbs)

    def test_singletons_on_every_hop(self, first_round, pair):
        ordering, _, _ = first_round
        f0 = expand_frames(pair[0], H)[0]
        for port in pair[0].ports:
            assert ordering.batches(port) == [Batch((f0,))]
        assert ordering.route("w0") == pair[0].ports

    def test_original_untouched(self, network, pair):
        empty = TransmissionOrdering()
        insert_frames(empty, pair[0], _pdbs(network, *pair), {}, H)
        assert empty.ports == []

    def test_second_stream_goes_behind(self, first_round, pair):
        ordering, config, pdbs = first_round
        w0, w1 = pair
        f0, f1 = expand_frames(w0, H)[0], expand_frames(w1, H)[0]
        after = insert_frames(ordering, w1, pdbs, config.schedule.smin_map(), H)
        for port in (("S1", "DS"), ("DS", "NW"), ("NW", "S2")):
            assert after.batches(port) == [Batch((f0,)), Batch((f1,))]
        assert after.batches(("S2", "L2")) == [Batch((f1,))]

    def test_early_frame_goes_ahead(self, network):
        late = make_stream("late", ("T1", "S1", "T2"), phase=ms(5))
        early = make_stream("early", ("T1", "S1", "T2"), phase=0)
        pdbs = _pdbs(network, late, early)
        ordering = insert_frames(TransmissionOrdering(), late, pdbs, {}, H)
        config = derive_configuration(ordering, network, {"late": late}, pdbs, H)
        after = insert_frames(ordering, early, pdbs, config.schedule.smin_map(), H)
        assert [b.frames[0].stream_id for b in after.batches(("T1", "S1"))] == ["early", "late"]


# ===========================================================
# Merge candidates
# ===========================================================

class TestMergeCandidates:

    def test_wired_stream_has_only_unmerged(self, network):
        s = make_stream("e", ("T1", "S1", "T2"))
        o = insert_frames(TransmissionOrdering(), s, _pdbs(network, s), {}, H)
        assert [c.kind for c in merge_candidates(o, s, network)] == [MergeKind.NONE]

    def test_predecessor_merge_after_bridge(self, first_round, network, pair):
        ordering, config, pdbs = first_round
        w0, w1 = pair
        after = insert_frames(ordering, w1, pdbs, config.schedule.smin_map(), H)
        candidates = merge_candidates(after, w1, network)
        assert [c.kind for c in candidates] == [MergeKind.NONE, MergeKind.PREDECESSOR]

        merged = candidates[1].ordering
        f0, f1 = expand_frames(w0, H)[0], expand_frames(w1, H)[0]
        assert merged.batches(("NW", "S2")) == [Batch((f0, f1))]
        # the hops before the bridge keep their singletons
        assert merged.batches(("DS", "NW")) == [Batch((f0,)), Batch((f1,))]
        # unmerged candidate is left alone
        assert len(after.batches(("NW", "S2"))) == 2

    def test_5g_last_hop_has_no_merge(self, network):
        s = make_stream("edge", ("T1", "S1", "DS", "NW"))
        o = insert_frames(TransmissionOrdering(), s, _pdbs(network, s), {}, H)
        assert len(merge_candidates(o, s, network)) == 1
