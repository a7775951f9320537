from functools import partial

import pytest

from dyn_census.directed3 import (
    MIRROR_TYPE,
    TRIANGLE_OF_ELBOW,
    Directed3Engine,
    classify_triple,
)
from dyn_census.hpartition import ShuffledPartition
from dyn_census.models import (
    Direction,
    DuplicateArc,
    MissingArc,
    PairState,
    PartitionEvent,
    SelfLoop,
)
from dyn_census.oracle import census_directed3, recount_elbows

NONE, FWD, REV, RECIP = PairState.none, PairState.fwd, PairState.rev, PairState.recip


def _engine(n: int, arcs=(), **kwargs) -> Directed3Engine:
    engine = Directed3Engine(**kwargs)
    for v in range(n):
        engine.add_vertex(v)
    for u, v in arcs:
        engine.insert_arc(u, v)
    return engine


def _all_low(n: int, arcs=()) -> Directed3Engine:
    return _engine(n, arcs, partition=partial(ShuffledPartition, move_rate=0.0))


def _assert_matches_oracle(engine: Directed3Engine) -> None:
    census = census_directed3(engine.graph)
    assert engine.non_induced_counts() == census.n
    assert engine.induced_counts() == census.t
    assert engine.triangle_counts() == census.d


def test_classify_triple():
    assert classify_triple(NONE, NONE, NONE) == (0, None)
    assert classify_triple(RECIP, RECIP, RECIP) == (15, 6)
    assert classify_triple(FWD, FWD, NONE).triad == 3
    assert classify_triple(FWD, FWD, FWD) == (8, 0)
    # a->b, b->c, a->c is transitive
    assert classify_triple(FWD, FWD, REV) == (9, 1)
    assert classify_triple(RECIP, NONE, NONE).triad == 2


def test_classify_triple_is_rotation_invariant():
    states = (NONE, FWD, REV, RECIP)
    for ab in states:
        for bc in states:
            for ca in states:
                assert classify_triple(ab, bc, ca) == classify_triple(bc, ca, ab)
                # reversing the orientation mirrors every pair state
                assert classify_triple(ab, bc, ca) == classify_triple(
                    ca.mirror, bc.mirror, ab.mirror
                )


def test_triangle_table_covers_every_elbow():
    for state in (FWD, REV, RECIP):
        assert len(TRIANGLE_OF_ELBOW[state]) == 9
    # u->v, v->joint and joint->u make a cycle
    assert TRIANGLE_OF_ELBOW[FWD][1] == 0
    assert TRIANGLE_OF_ELBOW[RECIP][8] == 6


def test_cyclic_triangle():
    engine = _engine(3, [(1, 2), (2, 0)])
    engine.insert_arc(0, 1)
    assert engine.triangle_counts() == [1, 0, 0, 0, 0, 0, 0]
    assert engine.induced_counts()[8] == 1
    _assert_matches_oracle(engine)


def test_closing_the_last_reciprocal_pair():
    engine = _engine(3, [(0, 2), (2, 0), (1, 2), (2, 1), (0, 1)])
    assert engine.triangle_counts()[5] == 1
    engine.insert_arc(1, 0)
    assert engine.triangle_counts() == [0, 0, 0, 0, 0, 0, 1]
    assert engine.induced_counts() == [0] * 15 + [1]
    assert engine.non_induced_counts()[14] == 6
    _assert_matches_oracle(engine)


def test_single_arc_and_single_pair():
    engine = _engine(3, [(0, 1)])
    assert engine.induced_counts()[1] == 1
    assert engine.non_induced_counts()[1] == 1
    engine.insert_arc(1, 0)
    assert engine.induced_counts() == [0, 0, 1] + [0] * 13


def test_empty_three_vertices():
    assert _engine(3).induced_counts() == [1] + [0] * 15


def test_delete_arc_of_full_triangle():
    engine = _engine(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
    engine.delete_arc(0, 1)
    assert engine.triangle_counts() == [0, 0, 0, 0, 0, 1, 0]
    _assert_matches_oracle(engine)


def test_delete_arc_of_two_path():
    engine = _engine(4, [(0, 1), (1, 2)])
    before = engine.non_induced_counts()[3]
    engine.delete_arc(1, 2)
    assert engine.non_induced_counts()[3] == before - 1


def test_insert_then_delete_restores_state():
    engine = _all_low(5, [(0, 1), (1, 2), (2, 0), (3, 0), (0, 3), (4, 1)])
    before = engine.state_dict()
    engine.insert_arc(1, 0)
    engine.delete_arc(1, 0)
    assert engine.state_dict() == before
    engine.insert_arc(4, 2)
    engine.delete_arc(4, 2)
    assert engine.state_dict() == before


def test_failed_operations_leave_engine_untouched():
    engine = _engine(3, [(0, 1)])
    before = engine.state_dict()
    with pytest.raises(DuplicateArc):
        engine.insert_arc(0, 1)
    with pytest.raises(MissingArc):
        engine.delete_arc(1, 0)
    with pytest.raises(SelfLoop):
        engine.insert_arc(2, 2)
    assert engine.state_dict() == before


def test_demoting_a_joint_adds_its_elbows():
    engine = _all_low(3)
    engine.on_partition_event(PartitionEvent(2, Direction.promote))
    engine.insert_arc(2, 0)
    engine.insert_arc(1, 2)
    assert engine.elbows.entries == {}

    engine.on_partition_event(PartitionEvent(2, Direction.demote))
    assert engine.elbows.get(1, 0)[0] == 1
    assert engine.elbows.get(0, 1)[1] == 1
    assert len(engine.elbows) == 2


def test_demoting_a_joint_with_reciprocal_legs():
    engine = _all_low(3)
    engine.on_partition_event(PartitionEvent(2, Direction.promote))
    for u, v in [(0, 2), (2, 0), (1, 2), (2, 1)]:
        engine.insert_arc(u, v)
    engine.on_partition_event(PartitionEvent(2, Direction.demote))
    assert engine.elbows.get(0, 1)[8] == 1
    assert engine.elbows.get(1, 0)[8] == 1


def test_promoting_an_isolated_vertex_changes_nothing():
    engine = _all_low(2)
    engine.on_partition_event(PartitionEvent(1, Direction.promote))
    assert engine.elbows.entries == {}
    assert engine.high == {1}


def test_elbows_match_recount_and_mirror():
    engine = _engine(
        6,
        [(0, 1), (1, 0), (1, 2), (3, 1), (4, 1), (1, 5), (5, 1), (2, 3), (0, 4), (2, 5)],
        partition=partial(ShuffledPartition, seed=4, move_rate=0.5),
    )
    stored = {key: tuple(v) for key, v in engine.elbows.entries.items()}
    assert stored == recount_elbows(engine.graph, engine.high)
    for (i, j), counts in engine.elbows.entries.items():
        mirrored = engine.elbows.get(j, i)
        assert all(counts[k] == mirrored[MIRROR_TYPE[k]] for k in range(9))
    _assert_matches_oracle(engine)


def test_change_statistics_leaves_counts_unchanged():
    engine = _engine(4, [(0, 1), (1, 2), (2, 0), (3, 2)])
    induced, non_induced = engine.induced_counts(), engine.non_induced_counts()

    delta_induced, delta_non = engine.change_statistics(0, 3)
    assert engine.induced_counts() == induced
    assert engine.non_induced_counts() == non_induced

    engine.insert_arc(0, 3)
    assert [a + d for a, d in zip(induced, delta_induced)] == engine.induced_counts()
    assert [a + d for a, d in zip(non_induced, delta_non)] == engine.non_induced_counts()


def test_snapshot_and_dictionary_size():
    engine = _engine(3, [(0, 1), (1, 2)])
    snap = engine.snapshot()
    assert snap.directed.t == engine.induced_counts()
    assert snap.fingerprint == engine.graph.fingerprint()
    assert engine.dictionary_size() == len(engine.elbows)
