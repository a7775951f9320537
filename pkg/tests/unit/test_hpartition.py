import random

from hypothesis import given, settings
from hypothesis import strategies as st

from dyn_census.graph import DynamicGraph
from dyn_census.hpartition import HIndexTracker, HPartition, ShuffledPartition, h_index_of
from dyn_census.models import Direction, Side


def _partitioned(n: int, factory=HPartition):
    g = DynamicGraph(directed=False)
    p = factory(g)
    for v in range(n):
        g.add_vertex(v)
        p.add_vertex(v)
    return g, p


def _toggle(g, p, u, v):
    if g.has_edge(u, v):
        g.delete_edge(u, v)
        return p.on_edge_change(u, v, -1)
    g.insert_edge(u, v)
    return p.on_edge_change(u, v, 1)


def _assert_contract(g, p, touched):
    h = p.h_index()
    assert h == h_index_of(g.degree(v) for v in g.vertices())
    for v in p.high:
        assert g.degree(v) >= (h + 1) // 2
    assert len(p.high) <= 4 * h + 4
    for v in touched:
        if v not in p.high:
            assert g.degree(v) < 2 * max(h, 1)


def test_h_index_of():
    assert h_index_of([]) == 0
    assert h_index_of([3, 3, 3, 3]) == 3
    assert h_index_of([5, 1, 1, 1, 1, 1]) == 1
    assert h_index_of([2, 2, 2]) == 2
    assert h_index_of([1, 1]) == 1
    assert h_index_of([0, 0, 0]) == 0


def test_k4_and_triangle():
    g, p = _partitioned(4)
    for u, v in [(0, 1), (1, 2), (0, 2)]:
        _toggle(g, p, u, v)
    assert p.h_index() == 2
    for u, v in [(0, 3), (1, 3), (2, 3)]:
        _toggle(g, p, u, v)
    assert p.h_index() == 3


def test_star_center_is_promoted():
    g, p = _partitioned(6)
    events = []
    for leaf in range(1, 6):
        events += _toggle(g, p, 0, leaf)
    assert p.h_index() == 1
    assert p.partition_of(0) is Side.high
    assert p.partition_of(3) is Side.low
    assert [(e.vertex, e.direction) for e in events] == [(0, Direction.promote)]


def test_fresh_vertices_are_low_and_empty_graph_has_h_zero():
    g, p = _partitioned(3)
    assert p.h_index() == 0
    assert {p.partition_of(v) for v in range(3)} == {Side.low}


def test_single_edge():
    g, p = _partitioned(2)
    assert _toggle(g, p, 0, 1) == []
    assert p.h_index() == 1


def test_removing_a_high_vertex_drops_it_silently():
    g, p = _partitioned(3)
    p.high.add(2)
    g.remove_vertex(2)
    p.remove_vertex(2)
    assert 2 not in p.high
    assert p.h_index() == 0


def test_tracker_follows_unit_moves():
    tracker = HIndexTracker()
    degrees = [0] * 6
    for _ in degrees:
        tracker.add_vertex()
    rng = random.Random(3)
    for _ in range(500):
        v = rng.randrange(len(degrees))
        old = degrees[v]
        new = old + 1 if old == 0 or rng.random() < 0.6 else old - 1
        degrees[v] = new
        previous = tracker.h
        tracker.move(old, new)
        assert tracker.h == h_index_of(degrees)
        assert abs(tracker.h - previous) <= 1


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=14),
    pairs=st.lists(st.tuples(st.integers(0, 13), st.integers(0, 13)), max_size=150),
)
def test_contract_holds_after_every_update(n, pairs):
    g, p = _partitioned(n)
    for u, v in pairs:
        u, v = u % n, v % n
        if u == v:
            continue
        previous = p.h_index()
        _toggle(g, p, u, v)
        assert abs(p.h_index() - previous) <= 1
        _assert_contract(g, p, (u, v))


def test_contract_on_hub_heavy_stream():
    g, p = _partitioned(60)
    rng = random.Random(11)
    weights = [(i + 1) ** -1.5 for i in range(60)]
    for _ in range(2000):
        u, v = rng.choices(range(60), weights=weights, k=2)
        if u != v:
            _toggle(g, p, u, v)
            _assert_contract(g, p, (u, v))


def test_shuffled_partition_with_zero_rate_never_moves():
    g, p = _partitioned(5, lambda graph: ShuffledPartition(graph, move_rate=0.0))
    for u, v in [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]:
        assert _toggle(g, p, u, v) == []
    assert p.high == set()
    assert p.h_index() == 2


def test_shuffled_partition_flips_membership():
    g, p = _partitioned(5, lambda graph: ShuffledPartition(graph, seed=1, move_rate=1.0))
    events = _toggle(g, p, 0, 1)
    assert events
    for event in events:
        assert event.direction in (Direction.promote, Direction.demote)
    assert p.moves == len(events)


def test_single_vertex_degree_changes():
    g, p = _partitioned(6)
    events = []
    for leaf in range(1, 6):
        g.insert_edge(0, leaf)
        events += p.on_degree_change(leaf, 1)
        events += p.on_degree_change(0, 1)
    assert p.h_index() == 1
    assert p.partition_of(0) is Side.high
    assert [e.vertex for e in events] == [0]
