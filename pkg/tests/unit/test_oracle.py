import pytest

from dyn_census.directed3 import Directed3Engine
from dyn_census.graph import DynamicGraph
from dyn_census.models import FingerprintMismatch, GraphTooLarge
from dyn_census.oracle import census_directed3, census_undirected4, diff, oracle_snapshot


def _directed(arcs, vertices=()) -> DynamicGraph:
    g = DynamicGraph()
    for v in sorted({*vertices, *(x for arc in arcs for x in arc)}):
        g.add_vertex(v)
    for u, v in arcs:
        g.insert_arc(u, v)
    return g


def test_directed_census_of_cycle():
    census = census_directed3(_directed([(0, 1), (1, 2), (2, 0)]))
    assert census.t == [0] * 8 + [1] + [0] * 7
    assert census.d == [1, 0, 0, 0, 0, 0, 0]
    assert census.n[1] == 3


def test_undirected_census_of_path():
    g = DynamicGraph(directed=False)
    for v in range(4):
        g.add_vertex(v)
    for u, v in [(0, 1), (1, 2), (2, 3)]:
        g.insert_edge(u, v)
    census = census_undirected4(g)
    assert census.q == [0] * 6 + [1] + [0] * 4
    assert census.two_paths == 2
    assert census.triads == [0, 2, 2, 0]
    assert census.triangles == 0


def test_census_is_invariant_under_relabeling():
    arcs = [(0, 1), (1, 0), (1, 2), (3, 2), (2, 0), (3, 4)]
    relabel = {0: 40, 1: 7, 2: 19, 3: 3, 4: 100}
    original = census_directed3(_directed(arcs))
    renamed = census_directed3(_directed([(relabel[u], relabel[v]) for u, v in arcs]))
    assert original == renamed


def test_cap_is_enforced():
    g = _directed([], vertices=range(5))
    with pytest.raises(GraphTooLarge):
        census_directed3(g, cap=4)
    assert census_directed3(g, cap=5).t[0] == 10


def test_diff_finds_first_disagreement():
    engine = Directed3Engine()
    for v in range(4):
        engine.add_vertex(v)
    for u, v in [(0, 1), (1, 2), (2, 3)]:
        engine.insert_arc(u, v)
    snapshot = engine.snapshot()
    oracle = oracle_snapshot(engine.graph)
    assert diff(snapshot, oracle) is None

    t = list(snapshot.directed.t)
    t[5] += 1
    tampered = snapshot.model_copy(
        update={"directed": snapshot.directed.model_copy(update={"t": t})}
    )
    divergence = diff(tampered, oracle, op_index=12)
    assert divergence.component == "t5"
    assert divergence.actual == divergence.expected + 1
    assert divergence.op_index == 12


def test_diff_rejects_different_graphs():
    a = oracle_snapshot(_directed([(0, 1)]))
    b = oracle_snapshot(_directed([(1, 0)]))
    with pytest.raises(FingerprintMismatch):
        diff(a, b)
