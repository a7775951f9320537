"""Brute-force census by enumeration, for checking the incremental engines."""

from collections import defaultdict
from collections.abc import Set
from itertools import combinations
from math import comb

from .directed3 import ELBOW_TYPE, classify_triple
from .graph import DynamicGraph
from .models import (
    CensusSnapshot,
    DirectedCensus,
    Divergence,
    FingerprintMismatch,
    GraphTooLarge,
    PairState,
    QuadCensus,
    VertexId,
)
from .solver import QUAD_MATRIX, TRIAD_MATRIX, multiply
from .undirected4 import QUAD_PAIRS, classify_quad

DEFAULT_CAP = 64

_LEG = {PairState.fwd: 0, PairState.rev: 1, PairState.recip: 2}


def _check_size(graph: DynamicGraph, cap: int) -> list[VertexId]:
    if graph.vertex_count > cap:
        raise GraphTooLarge(
            f"{graph.vertex_count} vertices exceed the oracle cap of {cap}"
        )
    return sorted(graph.vertices())


def census_directed3(graph: DynamicGraph, cap: int = DEFAULT_CAP) -> DirectedCensus:
    vertices = _check_size(graph, cap)
    state = graph.pair_state
    t = [0] * 16
    d = [0] * 7
    for a, b, c in combinations(vertices, 3):
        triad, triangle = classify_triple(state(a, b), state(b, c), state(c, a))
        t[triad] += 1
        if triangle is not None:
            d[triangle] += 1
    return DirectedCensus(n=multiply(TRIAD_MATRIX, t), t=t, d=d)


def census_undirected4(graph: DynamicGraph, cap: int = DEFAULT_CAP) -> QuadCensus:
    vertices = _check_size(graph, cap)
    linked = graph.has_edge
    q = [0] * 11
    for quad in combinations(vertices, 4):
        code = 0
        for bit, (i, j) in enumerate(QUAD_PAIRS):
            if linked(quad[i], quad[j]):
                code |= 1 << bit
        q[classify_quad(code)] += 1

    triads = [0] * 4
    for a, b, c in combinations(vertices, 3):
        triads[linked(a, b) + linked(b, c) + linked(a, c)] += 1
    two_paths = sum(comb(graph.degree(v), 2) for v in vertices)
    return QuadCensus(
        m=multiply(QUAD_MATRIX, q),
        q=q,
        triangles=triads[3],
        two_paths=two_paths,
        triads=triads,
    )


def oracle_snapshot(graph: DynamicGraph, cap: int = DEFAULT_CAP) -> CensusSnapshot:
    if graph.directed:
        return CensusSnapshot(
            fingerprint=graph.fingerprint(), directed=census_directed3(graph, cap)
        )
    return CensusSnapshot(
        fingerprint=graph.fingerprint(), undirected=census_undirected4(graph, cap)
    )


def _components(snapshot: CensusSnapshot) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    if snapshot.directed is not None:
        for prefix in ("t", "n", "d"):
            out += [
                (f"{prefix}{i}", value)
                for i, value in enumerate(getattr(snapshot.directed, prefix))
            ]
    if snapshot.undirected is not None:
        census = snapshot.undirected
        out += [(f"q{i}", value) for i, value in enumerate(census.q)]
        out += [(f"m{i}", value) for i, value in enumerate(census.m)]
        out += [("triangles", census.triangles), ("two_paths", census.two_paths)]
        out += [(f"triad{i}", value) for i, value in enumerate(census.triads)]
    return out


def diff(
    engine: CensusSnapshot, oracle: CensusSnapshot, op_index: int | None = None
) -> Divergence | None:
    """First component where the engine disagrees with the oracle, or None."""
    if engine.fingerprint != oracle.fingerprint:
        raise FingerprintMismatch(
            f"engine graph {engine.fingerprint.digest[:12]} differs from "
            f"oracle graph {oracle.fingerprint.digest[:12]}"
        )
    actual = dict(_components(engine))
    for name, expected in _components(oracle):
        if actual.get(name) != expected:
            return Divergence(
                component=name,
                expected=expected,
                actual=actual.get(name, 0),
                op_index=op_index,
            )
    return None


def recount_elbows(
    graph: DynamicGraph, high: Set[VertexId]
) -> dict[tuple[VertexId, VertexId], tuple[int, ...]]:
    counts: dict[tuple[VertexId, VertexId], list[int]] = defaultdict(lambda: [0] * 9)
    for joint in graph.vertices():
        if joint in high:
            continue
        adjacency = graph.adjacency(joint)
        for i, j in combinations(adjacency, 2):
            leg_i = _LEG[adjacency[i].mirror]
            leg_j = _LEG[adjacency[j].mirror]
            counts[i, j][ELBOW_TYPE[leg_i][leg_j]] += 1
            counts[j, i][ELBOW_TYPE[leg_j][leg_i]] += 1
    return {key: tuple(value) for key, value in counts.items() if any(value)}


def recount_structures(graph: DynamicGraph, high: Set[VertexId]) -> dict[str, dict]:
    """s0..s7 rebuilt from their definitions, in StructureStore.state() layout."""
    p1: dict = defaultdict(lambda: [0, 0])
    p2: dict = defaultdict(lambda: [0] * 5)
    p3: dict = defaultdict(int)
    adj = graph.adjacency

    def key(*vertices: VertexId) -> tuple[VertexId, ...]:
        return tuple(sorted(vertices))

    low = [v for v in graph.vertices() if v not in high]
    for a in low:
        na = adj(a)
        for u, v in combinations(na, 2):
            p2[key(u, v)][0] += 1
        for u, v, w in combinations(na, 3):
            p3[key(u, v, w)] += 1
        for b in na:
            if b in high:
                continue
            nb = adj(b)
            for u in na:
                if u == b:
                    continue
                p1[u][0] += 1
                if u in nb:
                    p1[u][1] += 1
                for v in nb:
                    if v != a and v != u:
                        # Each path is seen once from each end.
                        p2[key(u, v)][1] += 1
            for u, v in combinations([x for x in na if x != b], 2):
                p2[key(u, v)][2] += 1
                p2[key(u, v)][3] += (u in nb) + (v in nb)
            if a < b:
                for u, v in combinations([x for x in na if x in nb], 2):
                    p2[key(u, v)][4] += 1

    for entry in p2.values():
        entry[1] //= 2
    return {
        "p1": {k: tuple(v) for k, v in p1.items() if any(v)},
        "p2": {k: tuple(v) for k, v in p2.items() if any(v)},
        "p3": {k: v for k, v in p3.items() if v},
    }
