"""Directed three-vertex census maintained under arc updates.

Elbows are directed 2-paths i - l - j through a low joint l. Each endpoint's leg is
read from its own pair state towards the joint: fwd means the arc points into the
joint, rev away from it, recip both ways.
"""

from itertools import permutations
from math import comb
from typing import Any, NamedTuple, Unpack

from .engine import CensusEngine, EngineKwargs
from .models import (
    CensusSnapshot,
    DirectedCensus,
    EdgeTransition,
    PairState,
    VertexId,
    VertexStats,
)
from .solver import TRIAD_MATRIX

# Bit positions of the six arcs of a triple on vertices 0, 1, 2.
_ARC_BITS = {(0, 1): 0, (1, 0): 1, (0, 2): 2, (2, 0): 3, (1, 2): 4, (2, 1): 5}

_REPRESENTATIVES: tuple[tuple[tuple[int, int], ...], ...] = (
    (),
    ((0, 1),),
    ((0, 1), (1, 0)),
    ((0, 1), (1, 2)),
    ((0, 2), (1, 2)),
    ((0, 1), (0, 2)),
    ((0, 1), (1, 0), (0, 2)),
    ((0, 1), (1, 0), (2, 0)),
    ((0, 1), (1, 2), (2, 0)),
    ((0, 1), (1, 2), (0, 2)),
    ((0, 1), (1, 0), (0, 2), (2, 0)),
    ((0, 1), (1, 0), (0, 2), (1, 2)),
    ((0, 1), (1, 0), (2, 0), (2, 1)),
    ((0, 1), (1, 0), (0, 2), (2, 1)),
    ((0, 1), (1, 0), (1, 2), (2, 1), (0, 2)),
    ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)),
)

# Triad class -> directed triangle class, for triads with all three pairs linked.
TRIANGLE_OF_TRIAD = {8: 0, 9: 1, 13: 2, 11: 3, 12: 4, 14: 5, 15: 6}


def _code(arcs) -> int:
    return sum(1 << _ARC_BITS[arc] for arc in arcs)


def _canonical(code: int) -> int:
    arcs = [arc for arc, bit in _ARC_BITS.items() if code >> bit & 1]
    return min(
        _code((p[a], p[b]) for a, b in arcs) for p in permutations(range(3))
    )


def _build_class_table() -> tuple[int, ...]:
    by_canonical = {
        _canonical(_code(arcs)): cls for cls, arcs in enumerate(_REPRESENTATIVES)
    }
    table = []
    for code in range(64):
        canonical = _canonical(code)
        if canonical not in by_canonical:
            raise RuntimeError(f"arc code {code:06b} has no triad class")
        table.append(by_canonical[canonical])
    return tuple(table)


_CLASS_OF_CODE = _build_class_table()


def _triple_code(ab: PairState, bc: PairState, ca: PairState) -> int:
    # a, b, c = 0, 1, 2; a pair state's fwd bit is the arc in the named direction.
    return (
        (ab & 1)
        | (ab >> 1) << 1
        | (ca >> 1) << 2
        | (ca & 1) << 3
        | (bc & 1) << 4
        | (bc >> 1) << 5
    )


class TripleClass(NamedTuple):
    triad: int
    triangle: int | None


def classify_triple(ab: PairState, bc: PairState, ca: PairState) -> TripleClass:
    """Triad class (0..15) of vertices a, b, c, and its triangle class (0..6) if any."""
    triad = _CLASS_OF_CODE[_triple_code(ab, bc, ca)]
    return TripleClass(triad, TRIANGLE_OF_TRIAD.get(triad))


# Legs
TOWARD, AWAY, BOTH = 0, 1, 2
_LEG = {PairState.fwd: TOWARD, PairState.rev: AWAY, PairState.recip: BOTH}
_LEG_STATE = (PairState.fwd, PairState.rev, PairState.recip)

# ELBOW_TYPE[leg of i][leg of j] for the elbow keyed (i, j).
ELBOW_TYPE = (
    (3, 0, 6),
    (1, 2, 7),
    (5, 4, 8),
)
ELBOW_LEGS = tuple(
    next((a, b) for a in range(3) for b in range(3) if ELBOW_TYPE[a][b] == k)
    for k in range(9)
)
MIRROR_TYPE = (1, 0, 2, 3, 7, 6, 5, 4, 8)


def _triangle_table() -> dict[PairState, tuple[int, ...]]:
    # Triangle class of (u, v, joint) for pair state (u, v) and elbow type at (u, v).
    table = {}
    for state in (PairState.fwd, PairState.rev, PairState.recip):
        row = []
        for leg_u, leg_v in ELBOW_LEGS:
            cls = classify_triple(
                state, _LEG_STATE[leg_v], _LEG_STATE[leg_u].mirror
            ).triangle
            assert cls is not None
            row.append(cls)
        table[state] = tuple(row)
    return table


TRIANGLE_OF_ELBOW = _triangle_table()


class ElbowStore:
    """Elbow counts e0..e8 per ordered endpoint pair; all-zero entries are dropped."""

    def __init__(self) -> None:
        self.entries: dict[tuple[VertexId, VertexId], list[int]] = {}

    def get(self, i: VertexId, j: VertexId) -> tuple[int, ...]:
        counts = self.entries.get((i, j))
        return tuple(counts) if counts else (0,) * 9

    def bump(self, i: VertexId, j: VertexId, kind: int, delta: int) -> None:
        key = (i, j)
        counts = self.entries.get(key)
        if counts is None:
            counts = self.entries[key] = [0] * 9
        counts[kind] += delta
        if not any(counts):
            del self.entries[key]

    def bump_pair(self, i: VertexId, j: VertexId, kind: int, delta: int) -> None:
        self.bump(i, j, kind, delta)
        self.bump(j, i, MIRROR_TYPE[kind], delta)

    def __len__(self) -> int:
        return len(self.entries)


def _vertex_terms(s: VertexStats) -> tuple[int, int, int, int, int, int]:
    i, o, r = s
    pairs_r = comb(r, 2)
    return (
        (i + r) * (o + r) - r,
        comb(i + r, 2),
        comb(o + r, 2),
        2 * pairs_r + o * r,
        2 * pairs_r + i * r,
        pairs_r,
    )


class Directed3Engine(CensusEngine):
    """Non-induced (n0..n15) and induced (t0..t15) directed triad counts.

    The per-vertex aggregates hold n3, n4, n5, n6, n7 and n10; n0..n2 come from the
    vertex, arc and reciprocal-pair totals and n8..n15 from the triangle counts.
    """

    directed = True
    matrix = TRIAD_MATRIX

    def __init__(self, **kwargs: Unpack[EngineKwargs]) -> None:
        super().__init__(**kwargs)
        self.elbows = ElbowStore()
        self.d = [0] * 7
        self.aggregates = [0] * 6

    # updates

    def insert_arc(self, u: VertexId, v: VertexId) -> EdgeTransition:
        transition = self.graph.arc_transition(u, v, add=True)
        self._apply(transition, add=True)
        return transition

    def delete_arc(self, u: VertexId, v: VertexId) -> EdgeTransition:
        transition = self.graph.arc_transition(u, v, add=False)
        self._apply(transition, add=False)
        return transition

    def _apply(self, transition: EdgeTransition, add: bool) -> None:
        (u, v), before, after = transition
        graph = self.graph

        self._update_triangles(u, v, before, after)

        self._shift_aggregates(u, v, -1)
        if add:
            graph.insert_arc(u, v)
        else:
            graph.delete_arc(u, v)
        self._shift_aggregates(u, v, 1)

        self._update_elbows(u, v, before, after)

        if before is PairState.none:
            self._process(self.partition.on_edge_change(u, v, 1))
        elif after is PairState.none:
            self._process(self.partition.on_edge_change(u, v, -1))

    def _update_triangles(
        self, u: VertexId, v: VertexId, before: PairState, after: PairState
    ) -> None:
        d = self.d
        counts = self.elbows.entries.get((u, v))
        if counts:
            old_row = TRIANGLE_OF_ELBOW.get(before)
            new_row = TRIANGLE_OF_ELBOW.get(after)
            for kind, count in enumerate(counts):
                if not count:
                    continue
                if old_row:
                    d[old_row[kind]] -= count
                if new_row:
                    d[new_row[kind]] += count

        adj_u = self.graph.adjacency(u)
        adj_v = self.graph.adjacency(v)
        for w in self._high:
            if w == u or w == v:
                continue
            vw = adj_v.get(w)
            wu = adj_u.get(w)
            if vw is None or wu is None:
                continue
            wu = wu.mirror
            if before is not PairState.none:
                d[TRIANGLE_OF_TRIAD[_CLASS_OF_CODE[_triple_code(before, vw, wu)]]] -= 1
            if after is not PairState.none:
                d[TRIANGLE_OF_TRIAD[_CLASS_OF_CODE[_triple_code(after, vw, wu)]]] += 1

    def _shift_aggregates(self, u: VertexId, v: VertexId, sign: int) -> None:
        aggregates = self.aggregates
        for x in (u, v):
            for k, term in enumerate(_vertex_terms(self.graph.stats(x))):
                aggregates[k] += sign * term

    def _update_elbows(
        self, u: VertexId, v: VertexId, before: PairState, after: PairState
    ) -> None:
        # Joint x, other endpoint y; y's leg toward x is state(y, x).
        for x, y, old, new in (
            (u, v, before.mirror, after.mirror),
            (v, u, before, after),
        ):
            if x in self._high:
                continue
            for w, state in self.graph.adjacency(x).items():
                if w == y:
                    continue
                leg_w = _LEG[state.mirror]
                if old is not PairState.none:
                    self.elbows.bump_pair(y, w, ELBOW_TYPE[_LEG[old]][leg_w], -1)
                if new is not PairState.none:
                    self.elbows.bump_pair(y, w, ELBOW_TYPE[_LEG[new]][leg_w], 1)

    def _interior_change(self, w: VertexId, sign: int) -> None:
        legs = [(a, _LEG[state.mirror]) for a, state in self.graph.adjacency(w).items()]
        bump = self.elbows.bump
        for a, leg_a in legs:
            for b, leg_b in legs:
                if a != b:
                    bump(a, b, ELBOW_TYPE[leg_a][leg_b], sign)

    # links

    def has_link(self, u: VertexId, v: VertexId) -> bool:
        return self.graph.has_arc(u, v)

    def insert_link(self, u: VertexId, v: VertexId) -> None:
        self.insert_arc(u, v)

    def delete_link(self, u: VertexId, v: VertexId) -> None:
        self.delete_arc(u, v)

    # counts

    def triangle_counts(self) -> list[int]:
        return list(self.d)

    def non_induced_counts(self) -> list[int]:
        n = self.graph.vertex_count
        d0, d1, d2, d3, d4, d5, d6 = self.d
        n3, n4, n5, n6, n7, n10 = self.aggregates
        return [
            comb(n, 3),
            self.graph.arc_count * max(n - 2, 0),
            self.graph.recip_pairs * max(n - 2, 0),
            n3,
            n4,
            n5,
            n6,
            n7,
            d0 + d2 + d5 + 2 * d6,
            d1 + d2 + 2 * d3 + 2 * d4 + 3 * d5 + 6 * d6,
            n10,
            d3 + d5 + 3 * d6,
            d4 + d5 + 3 * d6,
            d2 + 2 * d5 + 6 * d6,
            d5 + 6 * d6,
            d6,
        ]

    def snapshot(self) -> CensusSnapshot:
        return CensusSnapshot(
            fingerprint=self.graph.fingerprint(),
            directed=DirectedCensus(
                n=self.non_induced_counts(),
                t=self.induced_counts(),
                d=self.triangle_counts(),
            ),
        )

    def state_dict(self) -> dict[str, Any]:
        return {
            "d": list(self.d),
            "aggregates": list(self.aggregates),
            "elbows": {key: tuple(counts) for key, counts in self.elbows.entries.items()},
            "arcs": sorted(self.graph.arcs()),
            "vertices": sorted(self.graph.vertices()),
            "high": sorted(self._high),
        }

    def dictionary_size(self) -> int:
        return len(self.elbows)
