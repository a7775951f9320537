"""Undirected four-vertex census maintained under edge updates.

Partial structures whose interior vertices are all low are stored per endpoint key:

    s0[u]        paths u-a-b
    s1[u]        paths u-a-b closed by b-u (twice the low triangles through u)
    s2[u,v]      a adjacent to u and v
    s3[u,v]      paths u-a-b-v
    s4[u,v]      ordered (a, b): a adjacent to u and v, b adjacent to a, b not u or v
    s5[u,v]      s4 configurations weighted by how many of u, v are adjacent to b
    s6[u,v]      unordered {a, b}: a, b adjacent to each other and to both u and v
    s7[u,v,w]    a adjacent to u, v and w

Interior vertices (a, b) are low; endpoints may be on either side. All vertices of a
structure are distinct.
"""

from collections.abc import Iterable
from itertools import combinations
from math import comb
from typing import Any, Unpack

from .engine import CensusEngine, EngineKwargs, choose
from .models import CensusSnapshot, QuadCensus, VertexId
from .solver import QUAD_MATRIX, UNDIRECTED_TRIAD_MATRIX, solve_unit_upper_triangular

# Bit positions of the six pairs of a quadruple on vertices 0..3.
QUAD_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# (edges, sorted degrees, triangles) -> class
_QUAD_KEYS = {
    (0, (0, 0, 0, 0), 0): 0,
    (1, (0, 0, 1, 1), 0): 1,
    (2, (0, 1, 1, 2), 0): 2,
    (2, (1, 1, 1, 1), 0): 3,
    (3, (1, 1, 1, 3), 0): 4,
    (3, (0, 2, 2, 2), 1): 5,
    (3, (1, 1, 2, 2), 0): 6,
    (4, (1, 2, 2, 3), 1): 7,
    (4, (2, 2, 2, 2), 0): 8,
    (5, (2, 2, 3, 3), 2): 9,
    (6, (3, 3, 3, 3), 4): 10,
}


def _quad_key(code: int) -> tuple[int, tuple[int, ...], int]:
    edges = {pair for bit, pair in enumerate(QUAD_PAIRS) if code >> bit & 1}
    degrees = [0] * 4
    for a, b in edges:
        degrees[a] += 1
        degrees[b] += 1
    triangles = sum(
        1
        for a, b, c in combinations(range(4), 3)
        if {(a, b), (a, c), (b, c)} <= edges
    )
    return len(edges), tuple(sorted(degrees)), triangles


_QUAD_CLASS = tuple(_QUAD_KEYS[_quad_key(code)] for code in range(64))


def classify_quad(code: int) -> int:
    """Class 0..10 of a four-vertex graph given as six pair bits in QUAD_PAIRS order."""
    return _QUAD_CLASS[code]


def _key2(u: VertexId, v: VertexId) -> tuple[VertexId, VertexId]:
    return (u, v) if u < v else (v, u)


def _key3(u: VertexId, v: VertexId, w: VertexId) -> tuple[VertexId, VertexId, VertexId]:
    return tuple(sorted((u, v, w)))  # type: ignore[return-value]


class StructureStore:
    """Dictionaries of s0..s7 keyed by one, two or three endpoints; zeros are dropped."""

    def __init__(self) -> None:
        self.p1: dict[VertexId, list[int]] = {}
        self.p2: dict[tuple[VertexId, VertexId], list[int]] = {}
        self.p3: dict[tuple[VertexId, VertexId, VertexId], int] = {}

    def s0(self, u: VertexId) -> int:
        entry = self.p1.get(u)
        return entry[0] if entry else 0

    def s1(self, u: VertexId) -> int:
        entry = self.p1.get(u)
        return entry[1] if entry else 0

    def pair(self, u: VertexId, v: VertexId, k: int) -> int:
        """s2..s6 of {u, v} for k = 2..6."""
        entry = self.p2.get(_key2(u, v))
        return entry[k - 2] if entry else 0

    def s7(self, u: VertexId, v: VertexId, w: VertexId) -> int:
        return self.p3.get(_key3(u, v, w), 0)

    def bump1(self, u: VertexId, k: int, delta: int) -> None:
        entry = self.p1.get(u)
        if entry is None:
            entry = self.p1[u] = [0, 0]
        entry[k] += delta
        if not (entry[0] or entry[1]):
            del self.p1[u]

    def bump2(self, u: VertexId, v: VertexId, k: int, delta: int) -> None:
        key = _key2(u, v)
        entry = self.p2.get(key)
        if entry is None:
            entry = self.p2[key] = [0] * 5
        entry[k - 2] += delta
        if not any(entry):
            del self.p2[key]

    def bump3(self, u: VertexId, v: VertexId, w: VertexId, delta: int) -> None:
        key = _key3(u, v, w)
        value = self.p3.get(key, 0) + delta
        if value:
            self.p3[key] = value
        else:
            self.p3.pop(key, None)

    def state(self) -> dict[str, dict]:
        return {
            "p1": {k: tuple(v) for k, v in self.p1.items()},
            "p2": {k: tuple(v) for k, v in self.p2.items()},
            "p3": dict(self.p3),
        }

    def __len__(self) -> int:
        return len(self.p1) + len(self.p2) + len(self.p3)


class Undirected4Engine(CensusEngine):
    """Non-induced (m0..m10) and induced (q0..q10) four-vertex counts.

    m3, m4 and m6..m10 are stored; m0, m1, m2 and m5 follow from the vertex count,
    the edge count, the 2-path count p2 and the triangle count T.
    """

    directed = False
    matrix = QUAD_MATRIX

    def __init__(self, **kwargs: Unpack[EngineKwargs]) -> None:
        super().__init__(**kwargs)
        self.structures = StructureStore()
        self.stored = [0] * 11
        self.triangles = 0
        self.two_paths = 0

    # updates

    def insert_edge(self, u: VertexId, v: VertexId) -> None:
        graph = self.graph
        graph.check_edge(u, v, add=True)
        du, dv = graph.degree(u), graph.degree(v)
        graph.insert_edge(u, v)
        self._edge_structures(u, v, 1)
        contribution = self.edge_contribution(u, v)
        for k in _STORED:
            self.stored[k] += contribution[k]
        self.triangles += self._codegree(u, v)
        self.two_paths += du + dv
        self._process(self.partition.on_edge_change(u, v, 1))

    def delete_edge(self, u: VertexId, v: VertexId) -> None:
        graph = self.graph
        graph.check_edge(u, v, add=False)
        contribution = self.edge_contribution(u, v)
        for k in _STORED:
            self.stored[k] -= contribution[k]
        self.triangles -= self._codegree(u, v)
        self._edge_structures(u, v, -1)
        graph.delete_edge(u, v)
        self.two_paths -= graph.degree(u) + graph.degree(v)
        self._process(self.partition.on_edge_change(u, v, -1))

    # links

    def has_link(self, u: VertexId, v: VertexId) -> bool:
        return self.graph.has_edge(u, v)

    def insert_link(self, u: VertexId, v: VertexId) -> None:
        self.insert_edge(u, v)

    def delete_link(self, u: VertexId, v: VertexId) -> None:
        self.delete_edge(u, v)

    # structure maintenance

    def _low(self, vertices: Iterable[VertexId]) -> list[VertexId]:
        high = self._high
        return [w for w in vertices if w not in high]

    def _edge_structures(self, x: VertexId, y: VertexId, sign: int) -> None:
        """Add or remove every structure that uses the (present) edge {x, y}."""
        high = self._high
        if x in high and y in high:
            return
        store = self.structures
        adj = self.graph.adjacency

        # {p, q} as an edge from an endpoint p to a low interior vertex q.
        for p, q in ((x, y), (y, x)):
            if q in high:
                continue
            np_ = adj(p)
            nq = adj(q)
            low_nq = self._low(nq)
            low_nq_np = [b for b in low_nq if b in np_]
            others = [v for v in nq if v != p]

            for b in low_nq:
                if b == p:
                    continue
                store.bump1(p, 0, sign)
                for v in adj(b):
                    if v != q and v != p:
                        store.bump2(p, v, 3, sign)
                for xp in adj(b):
                    if xp != p and xp != q and xp in nq:
                        # b as the far interior vertex, xp adjacent to both a=q and b
                        store.bump2(xp, p, 5, sign)
            for b in low_nq_np:
                store.bump1(p, 1, 2 * sign)

            for v in others:
                store.bump2(p, v, 2, sign)
                low_count = len(low_nq) - (p in nq and p not in high) - (v not in high)
                if low_count:
                    store.bump2(p, v, 4, sign * low_count)

            for b in low_nq_np:
                for yp in nq:
                    if yp != p and yp != b:
                        store.bump2(p, yp, 5, sign)
                for v in adj(b):
                    if v != p and v != q and v in nq:
                        store.bump2(p, v, 6, sign)

            for a in low_nq_np:
                for yp in adj(a):
                    if yp != p and yp != q:
                        store.bump2(p, yp, 5, sign)

            for v, w in combinations(others, 2):
                store.bump3(p, v, w, sign)

        if x in high or y in high:
            return

        # {x, y} as the edge between two low interior vertices.
        nx, ny = adj(x), adj(y)
        common = [w for w in nx if w in ny]
        out_x = [w for w in nx if w != y]
        out_y = [w for w in ny if w != x]
        for u in out_x:
            store.bump1(u, 0, sign)
        for u in out_y:
            store.bump1(u, 0, sign)
        for u in common:
            store.bump1(u, 1, 2 * sign)
        for u in out_x:
            for v in out_y:
                if u != v:
                    store.bump2(u, v, 3, sign)
        for u, v in combinations(out_x, 2):
            store.bump2(u, v, 4, sign)
        for u, v in combinations(out_y, 2):
            store.bump2(u, v, 4, sign)
        for xp in common:
            for yp in out_x:
                if yp != xp:
                    store.bump2(xp, yp, 5, sign)
            for yp in out_y:
                if yp != xp:
                    store.bump2(xp, yp, 5, sign)
        for u, v in combinations(common, 2):
            store.bump2(u, v, 6, sign)

    def _interior_change(self, w: VertexId, sign: int) -> None:
        """Add or remove every structure with w as a low interior vertex."""
        store = self.structures
        adj = self.graph.adjacency
        high = self._high
        nw = adj(w)
        low_nw = self._low(nw)
        n_low = len(low_nw)

        for u in nw:
            count = n_low - (u not in high)
            if count:
                store.bump1(u, 0, sign * count)
            nu = adj(u)
            closing = sum(1 for b in low_nw if b in nu)
            if closing:
                store.bump1(u, 1, 2 * sign * closing)
        for a in low_nw:
            for u in adj(a):
                if u != w:
                    store.bump1(u, 0, sign)

        for u, v in combinations(nw, 2):
            store.bump2(u, v, 2, sign)
            weight = n_low - (u not in high) - (v not in high)
            if weight:
                store.bump2(u, v, 4, sign * weight)
        for v1, v2, v3 in combinations(nw, 3):
            store.bump3(v1, v2, v3, sign)

        for b in low_nw:
            nb = adj(b)
            for u in nw:
                if u == b:
                    continue
                for v in nb:
                    if v != w and v != u:
                        store.bump2(u, v, 3, sign)
            for u, v in combinations(nb, 2):
                if u != w and v != w:
                    store.bump2(u, v, 4, sign)
            shared = [xp for xp in nw if xp in nb]
            for xp in shared:
                for yp in nw:
                    if yp != xp and yp != b:
                        store.bump2(xp, yp, 5, sign)
                for yp in nb:
                    if yp != xp and yp != w:
                        store.bump2(xp, yp, 5, sign)
            for u, v in combinations(shared, 2):
                store.bump2(u, v, 6, sign)

    # counts

    def _codegree(self, x: VertexId, y: VertexId) -> int:
        """Common neighbors of x and y."""
        adj = self.graph.adjacency
        nx, ny = adj(x), adj(y)
        return self.structures.pair(x, y, 2) + sum(
            1 for z in self._high if z != x and z != y and z in nx and z in ny
        )

    def _two_paths_from(self, x: VertexId) -> int:
        # Paths x-a-b with b != x.
        store = self.structures
        adj = self.graph.adjacency
        total = store.s0(x)
        for b in self._high:
            if b != x:
                total += store.pair(x, b, 2)
        for a in self._high:
            if a in adj(x):
                total += len(adj(a)) - 1
        return total

    def _triangles_at(self, x: VertexId) -> int:
        store = self.structures
        nx = self.graph.adjacency(x)
        high_nx = [b for b in self._high if b in nx]
        total = store.s1(x) // 2
        for b in high_nx:
            total += store.pair(x, b, 2)
        adj = self.graph.adjacency
        for a, b in combinations(high_nx, 2):
            if b in adj(a):
                total += 1
        return total

    def edge_contribution(self, u: VertexId, v: VertexId) -> list[int]:
        """c0..c10: non-induced copies of each class that use the edge {u, v}.

        Evaluated with the edge present in both the graph and the dictionaries; c0..c2
        are zero and c5 is reported for completeness, since m5 is derived.
        """
        graph = self.graph
        graph.check_edge(u, v, add=False)
        store = self.structures
        adj = graph.adjacency
        nu, nv = adj(u), adj(v)
        du, dv = len(nu), len(nv)
        n, m = graph.vertex_count, graph.edge_count
        high = self._high
        others = [z for z in high if z != u and z != v]
        shared_high = [z for z in others if z in nu and z in nv]
        t = store.pair(u, v, 2) + len(shared_high)

        c = [0] * 11
        c[3] = m - du - dv + 1
        c[4] = choose(du - 1, 2) + choose(dv - 1, 2)
        c[5] = t * max(n - 3, 0)
        c[6] = (
            (du - 1) * (dv - 1)
            - t
            + self._two_paths_from(u) - (dv - 1) - t
            + self._two_paths_from(v) - (du - 1) - t
        )

        s7_high = {z: store.s7(u, v, z) for z in others}
        low_tails = store.pair(u, v, 4) + sum(s7_high.values())
        c[7] = (
            self._triangles_at(u)
            + self._triangles_at(v)
            - 2 * t
            + t * (du + dv - 4)
            + low_tails
            + sum(len(adj(z)) - 2 for z in shared_high)
        )

        cycles = store.pair(u, v, 3)
        for y in others:
            if y in nu:
                cycles += self._codegree(y, v) - 1
        v_low = v not in high
        for x in others:
            if x in nv:
                cycles += store.pair(u, x, 2) - v_low
        c[8] = cycles

        c[9] = (
            comb(t, 2)
            + sum(self._codegree(u, p) + self._codegree(v, p) - 2 for p in shared_high)
            + store.pair(u, v, 5)
            + sum(((z in nu) + (z in nv)) * s for z, s in s7_high.items())
        )

        c[10] = (
            sum(1 for a, b in combinations(shared_high, 2) if b in adj(a))
            + sum(s7_high[r] for r in shared_high)
            + store.pair(u, v, 6)
        )
        return c

    def non_induced_counts(self) -> list[int]:
        n = self.graph.vertex_count
        m = self.graph.edge_count
        counts = list(self.stored)
        counts[0] = choose(n, 4)
        counts[1] = m * choose(n - 2, 2)
        counts[2] = max(n - 3, 0) * self.two_paths
        counts[5] = max(n - 3, 0) * self.triangles
        return counts

    def triad_counts(self) -> list[int]:
        """Induced undirected three-vertex counts: empty, one edge, two-path, triangle."""
        n = self.graph.vertex_count
        rhs = [
            choose(n, 3),
            self.graph.edge_count * max(n - 2, 0),
            self.two_paths,
            self.triangles,
        ]
        return solve_unit_upper_triangular(UNDIRECTED_TRIAD_MATRIX, rhs)

    def snapshot(self) -> CensusSnapshot:
        return CensusSnapshot(
            fingerprint=self.graph.fingerprint(),
            undirected=QuadCensus(
                m=self.non_induced_counts(),
                q=self.induced_counts(),
                triangles=self.triangles,
                two_paths=self.two_paths,
                triads=self.triad_counts(),
            ),
        )

    def state_dict(self) -> dict[str, Any]:
        return {
            "stored": list(self.stored),
            "triangles": self.triangles,
            "two_paths": self.two_paths,
            **self.structures.state(),
            "edges": sorted(self.graph.edges()),
            "vertices": sorted(self.graph.vertices()),
            "high": sorted(self._high),
        }

    def dictionary_size(self) -> int:
        return len(self.structures)


_STORED = (3, 4, 6, 7, 8, 9, 10)
