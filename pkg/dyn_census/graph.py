import hashlib
import heapq
from collections.abc import Iterator, Mapping

from .models import (
    RELATION_OF_STATE,
    DuplicateArc,
    DuplicateEdge,
    DuplicateVertex,
    EdgeTransition,
    GraphFingerprint,
    GraphModeError,
    MissingArc,
    MissingEdge,
    NotIsolated,
    PairState,
    Relation,
    SelfLoop,
    UnknownVertex,
    VertexId,
    VertexStats,
)


class DynamicGraph:
    """Simple dynamic digraph with O(1) expected pair lookups.

    External ids map to dense internal indices; per-vertex statistics live in flat
    lists indexed by them, adjacency is one dict per vertex keyed by neighbor id and
    holding the pair state relative to (owner, neighbor).

    With ``directed=False`` every edge is stored as a reciprocal pair and only the
    edge operations are available.
    """

    def __init__(self, directed: bool = True) -> None:
        self.directed = directed
        self._index: dict[VertexId, int] = {}
        self._ids: list[VertexId | None] = []
        self._free: list[int] = []
        self._adj: list[dict[VertexId, PairState]] = []
        self._in: list[int] = []
        self._out: list[int] = []
        self._recip: list[int] = []
        self._arcs = 0
        self._recip_pairs = 0

    # vertices

    def add_vertex(self, v: VertexId) -> None:
        if v in self._index:
            raise DuplicateVertex(f"vertex {v} already exists")
        if self._free:
            idx = heapq.heappop(self._free)
            self._ids[idx] = v
        else:
            idx = len(self._ids)
            self._ids.append(v)
            self._adj.append({})
            self._in.append(0)
            self._out.append(0)
            self._recip.append(0)
        self._index[v] = idx

    def remove_vertex(self, v: VertexId) -> None:
        idx = self.index_of(v)
        if self._adj[idx]:
            raise NotIsolated(f"vertex {v} still has {len(self._adj[idx])} neighbors")
        del self._index[v]
        self._ids[idx] = None
        heapq.heappush(self._free, idx)

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._index

    def index_of(self, v: VertexId) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} does not exist") from None

    def vertices(self) -> Iterator[VertexId]:
        return iter(self._index)

    @property
    def vertex_count(self) -> int:
        return len(self._index)

    @property
    def arc_count(self) -> int:
        return self._arcs

    @property
    def edge_count(self) -> int:
        """Arcs in directed mode, undirected edges otherwise."""
        return self._arcs if self.directed else self._recip_pairs

    @property
    def recip_pairs(self) -> int:
        return self._recip_pairs

    # queries

    def pair_state(self, u: VertexId, v: VertexId) -> PairState:
        idx = self._index.get(u)
        if idx is None:
            return PairState.none
        return self._adj[idx].get(v, PairState.none)

    def has_arc(self, u: VertexId, v: VertexId) -> bool:
        return bool(self.pair_state(u, v) & PairState.fwd)

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return self.pair_state(u, v) is not PairState.none

    def adjacency(self, u: VertexId) -> Mapping[VertexId, PairState]:
        # Read-only by contract: callers iterate, they never mutate.
        return self._adj[self.index_of(u)]

    def neighbors(self, u: VertexId) -> Iterator[tuple[VertexId, Relation]]:
        for w, state in self.adjacency(u).items():
            yield w, RELATION_OF_STATE[state]

    def degree(self, u: VertexId) -> int:
        return len(self._adj[self.index_of(u)])

    def stats(self, u: VertexId) -> VertexStats:
        idx = self.index_of(u)
        return VertexStats(self._in[idx], self._out[idx], self._recip[idx])

    def arcs(self) -> Iterator[tuple[VertexId, VertexId]]:
        for u, idx in self._index.items():
            for v, state in self._adj[idx].items():
                if state & PairState.fwd:
                    yield u, v

    def edges(self) -> Iterator[tuple[VertexId, VertexId]]:
        """Each adjacent pair once, smaller id first."""
        for u, idx in self._index.items():
            for v in self._adj[idx]:
                if u < v:
                    yield u, v

    def fingerprint(self) -> GraphFingerprint:
        digest = hashlib.sha256()
        for u, v in sorted(self.arcs()):
            digest.update(f"{u}>{v};".encode("ascii"))
        for v in sorted(self._index):
            digest.update(f"{v};".encode("ascii"))
        return GraphFingerprint(
            vertices=self.vertex_count, edges=self.edge_count, digest=digest.hexdigest()
        )

    # arc updates

    def arc_transition(self, u: VertexId, v: VertexId, add: bool) -> EdgeTransition:
        """Validate an arc operation and return the transition it would make."""
        if not self.directed:
            raise GraphModeError("arc operations need a directed graph")
        if u == v:
            raise SelfLoop(f"self-loop on {u}")
        iu = self.index_of(u)
        self.index_of(v)
        before = self._adj[iu].get(v, PairState.none)
        if add:
            if before & PairState.fwd:
                raise DuplicateArc(f"arc ({u},{v}) already exists")
            after = PairState(before | PairState.fwd)
        else:
            if not before & PairState.fwd:
                raise MissingArc(f"arc ({u},{v}) does not exist")
            after = PairState(before & ~PairState.fwd)
        return EdgeTransition((u, v), before, after)

    def insert_arc(self, u: VertexId, v: VertexId) -> EdgeTransition:
        transition = self.arc_transition(u, v, add=True)
        self._apply(u, v, transition.before, transition.after)
        return transition

    def delete_arc(self, u: VertexId, v: VertexId) -> EdgeTransition:
        transition = self.arc_transition(u, v, add=False)
        self._apply(u, v, transition.before, transition.after)
        return transition

    # undirected view

    def check_edge(self, u: VertexId, v: VertexId, add: bool) -> None:
        if self.directed:
            raise GraphModeError("edge operations need an undirected graph")
        if u == v:
            raise SelfLoop(f"self-loop on {u}")
        iu = self.index_of(u)
        self.index_of(v)
        present = v in self._adj[iu]
        if add and present:
            raise DuplicateEdge(f"edge {{{u},{v}}} already exists")
        if not add and not present:
            raise MissingEdge(f"edge {{{u},{v}}} does not exist")

    def insert_edge(self, u: VertexId, v: VertexId) -> None:
        self.check_edge(u, v, add=True)
        self._apply(u, v, PairState.none, PairState.recip)

    def delete_edge(self, u: VertexId, v: VertexId) -> None:
        self.check_edge(u, v, add=False)
        self._apply(u, v, PairState.recip, PairState.none)

    # internals

    def _apply(
        self, u: VertexId, v: VertexId, before: PairState, after: PairState
    ) -> None:
        iu, iv = self._index[u], self._index[v]
        self._classify(iu, iv, before, -1)
        self._classify(iu, iv, after, 1)
        if after is PairState.none:
            del self._adj[iu][v]
            del self._adj[iv][u]
        else:
            self._adj[iu][v] = after
            self._adj[iv][u] = after.mirror
        self._arcs += _ARCS[after] - _ARCS[before]
        self._recip_pairs += (after is PairState.recip) - (before is PairState.recip)

    def _classify(self, iu: int, iv: int, state: PairState, delta: int) -> None:
        if state is PairState.fwd:
            self._out[iu] += delta
            self._in[iv] += delta
        elif state is PairState.rev:
            self._in[iu] += delta
            self._out[iv] += delta
        elif state is PairState.recip:
            self._recip[iu] += delta
            self._recip[iv] += delta


_ARCS = {PairState.none: 0, PairState.fwd: 1, PairState.rev: 1, PairState.recip: 2}
