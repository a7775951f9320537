import heapq
import logging
import random
from collections.abc import Iterable

from .graph import DynamicGraph
from .models import Direction, PartitionEvent, Side, VertexId

logger = logging.getLogger(__name__)


def h_index_of(degrees: Iterable[int]) -> int:
    """Largest h such that at least h of the degrees are >= h."""
    h = 0
    for rank, degree in enumerate(sorted(degrees, reverse=True), start=1):
        if degree < rank:
            break
        h = rank
    return h


class HIndexTracker:
    """Exact h-index under +-1 degree changes.

    Keeps a degree histogram and ``geq``, the number of vertices whose degree is at
    least the current h. A unit change moves h by at most one step, so settling is O(1).
    """

    def __init__(self) -> None:
        self.h = 0
        self.hist: list[int] = [0]
        self.geq = 0

    def add_vertex(self) -> None:
        self.hist[0] += 1
        if self.h == 0:
            self.geq += 1
        self._settle()

    def remove_vertex(self) -> None:
        self.hist[0] -= 1
        if self.h == 0:
            self.geq -= 1
        self._settle()

    def move(self, old: int, new: int) -> None:
        if new >= len(self.hist):
            self.hist.extend([0] * (new + 1 - len(self.hist)))
        self.hist[old] -= 1
        self.hist[new] += 1
        h = self.h
        if old >= h > new:
            self.geq -= 1
        elif new >= h > old:
            self.geq += 1
        self._settle()

    def _settle(self) -> None:
        hist = self.hist
        while self.geq < self.h:
            self.h -= 1
            self.geq += hist[self.h]
        while self.geq - hist[self.h] >= self.h + 1:
            self.geq -= hist[self.h]
            self.h += 1


class BasePartition:
    """Exact h-index plus a (H, V \\ H) split over the vertices of ``graph``.

    The graph is mutated first; the partition is told afterwards which vertices had
    their degree changed and returns the membership changes it made, in order.
    """

    def __init__(self, graph: DynamicGraph) -> None:
        self.graph = graph
        self.tracker = HIndexTracker()
        self.high: set[VertexId] = set()
        self.moves = 0
        for _ in graph.vertices():
            self.tracker.add_vertex()
        for v in graph.vertices():
            degree = graph.degree(v)
            if degree:
                self.tracker.move(0, degree)

    def h_index(self) -> int:
        return self.tracker.h

    def partition_of(self, v: VertexId) -> Side:
        self.graph.index_of(v)
        return Side.high if v in self.high else Side.low

    def add_vertex(self, v: VertexId) -> None:
        self.graph.index_of(v)
        self.tracker.add_vertex()

    def remove_vertex(self, v: VertexId) -> None:
        # Only isolated vertices leave the graph, so dropping one from H needs no event.
        self.high.discard(v)
        self.tracker.remove_vertex()

    def on_degree_change(self, v: VertexId, delta: int) -> list[PartitionEvent]:
        degree = self.graph.degree(v)
        self.tracker.move(degree - delta, degree)
        return self._rebalance((v,))

    def on_edge_change(
        self, u: VertexId, v: VertexId, delta: int
    ) -> list[PartitionEvent]:
        """Apply the degree change of both endpoints, then rebalance once."""
        for x in (u, v):
            degree = self.graph.degree(x)
            self.tracker.move(degree - delta, degree)
        return self._rebalance((u, v))

    def _rebalance(self, touched: tuple[VertexId, ...]) -> list[PartitionEvent]:
        raise NotImplementedError

    def _promote(self, v: VertexId, events: list[PartitionEvent]) -> None:
        self.high.add(v)
        self.moves += 1
        events.append(PartitionEvent(v, Direction.promote))
        logger.debug("promote %s (deg %d, h %d)", v, self.graph.degree(v), self.h_index())

    def _demote(self, v: VertexId, events: list[PartitionEvent]) -> None:
        self.high.discard(v)
        self.moves += 1
        events.append(PartitionEvent(v, Direction.demote))
        logger.debug("demote %s (deg %d, h %d)", v, self.graph.degree(v), self.h_index())


class HPartition(BasePartition):
    """Hysteresis partition: promote at degree 2h, demote below ceil(h/2), |H| <= 4h+4.

    Members of H sit in a lazy min-heap keyed by degree; an entry is live while its
    vertex is still in H with the recorded degree.
    """

    def __init__(self, graph: DynamicGraph) -> None:
        super().__init__(graph)
        self._heap: list[tuple[int, int, VertexId]] = []

    def _push(self, v: VertexId) -> None:
        heapq.heappush(
            self._heap, (self.graph.degree(v), self.graph.index_of(v), v)
        )

    def _live(self, entry: tuple[int, int, VertexId]) -> bool:
        degree, _, v = entry
        return (
            v in self.high
            and self.graph.has_vertex(v)
            and self.graph.degree(v) == degree
        )

    def _pop_min(self) -> VertexId | None:
        heap = self._heap
        while heap:
            entry = heapq.heappop(heap)
            if self._live(entry):
                return entry[2]
        return None

    def _peek_min_degree(self) -> int | None:
        heap = self._heap
        while heap and not self._live(heap[0]):
            heapq.heappop(heap)
        return heap[0][0] if heap else None

    def _rebalance(self, touched: tuple[VertexId, ...]) -> list[PartitionEvent]:
        events: list[PartitionEvent] = []
        h = self.tracker.h
        threshold = 2 * max(h, 1)
        for v in touched:
            if v in self.high:
                self._push(v)
            elif self.graph.degree(v) >= threshold:
                self._promote(v, events)
                self._push(v)

        floor = (h + 1) // 2
        while (lowest := self._peek_min_degree()) is not None and lowest < floor:
            self._demote(self._pop_min(), events)

        cap = 4 * h + 4
        while len(self.high) > cap:
            self._demote(self._pop_min(), events)

        if len(self._heap) > 4 * len(self.high) + 64:
            self._heap = [
                (self.graph.degree(v), self.graph.index_of(v), v) for v in self.high
            ]
            heapq.heapify(self._heap)
        return events


class ShuffledPartition(BasePartition):
    """Random membership flips, ignoring degrees.

    Each update flips every touched vertex and one random live vertex with probability
    ``move_rate``. Counting engines must stay exact under it; ``move_rate=0`` keeps
    every vertex low.
    """

    def __init__(
        self, graph: DynamicGraph, seed: int = 0, move_rate: float = 0.25
    ) -> None:
        super().__init__(graph)
        self._rng = random.Random(seed)
        self.move_rate = move_rate

    def _rebalance(self, touched: tuple[VertexId, ...]) -> list[PartitionEvent]:
        events: list[PartitionEvent] = []
        if not self.move_rate:
            return events
        candidates = list(touched)
        if self.graph.vertex_count:
            candidates.append(self._rng.choice(sorted(self.graph.vertices())))
        for v in candidates:
            if self._rng.random() >= self.move_rate:
                continue
            if v in self.high:
                self._demote(v, events)
            else:
                self._promote(v, events)
        return events
