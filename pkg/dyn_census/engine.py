from collections.abc import Callable
from math import comb
from typing import Any, TypedDict, Unpack

from .graph import DynamicGraph
from .hpartition import BasePartition, HPartition
from .models import CensusSnapshot, Direction, PartitionEvent, VertexId
from .solver import Matrix, solve_unit_upper_triangular


class EngineKwargs(TypedDict, total=False):
    # Builds the partition over the engine's graph; defaults to HPartition.
    partition: Callable[[DynamicGraph], BasePartition]


def choose(n: int, k: int) -> int:
    return comb(n, k) if n >= 0 else 0


class CensusEngine:
    """Shared plumbing of the counting engines.

    Owns the graph and the partition. The engine keeps its own copy of H and flips
    one vertex per processed event, so each event is handled against the membership
    left by the events before it.
    """

    directed: bool
    matrix: Matrix

    def __init__(self, **kwargs: Unpack[EngineKwargs]) -> None:
        self.graph = DynamicGraph(directed=self.directed)
        factory = kwargs.get("partition", HPartition)
        self.partition = factory(self.graph)
        self._high: set[VertexId] = set()

    # vertices

    def add_vertex(self, v: VertexId) -> None:
        self.graph.add_vertex(v)
        self.partition.add_vertex(v)

    def remove_vertex(self, v: VertexId) -> None:
        self.graph.remove_vertex(v)
        self.partition.remove_vertex(v)
        self._high.discard(v)

    # partition

    @property
    def h(self) -> int:
        return self.partition.h_index()

    @property
    def high(self) -> frozenset[VertexId]:
        return frozenset(self._high)

    def is_low(self, v: VertexId) -> bool:
        return v not in self._high

    def on_partition_event(self, event: PartitionEvent) -> None:
        w = event.vertex
        if event.direction is Direction.promote:
            if w in self._high:
                return
            self._interior_change(w, -1)
            self._high.add(w)
        else:
            if w not in self._high:
                return
            self._high.discard(w)
            self._interior_change(w, 1)

    def _process(self, events: list[PartitionEvent]) -> None:
        for event in events:
            self.on_partition_event(event)

    def _interior_change(self, w: VertexId, sign: int) -> None:
        """Add (sign=1) or remove (sign=-1) every stored structure with w as interior."""
        raise NotImplementedError

    # counts

    def non_induced_counts(self) -> list[int]:
        raise NotImplementedError

    def induced_counts(self) -> list[int]:
        return solve_unit_upper_triangular(self.matrix, self.non_induced_counts())

    def snapshot(self) -> CensusSnapshot:
        raise NotImplementedError

    def state_dict(self) -> dict[str, Any]:
        raise NotImplementedError

    def dictionary_size(self) -> int:
        raise NotImplementedError

    # links: arcs for the directed engine, edges for the undirected one

    def has_link(self, u: VertexId, v: VertexId) -> bool:
        raise NotImplementedError

    def insert_link(self, u: VertexId, v: VertexId) -> None:
        raise NotImplementedError

    def delete_link(self, u: VertexId, v: VertexId) -> None:
        raise NotImplementedError

    def change_statistics(
        self, u: VertexId, v: VertexId
    ) -> tuple[list[int], list[int]]:
        """Change of (induced, non-induced) counts if the link (u, v) were toggled.

        The toggle is applied and reverted, so the counts end where they started.
        """
        induced, non_induced = self.induced_counts(), self.non_induced_counts()
        present = self.has_link(u, v)
        if present:
            self.delete_link(u, v)
        else:
            self.insert_link(u, v)
        try:
            induced_after = self.induced_counts()
            non_induced_after = self.non_induced_counts()
        finally:
            if present:
                self.insert_link(u, v)
            else:
                self.delete_link(u, v)
        return (
            [b - a for a, b in zip(induced, induced_after)],
            [b - a for a, b in zip(non_induced, non_induced_after)],
        )
