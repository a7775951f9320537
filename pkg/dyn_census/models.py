import enum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict

type VertexId = int


class PairState(enum.IntEnum):
    """Arc state of an ordered pair (u, v); bit 0 is u->v, bit 1 is v->u."""

    none = 0
    fwd = 1
    rev = 2
    recip = 3

    @property
    def mirror(self) -> "PairState":
        return _MIRROR[self]


_MIRROR = {
    PairState.none: PairState.none,
    PairState.fwd: PairState.rev,
    PairState.rev: PairState.fwd,
    PairState.recip: PairState.recip,
}


class Relation(enum.StrEnum):
    """Strict classification of a neighbor w of u."""

    inbound = "in"
    outbound = "out"
    recip = "recip"


RELATION_OF_STATE: dict[PairState, Relation] = {
    PairState.fwd: Relation.outbound,
    PairState.rev: Relation.inbound,
    PairState.recip: Relation.recip,
}


class Side(enum.StrEnum):
    high = "high"
    low = "low"


class Direction(enum.StrEnum):
    promote = "promote"
    demote = "demote"


class VertexStats(NamedTuple):
    i: int
    o: int
    r: int

    @property
    def deg(self) -> int:
        return self.i + self.o + self.r

    @property
    def indegree(self) -> int:
        return self.i + self.r

    @property
    def outdegree(self) -> int:
        return self.o + self.r


class EdgeTransition(NamedTuple):
    pair: tuple[VertexId, VertexId]
    before: PairState
    after: PairState


class PartitionEvent(NamedTuple):
    vertex: VertexId
    direction: Direction


class CensusError(Exception):
    pass


class GraphError(CensusError):
    pass


class DuplicateVertex(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class NotIsolated(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateArc(GraphError):
    pass


class MissingArc(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class GraphModeError(GraphError):
    pass


class DimensionMismatch(CensusError):
    pass


class NotUnitTriangular(CensusError):
    pass


class GraphTooLarge(CensusError):
    pass


class FingerprintMismatch(CensusError):
    pass


class BadParams(CensusError):
    pass


class ParseError(CensusError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class StreamError(CensusError):
    """An engine error raised while replaying a stream."""

    def __init__(self, line: int, op_index: int, cause: CensusError) -> None:
        super().__init__(
            f"line {line} (op {op_index}): {type(cause).__name__}: {cause}"
        )
        self.line = line
        self.op_index = op_index
        self.cause = cause


class GraphFingerprint(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: int
    edges: int
    digest: str


class DirectedCensus(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: list[int]
    t: list[int]
    d: list[int]


class QuadCensus(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: list[int]
    q: list[int]
    triangles: int
    two_paths: int
    triads: list[int]


class CensusSnapshot(BaseModel):
    """Counts of one engine (or the oracle) at one point of a stream."""

    model_config = ConfigDict(frozen=True)

    fingerprint: GraphFingerprint
    directed: DirectedCensus | None = None
    undirected: QuadCensus | None = None


class Divergence(BaseModel):
    component: str
    expected: int
    actual: int
    op_index: int | None = None


class Report(BaseModel):
    mode: str
    op_index: int
    n: int
    m: int
    h: int
    high: int
    moves: int
    induced: list[int]
    non_induced: list[int]
    wall_s: float
