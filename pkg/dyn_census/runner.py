import enum
import logging
import time
from collections.abc import Iterable, Iterator
from typing import Unpack

from .directed3 import Directed3Engine
from .engine import CensusEngine, EngineKwargs
from .models import CensusError, Divergence, Report, StreamError
from .oracle import DEFAULT_CAP, diff, oracle_snapshot
from .stream import OpKind, StreamOp
from .undirected4 import Undirected4Engine

logger = logging.getLogger(__name__)


class Mode(enum.StrEnum):
    directed3 = "directed3"
    undirected4 = "undirected4"

    @property
    def labels(self) -> tuple[list[str], list[str]]:
        """Column names of the induced and non-induced vectors."""
        if self is Mode.directed3:
            return [f"t{i}" for i in range(16)], [f"n{i}" for i in range(16)]
        return [f"q{i}" for i in range(11)], [f"m{i}" for i in range(11)]


_ENGINES: dict[Mode, type[CensusEngine]] = {
    Mode.directed3: Directed3Engine,
    Mode.undirected4: Undirected4Engine,
}


class CensusSession:
    """Replays stream operations against one engine."""

    def __init__(self, mode: Mode, **engine_kwargs: Unpack[EngineKwargs]) -> None:
        self.mode = Mode(mode)
        self.engine = _ENGINES[self.mode](**engine_kwargs)
        self.op_index = 0
        self.started = time.perf_counter()

    def apply(self, op: StreamOp) -> None:
        """Apply one operation; engine errors come back as StreamError."""
        engine = self.engine
        graph = engine.graph
        try:
            match op.kind:
                case OpKind.add_vertex:
                    engine.add_vertex(op.operands[0])
                case OpKind.remove_vertex:
                    engine.remove_vertex(op.operands[0])
                case OpKind.add_edge:
                    u, v = op.operands
                    # Unknown endpoints are created; a self-loop is left to fail.
                    if u != v:
                        for x in (u, v):
                            if not graph.has_vertex(x):
                                engine.add_vertex(x)
                    engine.insert_link(u, v)
                case OpKind.remove_edge:
                    engine.delete_link(*op.operands)
                case OpKind.query:
                    pass
        except CensusError as exc:
            raise StreamError(op.line, self.op_index, exc) from exc
        self.op_index += 1

    def report(self) -> Report:
        engine = self.engine
        return Report(
            mode=self.mode.value,
            op_index=self.op_index,
            n=engine.graph.vertex_count,
            m=engine.graph.edge_count,
            h=engine.h,
            high=len(engine.high),
            moves=engine.partition.moves,
            induced=engine.induced_counts(),
            non_induced=engine.non_induced_counts(),
            wall_s=time.perf_counter() - self.started,
        )


def run(
    ops: Iterable[StreamOp],
    mode: Mode,
    report_every: int = 0,
    **engine_kwargs: Unpack[EngineKwargs],
) -> Iterator[Report]:
    """Reports every ``report_every`` operations, on each query and once at the end."""
    session = CensusSession(mode, **engine_kwargs)
    for op in ops:
        session.apply(op)
        if op.kind is OpKind.query or (
            report_every and session.op_index % report_every == 0
        ):
            yield session.report()
    yield session.report()


def verify(
    ops: Iterable[StreamOp],
    mode: Mode,
    check_every: int = 1,
    oracle_cap: int = DEFAULT_CAP,
    **engine_kwargs: Unpack[EngineKwargs],
) -> Divergence | None:
    """Compare the engine against the oracle every ``check_every`` ops; stop at the first miss."""
    session = CensusSession(mode, **engine_kwargs)

    def check() -> Divergence | None:
        engine = session.engine
        divergence = diff(
            engine.snapshot(),
            oracle_snapshot(engine.graph, oracle_cap),
            op_index=session.op_index,
        )
        if divergence is not None:
            logger.warning(
                "divergence at op %d: %s expected %d, got %d",
                session.op_index,
                divergence.component,
                divergence.expected,
                divergence.actual,
            )
        else:
            logger.info("op %d: engine agrees with oracle", session.op_index)
        return divergence

    for op in ops:
        session.apply(op)
        if check_every and session.op_index % check_every == 0:
            if (divergence := check()) is not None:
                return divergence
    return check()
