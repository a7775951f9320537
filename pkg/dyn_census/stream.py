import enum
from collections.abc import Iterable, Iterator

from pydantic import BaseModel, ConfigDict

from .models import ParseError, VertexId

MAX_VERTEX_ID = 2**64 - 1


class OpKind(enum.StrEnum):
    add_vertex = "av"
    remove_vertex = "rv"
    add_edge = "ae"
    remove_edge = "re"
    query = "q"


_ARITY = {
    OpKind.add_vertex: 1,
    OpKind.remove_vertex: 1,
    OpKind.add_edge: 2,
    OpKind.remove_edge: 2,
    OpKind.query: 0,
}


class StreamOp(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: OpKind
    operands: tuple[VertexId, ...] = ()
    line: int = 0


def _vertex(token: str, line: int) -> VertexId:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line, f"vertex id {token!r} is not an integer") from None
    if not 0 <= value <= MAX_VERTEX_ID:
        raise ParseError(line, f"vertex id {value} is outside 0..2^64-1")
    return value


def parse_line(text: str, line: int = 0) -> StreamOp | None:
    """One stream line as an operation; None for blanks and ``#`` comments."""
    tokens = text.split("#", 1)[0].split()
    if not tokens:
        return None
    try:
        kind = OpKind(tokens[0])
    except ValueError:
        raise ParseError(line, f"unknown operation {tokens[0]!r}") from None
    operands = tokens[1:]
    if len(operands) != _ARITY[kind]:
        raise ParseError(
            line, f"{kind.value} takes {_ARITY[kind]} operands, got {len(operands)}"
        )
    return StreamOp(
        kind=kind, operands=tuple(_vertex(t, line) for t in operands), line=line
    )


def read_stream(lines: Iterable[str]) -> Iterator[StreamOp]:
    for number, text in enumerate(lines, start=1):
        op = parse_line(text, number)
        if op is not None:
            yield op


def format_op(op: StreamOp) -> str:
    return " ".join([op.kind.value, *map(str, op.operands)])
