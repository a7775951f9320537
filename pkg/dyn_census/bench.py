import logging
import time
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel

from .generate import GeneratorSpec, generate_stream
from .models import BadParams
from .runner import CensusSession, Mode
from .stream import OpKind, read_stream

logger = logging.getLogger(__name__)


class BenchRow(BaseModel):
    size: int
    ops: int
    mean_ns_per_op: float
    h_mean: float
    h_max: int
    partition_moves_per_op: float
    edges: int
    dict_entries: int


class BenchResult(BaseModel):
    mode: str
    rows: list[BenchRow]
    # Log-log slope of mean update time against mean h; None below two usable rows.
    slope: float | None = None


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    points = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len({x for x, _ in points}) < 2:
        return None
    x = np.log([p[0] for p in points])
    y = np.log([p[1] for p in points])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _scaled(spec: GeneratorSpec, size: int) -> GeneratorSpec:
    # Keeps the edges-per-vertex ratio of the base spec.
    pairs = size * (size - 1) // (1 if spec.directed else 2)
    target_m = min(round(spec.target_m * size / spec.n), pairs)
    return GeneratorSpec.build(**{**spec.model_dump(), "n": size, "target_m": target_m})


def bench_one(mode: Mode, spec: GeneratorSpec) -> BenchRow:
    session = CensusSession(mode)
    engine = session.engine
    ops = 0
    elapsed = 0
    h_total = h_max = 0
    for op in read_stream(generate_stream(spec)):
        if op.kind not in (OpKind.add_edge, OpKind.remove_edge):
            session.apply(op)
            continue
        start = time.perf_counter_ns()
        session.apply(op)
        elapsed += time.perf_counter_ns() - start
        ops += 1
        h = engine.h
        h_total += h
        h_max = max(h_max, h)
    return BenchRow(
        size=spec.n,
        ops=ops,
        mean_ns_per_op=elapsed / ops if ops else 0.0,
        h_mean=h_total / ops if ops else 0.0,
        h_max=h_max,
        partition_moves_per_op=engine.partition.moves / ops if ops else 0.0,
        edges=engine.graph.edge_count,
        dict_entries=engine.dictionary_size(),
    )


def bench(mode: Mode, spec: GeneratorSpec, sizes: Sequence[int]) -> BenchResult:
    """Time edge updates on generated streams of each size (no verification)."""
    if not sizes or any(size < 2 for size in sizes):
        raise BadParams(f"sizes must be integers >= 2, got {list(sizes)}")
    spec = spec.model_copy(update={"directed": Mode(mode) is Mode.directed3})
    rows = []
    for size in sizes:
        row = bench_one(mode, _scaled(spec, size))
        logger.info(
            "size %d: %d ops, %.0f ns/op, h_mean %.2f",
            size,
            row.ops,
            row.mean_ns_per_op,
            row.h_mean,
        )
        rows.append(row)
    return BenchResult(
        mode=Mode(mode).value,
        rows=rows,
        slope=loglog_slope([r.h_mean for r in rows], [r.mean_ns_per_op for r in rows]),
    )
