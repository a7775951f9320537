import argparse
import csv
import json
import logging
import sys
from collections.abc import Iterable, Sequence
from contextlib import nullcontext
from functools import partial
from typing import ContextManager, TextIO

from .bench import BenchResult, BenchRow, bench
from .generate import GeneratorSpec, GraphModel, generate_stream
from .hpartition import ShuffledPartition
from .models import BadParams, CensusError, Report
from .oracle import DEFAULT_CAP
from .runner import Mode, run, verify
from .stream import read_stream

logger = logging.getLogger(__name__)


def _engine_kwargs(args: argparse.Namespace) -> dict:
    # --shuffle swaps HPartition for random membership flips (partition fuzzing).
    if args.shuffle:
        return {
            "partition": partial(
                ShuffledPartition, seed=args.seed, move_rate=args.shuffle
            )
        }
    return {}


def _open_input(path: str) -> ContextManager[TextIO]:
    # stdin is borrowed, not owned; leaving the block must not close it.
    if path == "-":
        return nullcontext(sys.stdin)
    return open(path, encoding="utf-8")


def _write_reports(reports: Iterable[Report], mode: Mode, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        for report in reports:
            out.write(report.model_dump_json() + "\n")
        return
    induced, non_induced = mode.labels
    writer = csv.writer(out)
    writer.writerow(
        ["op_index", "n", "m", "h", "high", "moves", "wall_s", *induced, *non_induced]
    )
    for r in reports:
        writer.writerow(
            [r.op_index, r.n, r.m, r.h, r.high, r.moves, f"{r.wall_s:.6f}"]
            + r.induced
            + r.non_induced
        )


def _write_bench(result: BenchResult, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(result.model_dump_json() + "\n")
        return
    columns = list(BenchRow.model_fields)
    writer = csv.writer(out)
    writer.writerow(columns)
    for row in result.rows:
        writer.writerow([getattr(row, c) for c in columns])


def _cmd_run(args: argparse.Namespace) -> int:
    mode = Mode(args.mode)
    with _open_input(args.input) as stream:
        reports = run(
            read_stream(stream), mode, args.report_every, **_engine_kwargs(args)
        )
        _write_reports(reports, mode, args.format, sys.stdout)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    with _open_input(args.input) as stream:
        divergence = verify(
            read_stream(stream),
            Mode(args.mode),
            args.verify_every,
            args.oracle_cap,
            **_engine_kwargs(args),
        )
    if divergence is None:
        sys.stdout.write(json.dumps({"status": "pass"}) + "\n")
        return 0
    sys.stdout.write(
        json.dumps({"status": "fail", "divergence": divergence.model_dump()}) + "\n"
    )
    return 1


def _spec(args: argparse.Namespace, directed: bool) -> GeneratorSpec:
    return GeneratorSpec.build(
        model=args.model,
        n=args.n,
        target_m=args.m,
        delete_fraction=args.delete_fraction,
        skew=args.skew,
        seed=args.seed,
        directed=directed,
    )


def _cmd_gen(args: argparse.Namespace) -> int:
    for line in generate_stream(_spec(args, directed=not args.undirected)):
        sys.stdout.write(line + "\n")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    mode = Mode(args.mode)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise BadParams(
            f"--sizes must be comma-separated integers: {args.sizes!r}"
        ) from None
    result = bench(mode, _spec(args, directed=mode is Mode.directed3), sizes)
    _write_bench(result, args.format, sys.stdout)
    return 0


def _add_generator_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model",
        choices=[m.value for m in GraphModel],
        default=GraphModel.uniform_pairs.value,
    )
    parser.add_argument("--n", type=int, default=100, help="number of vertices")
    parser.add_argument("--m", type=int, default=300, help="number of insertions")
    parser.add_argument("--delete-fraction", type=float, default=0.0)
    parser.add_argument(
        "--skew", type=float, default=2.5, help="power-law exponent, must exceed 2"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyn-census",
        description="Exact dynamic census of directed triads and undirected 4-vertex graphs",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_parser(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", nargs="?", default="-", help="stream file, - for stdin")
        p.add_argument(
            "--mode", choices=[m.value for m in Mode], default=Mode.directed3.value
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--shuffle",
            type=float,
            default=0.0,
            metavar="RATE",
            help="use random partition flips at this rate instead of the h-partition",
        )
        return p

    p_run = engine_parser("run", "replay a stream and print census reports")
    p_run.add_argument("--report-every", type=int, default=0)
    p_run.add_argument("--format", choices=["json", "csv"], default="json")
    p_run.set_defaults(func=_cmd_run)

    p_verify = engine_parser("verify", "replay a stream and check against brute force")
    p_verify.add_argument("--verify-every", type=int, default=1)
    p_verify.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP)
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a synthetic stream")
    _add_generator_args(p_gen)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument(
        "--undirected", action="store_true", help="emit each pair at most once"
    )
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="time updates against the h-index")
    _add_generator_args(p_bench)
    p_bench.add_argument(
        "--mode", choices=[m.value for m in Mode], default=Mode.directed3.value
    )
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--sizes", default="100,200,400,800", help="comma-separated vertex counts"
    )
    p_bench.add_argument("--format", choices=["json", "csv"], default="csv")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except CensusError as exc:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"dyn-census: {exc}\n")
        return 1
