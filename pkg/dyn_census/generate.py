import enum
import random
from collections.abc import Iterator
from typing import Any

from pydantic import BaseModel, Field, ValidationError, model_validator

from .models import BadParams
from .stream import OpKind, StreamOp, format_op

type Pair = tuple[int, int]


class GraphModel(enum.StrEnum):
    uniform_pairs = "uniform-pairs"
    preferential_attachment = "preferential-attachment"


class GeneratorSpec(BaseModel):
    model: GraphModel = GraphModel.uniform_pairs
    n: int = Field(ge=2)
    target_m: int = Field(ge=0)
    delete_fraction: float = Field(default=0.0, ge=0.0, lt=1.0)
    # Power-law exponent of the preferential-attachment in-degree tail.
    skew: float = Field(default=2.5, gt=2.0)
    seed: int = 0
    directed: bool = True

    @model_validator(mode="after")
    def _fits(self) -> "GeneratorSpec":
        pairs = self.n * (self.n - 1)
        if not self.directed:
            pairs //= 2
        if self.target_m > pairs:
            raise ValueError(
                f"target_m={self.target_m} exceeds the {pairs} possible "
                f"{'arcs' if self.directed else 'edges'} on {self.n} vertices"
            )
        return self

    @classmethod
    def build(cls, **params: Any) -> "GeneratorSpec":
        try:
            return cls(**params)
        except ValidationError as exc:
            raise BadParams(str(exc)) from exc


_PA_RETRIES = 64


class _PairSampler:
    """Draws the next pair to insert.

    Under preferential attachment the vertices arrive in a seeded random order. The
    source of insertion j is the arrival at position 1 + j(n-1)/target_m, and its
    target is an earlier arrival chosen with weight ``received + a``: ``received`` is
    how many live edges already point at it and ``a = k(skew - 2)``, with k the mean
    number of insertions per arrival. That gives an in-degree tail of exponent ``skew``.
    Targets are drawn from a list holding each live edge's target once, so a draw is
    O(1).
    """

    def __init__(self, spec: GeneratorSpec, rng: random.Random) -> None:
        self.spec = spec
        self.rng = rng
        self.population = range(spec.n)
        self.inserted = 0
        self.attach = spec.model is GraphModel.preferential_attachment
        self.order = list(self.population)
        rng.shuffle(self.order)
        per_arrival = max(spec.target_m / (spec.n - 1), 1.0)
        self.attractiveness = (spec.skew - 2.0) * per_arrival
        # One entry per live edge: its target and the pair owning the slot.
        self.targets: list[int] = []
        self.owners: list[Pair] = []
        self.slot: dict[Pair, int] = {}

    def _uniform(self) -> tuple[int, int]:
        u, v = self.rng.sample(self.population, 2)
        return u, v

    def _attached(self) -> tuple[int, int]:
        arrived = 1 + self.inserted * (self.spec.n - 1) // max(self.spec.target_m, 1)
        source = self.order[arrived]
        received = len(self.targets)
        if self.rng.random() * (received + self.attractiveness * arrived) < received:
            target = self.targets[self.rng.randrange(received)]
        else:
            target = self.order[self.rng.randrange(arrived)]
        return source, target

    def draw(self, live: dict[Pair, int]) -> tuple[Pair, int]:
        """A pair not in ``live``, and which of its endpoints is the target."""
        attempts = 0
        while True:
            if self.attach and attempts < _PA_RETRIES:
                u, v = self._attached()
            else:
                u, v = self._uniform()
            attempts += 1
            if u == v:
                continue
            pair = (u, v) if self.spec.directed or u < v else (v, u)
            if pair not in live:
                return pair, v

    def add(self, pair: Pair, target: int) -> None:
        self.inserted += 1
        if self.attach:
            self.slot[pair] = len(self.targets)
            self.targets.append(target)
            self.owners.append(pair)

    def remove(self, pair: Pair) -> None:
        if not self.attach:
            return
        i = self.slot.pop(pair)
        target, owner = self.targets.pop(), self.owners.pop()
        if owner != pair:
            self.targets[i], self.owners[i] = target, owner
            self.slot[owner] = i


def generate_stream(spec: GeneratorSpec) -> Iterator[str]:
    """Stream lines: ``av`` for every vertex, then edge insertions and deletions.

    ``target_m`` insertions are made; while live edges exist, each step is a deletion
    with probability ``delete_fraction``, up to target_m * f / (1 - f) deletions.
    The output depends only on the spec.
    """
    rng = random.Random(spec.seed)
    sampler = _PairSampler(spec, rng)
    for v in range(spec.n):
        yield format_op(StreamOp(kind=OpKind.add_vertex, operands=(v,)))

    f = spec.delete_fraction
    deletions = round(spec.target_m * f / (1.0 - f))
    live: list[Pair] = []
    position: dict[Pair, int] = {}
    inserted = deleted = 0
    while inserted < spec.target_m or (deleted < deletions and live):
        delete = (
            live
            and deleted < deletions
            and (inserted >= spec.target_m or rng.random() < f)
        )
        if delete:
            i = rng.randrange(len(live))
            pair = live[i]
            last = live.pop()
            if last != pair:
                live[i] = last
                position[last] = i
            del position[pair]
            sampler.remove(pair)
            deleted += 1
            yield format_op(StreamOp(kind=OpKind.remove_edge, operands=pair))
        else:
            pair, target = sampler.draw(position)
            position[pair] = len(live)
            live.append(pair)
            sampler.add(pair, target)
            inserted += 1
            yield format_op(StreamOp(kind=OpKind.add_edge, operands=pair))
