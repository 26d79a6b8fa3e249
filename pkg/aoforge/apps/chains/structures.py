from __future__ import annotations

from collections.abc import Hashable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from aoforge.apps.graphs.structures import Orientation, SimpleGraph
from aoforge.core.constants import ChainKind
from aoforge.core.exceptions import ConsistencyError
from aoforge.core.utils import format_fraction

# CS, CR and IR walk on acyclic orientations; ELR and SL on labellings, ``labels[v - 1]`` = f(v).
ChainState = Orientation | tuple[int, ...]


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic matrix over ``states``; ``rows[i]`` maps successor index to probability."""

    kind: ChainKind
    states: tuple[Hashable, ...]
    keys: tuple[str, ...]
    rows: tuple[dict[int, Fraction], ...]

    def __post_init__(self) -> None:
        for index, row in enumerate(self.rows):
            if sum(row.values(), Fraction(0)) != 1:
                raise ConsistencyError(f"{self.kind} row {self.keys[index]} does not sum to 1")

    def __len__(self) -> int:
        return len(self.states)

    def dense(self) -> list[list[Fraction]]:
        return [[row.get(column, Fraction(0)) for column in range(len(self))] for row in self.rows]

    def apply(self, law: list[Fraction]) -> list[Fraction]:
        """The row vector ``law · P``."""
        result = [Fraction(0)] * len(self)
        for index, row in enumerate(self.rows):
            if law[index]:
                for column, probability in row.items():
                    result[column] += law[index] * probability
        return result

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "states": list(self.keys),
            "rows": [{self.keys[column]: format_fraction(p) for column, p in sorted(row.items())} for row in self.rows],
        }


class FlipGraph(NamedTuple):
    """Flip graph of a chain on acyclic orientations; vertex ``k`` of ``graph`` is ``states[k - 1]``."""

    kind: ChainKind
    states: tuple[Orientation, ...]
    graph: SimpleGraph


@dataclass(frozen=True)
class SuccessorTable:
    """One successor index per uniform choice, for every state of the chain."""

    kind: ChainKind
    graph: SimpleGraph
    states: tuple[Hashable, ...]
    keys: tuple[str, ...]
    successors: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.states)


class MarkovChain:
    """
    Iterator over the state indices of one run of a chain.

        chain = MarkovChain(table, initial, rng, total_steps=1000)
        for state in chain:
            ...

    Uniforms are drawn from ``rng`` in chunks; each step takes ``successors[int(u * k)]``.
    """

    chunk = 65536

    def __init__(self, table: SuccessorTable, initial: int, rng: np.random.Generator, total_steps: int) -> None:
        self.table = table
        self.state = initial
        self.rng = rng
        self.total_steps = total_steps

    def __iter__(self) -> Iterator[int]:
        self.counter = 0
        self._draws: list[float] = []
        self._position = 0
        return self

    def __next__(self) -> int:
        if self.counter >= self.total_steps:
            raise StopIteration
        if self._position == len(self._draws):
            self._draws = self.rng.random(min(self.chunk, self.total_steps - self.counter)).tolist()
            self._position = 0
        u = self._draws[self._position]
        self._position += 1
        choices = self.table.successors[self.state]
        self.state = choices[int(u * len(choices))]
        self.counter += 1
        return self.state


@dataclass
class SimulationResult:
    kind: ChainKind
    seed: int
    steps: int
    burn_in: int
    replicas: int
    counts: dict[str, int]
    frequencies: dict[str, float]
    exact: dict[str, Fraction]
    total_variation: float
    conditional: dict[str, float] = field(default_factory=dict)
    conditional_visits: int = 0

    def as_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "seed": self.seed,
            "steps": self.steps,
            "burn_in": self.burn_in,
            "replicas": self.replicas,
            "visits": sum(self.counts.values()),
            "frequencies": {
                key: {"count": self.counts.get(key, 0), "frequency": self.frequencies.get(key, 0.0), "exact": exact}
                for key, exact in sorted(self.exact.items())
            },
            "total_variation": self.total_variation,
        }
        if self.kind == ChainKind.SL:
            data["conditional_on_root_on_top"] = {"visits": self.conditional_visits, "frequencies": self.conditional}
        return data
