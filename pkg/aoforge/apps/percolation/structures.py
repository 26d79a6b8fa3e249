from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from aoforge.apps.graphs.structures import SimpleGraph
from aoforge.core.exceptions import InvalidArgument


@dataclass(frozen=True)
class PercolationInstance:
    """k-neighbour bootstrap percolation on ``graph``."""

    graph: SimpleGraph
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidArgument(f"threshold k must be positive, got {self.k}")

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Bit ``i - 1`` stands for vertex ``i``."""
        return tuple(sum(1 << (u - 1) for u in self.graph.neighbors(v)) for v in self.graph.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask(self, members: frozenset[int] | set[int]) -> int:
        return sum(1 << (vertex - 1) for vertex in members)

    def members(self, mask: int) -> frozenset[int]:
        return frozenset(vertex for vertex in self.graph.vertices if (mask >> (vertex - 1)) & 1)

    def __str__(self) -> str:
        return f"{self.graph} with k={self.k}"
