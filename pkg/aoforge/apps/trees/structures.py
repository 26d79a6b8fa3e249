from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from aoforge.apps.graphs.structures import Orientation, SimpleGraph
from aoforge.core.exceptions import InvalidArgument
from aoforge.core.utils import vertex_label
from libraries.combinatorics.partitions import SetPartition, block_index, is_noncrossing


@dataclass(frozen=True)
class RootedSpanningTree:
    """
    Spanning tree of G_r with every edge directed toward the root ``n+1``.

    ``parent[i - 1]`` is i_r, the neighbour of ``i`` on its path to the root.
    """

    graph: SimpleGraph
    parent: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.graph.n
        if self.graph.vertices != tuple(range(1, n + 1)):
            raise InvalidArgument("rooted spanning trees need a graph on 1..n")
        if len(self.parent) != n:
            raise InvalidArgument(f"parent map must cover vertices 1..{n}")
        for vertex, parent in enumerate(self.parent, 1):
            if parent != self.root and not self.graph.has_edge(vertex, parent):
                raise InvalidArgument(f"({vertex}, {vertex_label(parent, n)}) is not an edge of G_r")
        for vertex in range(1, n + 1):
            seen = {vertex}
            current = vertex
            while current != self.root:
                current = self.parent[current - 1]
                if current in seen:
                    raise InvalidArgument(f"parent links from {vertex} do not reach the root")
                seen.add(current)

    @classmethod
    def from_mapping(cls, graph: SimpleGraph, parent: dict[int, int]) -> RootedSpanningTree:
        return cls(graph, tuple(parent[vertex] for vertex in graph.vertices))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def root(self) -> int:
        return self.graph.n + 1

    def parent_of(self, vertex: int) -> int:
        return self.parent[vertex - 1]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """(child, parent) pairs."""
        return tuple((vertex, parent) for vertex, parent in enumerate(self.parent, 1))

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        children: dict[int, list[int]] = {vertex: [] for vertex in range(1, self.n + 2)}
        for vertex, parent in self.edges:
            children[parent].append(vertex)
        return {vertex: tuple(sorted(kids)) for vertex, kids in children.items()}

    @cached_property
    def root_paths(self) -> dict[int, tuple[int, ...]]:
        """``root_paths[v]`` runs from ``v`` up to the root, both included."""
        paths = {self.root: (self.root,)}

        def path(vertex: int) -> tuple[int, ...]:
            if vertex not in paths:
                paths[vertex] = (vertex,) + path(self.parent_of(vertex))
            return paths[vertex]

        for vertex in range(1, self.n + 1):
            path(vertex)
        return paths

    @cached_property
    def encoding(self) -> str:
        return ",".join(f"{vertex}>{vertex_label(parent, self.n)}" for vertex, parent in self.edges)

    def as_dict(self) -> dict:
        return {"parent": {str(vertex): vertex_label(parent, self.n) for vertex, parent in self.edges}}


@dataclass(frozen=True)
class DepictionFunction:
    """Bijection from the vertices of G_r onto 0..n; ``values[v - 1]`` is p(v), the root maps to 0."""

    values: tuple[int, ...]

    def __getitem__(self, vertex: int) -> int:
        return self.values[vertex - 1]

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        """``inverse[k]`` is the vertex depicted at position ``k``."""
        inverse = [0] * len(self.values)
        for vertex, value in enumerate(self.values, 1):
            inverse[value] = vertex
        return tuple(inverse)

    def as_dict(self) -> dict:
        return {vertex_label(vertex, self.n): value for vertex, value in enumerate(self.values, 1)}


@dataclass(frozen=True)
class NCPartition:
    """Non-crossing partition of 0..n, blocks sorted by minimum (the block of 0 first)."""

    blocks: SetPartition

    def __post_init__(self) -> None:
        if not is_noncrossing(self.blocks):
            raise InvalidArgument(f"partition {self.as_list()} is crossing")

    @property
    def size(self) -> int:
        return sum(len(block) for block in self.blocks)

    @cached_property
    def block_index(self) -> tuple[int, ...]:
        return block_index(self.blocks, range(self.size))

    def as_list(self) -> list[list[int]]:
        return [sorted(block) for block in self.blocks]


@dataclass(frozen=True)
class NCChain:
    """Maximal chain π_0 ⋖ π_1 ⋖ … ⋖ π_n in the non-crossing partitions of 0..n."""

    partitions: tuple[NCPartition, ...]

    def __post_init__(self) -> None:
        if not self.partitions:
            raise InvalidArgument("a chain needs at least one partition")
        n = len(self.partitions) - 1
        elements = frozenset(range(n + 1))
        for step, partition in enumerate(self.partitions):
            if frozenset().union(*partition.blocks) != elements or partition.size != n + 1:
                raise InvalidArgument(f"π_{step} is not a partition of 0..{n}")
            if len(partition.blocks) != n + 1 - step:
                raise InvalidArgument(f"π_{step} should have {n + 1 - step} blocks")
        for step in range(1, n + 1):
            before, after = set(self.partitions[step - 1].blocks), set(self.partitions[step].blocks)
            gone, new = before - after, after - before
            if len(gone) != 2 or len(new) != 1 or frozenset().union(*gone) != next(iter(new)):
                raise InvalidArgument(f"π_{step} does not merge exactly two blocks of π_{step - 1}")

    @property
    def n(self) -> int:
        return len(self.partitions) - 1

    def as_list(self) -> list[list[list[int]]]:
        return [partition.as_list() for partition in self.partitions]


class TraceStep(NamedTuple):
    step: int
    placed: int
    anchor: int
    neighbors: tuple[int, ...]
    edge: tuple[str, str]


class TreeOrientation(NamedTuple):
    orientation: Orientation
    flagged: bool
    linear_extension: dict[int, int]
