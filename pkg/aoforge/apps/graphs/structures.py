from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from aoforge.core.exceptions import InvalidArgument

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """
    Undirected simple graph.

    ``vertices`` are positive integers in increasing order (``1..n`` for input graphs, a subset for
    induced subgraphs, which keep the labels of the ambient graph). ``edges`` hold normalized pairs
    ``(i, j)`` with ``i < j``. ``root`` is set on rooted extensions only.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    root: int | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> SimpleGraph:
        if n < 0:
            raise InvalidArgument(f"vertex count must be nonnegative, got {n}")
        normalized: set[Edge] = set()
        for pair in edges:
            i, j = tuple(pair)
            if i == j:
                raise InvalidArgument(f"loop at vertex {i}: [{i}, {j}]")
            if not (1 <= i <= n and 1 <= j <= n):
                raise InvalidArgument(f"edge [{i}, {j}] has an endpoint outside 1..{n}")
            edge = normalize_edge(i, j)
            if edge in normalized:
                raise InvalidArgument(f"duplicate edge [{i}, {j}]")
            normalized.add(edge)
        return cls(tuple(range(1, n + 1)), frozenset(normalized))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        neighbors: dict[int, set[int]] = {vertex: set() for vertex in self.vertices}
        for i, j in self.edges:
            neighbors[i].add(j)
            neighbors[j].add(i)
        return {vertex: frozenset(adjacent) for vertex, adjacent in neighbors.items()}

    @cached_property
    def position(self) -> dict[int, int]:
        return {vertex: index for index, vertex in enumerate(self.vertices)}

    def neighbors(self, vertex: int) -> frozenset[int]:
        return self.adjacency[vertex]

    def degree(self, vertex: int) -> int:
        return len(self.adjacency[vertex])

    @cached_property
    def degree_vector(self) -> tuple[int, ...]:
        return tuple(self.degree(vertex) for vertex in self.vertices)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def edges_inside(self, sigma: Iterable[int]) -> int:
        """|E(G[σ])|"""
        sigma = frozenset(sigma)
        return sum(1 for i, j in self.edges if i in sigma and j in sigma)

    def degout(self, sigma: frozenset[int], vertex: int) -> int:
        """Neighbours of ``vertex`` outside ``sigma``."""
        return len(self.adjacency[vertex] - sigma)

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.to_networkx())

    def is_connected_subset(self, sigma: frozenset[int]) -> bool:
        return bool(sigma) and nx.is_connected(self.frozen_networkx.subgraph(sigma))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edge_list)
        return graph

    @cached_property
    def frozen_networkx(self) -> nx.Graph:
        return nx.freeze(self.to_networkx())

    def as_dict(self) -> dict:
        return {"n": self.n, "edges": [list(edge) for edge in self.edge_list]}

    def __str__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={list(self.edge_list)})"


@dataclass(frozen=True)
class Orientation:
    """
    Orientation of (some of) the edges of ``graph``.

    ``arcs`` holds directed pairs ``(u, v)`` meaning ``u`` lies below ``v``; edges without an arc
    are unoriented.
    """

    graph: SimpleGraph
    arcs: frozenset[Edge]

    def __post_init__(self) -> None:
        seen: set[Edge] = set()
        for u, v in self.arcs:
            edge = normalize_edge(u, v)
            if edge not in self.graph.edges:
                raise InvalidArgument(f"arc ({u}, {v}) is not an edge of the graph")
            if edge in seen:
                raise InvalidArgument(f"edge {list(edge)} is oriented both ways")
            seen.add(edge)

    @classmethod
    def from_labelling(cls, graph: SimpleGraph, labelling: Mapping[int, int]) -> Orientation:
        """Edge ``{u, v}`` becomes ``(u, v)`` when ``labelling[u] < labelling[v]``."""
        return cls(graph, frozenset((u, v) if labelling[u] < labelling[v] else (v, u) for u, v in graph.edges))

    def value(self, edge: Edge) -> Edge:
        u, v = normalize_edge(*edge)
        if (u, v) in self.arcs:
            return (u, v)
        if (v, u) in self.arcs:
            return (v, u)
        return (u, v)

    def is_oriented(self, edge: Edge) -> bool:
        u, v = edge
        return (u, v) in self.arcs or (v, u) in self.arcs

    @property
    def is_complete(self) -> bool:
        return len(self.arcs) == len(self.graph.edges)

    @cached_property
    def unoriented(self) -> frozenset[Edge]:
        return frozenset(edge for edge in self.graph.edges if not self.is_oriented(edge))

    @cached_property
    def indegree_vector(self) -> tuple[int, ...]:
        counts = dict.fromkeys(self.graph.vertices, 0)
        for _, head in self.arcs:
            counts[head] += 1
        return tuple(counts[vertex] for vertex in self.graph.vertices)

    @cached_property
    def outdegree_vector(self) -> tuple[int, ...]:
        counts = dict.fromkeys(self.graph.vertices, 0)
        for tail, _ in self.arcs:
            counts[tail] += 1
        return tuple(counts[vertex] for vertex in self.graph.vertices)

    @cached_property
    def unoriented_degree_vector(self) -> tuple[int, ...]:
        counts = dict.fromkeys(self.graph.vertices, 0)
        for i, j in self.unoriented:
            counts[i] += 1
            counts[j] += 1
        return tuple(counts[vertex] for vertex in self.graph.vertices)

    @cached_property
    def no_outdegree_vector(self) -> tuple[int, ...]:
        """Directed-in plus unoriented incident edges, per vertex."""
        return tuple(i + u for i, u in zip(self.indegree_vector, self.unoriented_degree_vector))

    def indegree(self, vertex: int) -> int:
        return self.indegree_vector[self.graph.position[vertex]]

    def outdegree(self, vertex: int) -> int:
        return self.outdegree_vector[self.graph.position[vertex]]

    def to_networkx(self) -> nx.DiGraph:
        digraph = nx.DiGraph()
        digraph.add_nodes_from(self.graph.vertices)
        digraph.add_edges_from(sorted(self.arcs))
        return digraph

    @cached_property
    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def reversed(self, edges: Iterable[Edge]) -> Orientation:
        flip = {normalize_edge(*edge) for edge in edges}
        return Orientation(
            self.graph, frozenset((v, u) if normalize_edge(u, v) in flip else (u, v) for u, v in self.arcs)
        )

    @cached_property
    def sort_key(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.arcs))

    @cached_property
    def encoding(self) -> str:
        return ",".join(f"{u}->{v}" for u, v in self.sort_key)

    def __str__(self) -> str:
        return self.encoding or "(empty)"


@dataclass(frozen=True)
class ConnectedPartition:
    graph: SimpleGraph
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        covered = [vertex for block in self.blocks for vertex in block]
        if sorted(covered) != list(self.graph.vertices):
            raise InvalidArgument("blocks must partition the vertex set")
        for block in self.blocks:
            if not self.graph.is_connected_subset(block):
                raise InvalidArgument(f"block {sorted(block)} does not induce a connected subgraph")

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {vertex: index for index, block in enumerate(self.blocks) for vertex in block}

    @cached_property
    def quotient_edges(self) -> frozenset[Edge]:
        """Adjacent block pairs, as 0-based block indices."""
        block_of = self.block_of
        return frozenset(
            normalize_edge(block_of[i], block_of[j]) for i, j in self.graph.edges if block_of[i] != block_of[j]
        )

    def quotient_graph(self) -> SimpleGraph:
        """The partition graph with blocks relabelled ``1..|Σ|``."""
        return SimpleGraph(
            tuple(range(1, len(self.blocks) + 1)), frozenset((a + 1, b + 1) for a, b in self.quotient_edges)
        )


@dataclass(frozen=True)
class PAO:
    """
    Partial acyclic orientation: a connected partition plus an acyclic orientation of its quotient.

    ``quotient_arcs`` are pairs of 0-based block indices ``(a, b)`` meaning block ``a`` lies below
    block ``b``.
    """

    partition: ConnectedPartition
    quotient_arcs: frozenset[Edge]

    def __post_init__(self) -> None:
        if {normalize_edge(a, b) for a, b in self.quotient_arcs} != set(self.partition.quotient_edges) or len(
            self.quotient_arcs
        ) != len(self.partition.quotient_edges):
            raise InvalidArgument("quotient orientation must orient every quotient edge exactly once")
        if not nx.is_directed_acyclic_graph(nx.DiGraph(sorted(self.quotient_arcs))):
            raise InvalidArgument("quotient orientation has a directed cycle")

    @property
    def graph(self) -> SimpleGraph:
        return self.partition.graph

    @property
    def blocks(self) -> tuple[frozenset[int], ...]:
        return self.partition.blocks

    @property
    def dim(self) -> int:
        """dim_G(O) = |V| - |Σ|"""
        return self.graph.n - len(self.blocks)

    @cached_property
    def orientation(self) -> Orientation:
        """Edge-level orientation: edges inside a block stay unoriented."""
        block_of = self.partition.block_of
        arcs = set()
        for i, j in self.graph.edges:
            a, b = block_of[i], block_of[j]
            if a == b:
                continue
            arcs.add((i, j) if (a, b) in self.quotient_arcs else (j, i))
        return Orientation(self.graph, frozenset(arcs))

    @property
    def is_acyclic_orientation(self) -> bool:
        return len(self.blocks) == self.graph.n

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    @cached_property
    def encoding(self) -> str:
        blocks = "|".join(",".join(str(vertex) for vertex in sorted(block)) for block in self.blocks)
        arcs = ",".join(f"{a}->{b}" for a, b in sorted(self.quotient_arcs))
        return f"{blocks};{arcs}"

    def as_dict(self) -> dict:
        return {
            "blocks": [sorted(block) for block in self.blocks],
            "arcs": [[sorted(self.blocks[a]), sorted(self.blocks[b])] for a, b in sorted(self.quotient_arcs)],
            "dim": self.dim,
        }


@dataclass(frozen=True)
class IdealFamily:
    """Order ideals of a PAO's quotient poset, as vertex subsets ordered by inclusion."""

    sets: frozenset[frozenset[int]]

    @cached_property
    def masks(self) -> frozenset[int]:
        return frozenset(sum(1 << vertex for vertex in members) for members in self.sets)

    def __contains__(self, members: object) -> bool:
        return members in self.sets

    def __len__(self) -> int:
        return len(self.sets)

    def issubset(self, other: IdealFamily) -> bool:
        return self.masks <= other.masks

    def is_lattice(self) -> bool:
        """Closed under union and intersection."""
        masks = self.masks
        return all(a | b in masks and a & b in masks for a in masks for b in masks)

    def maximal_chain_lengths(self) -> set[int]:
        """Lengths of all maximal chains ``∅ ⊂ … ⊂ V`` through covering relations of the family."""
        ordered = sorted(self.sets, key=len)
        covers: dict[frozenset[int], list[frozenset[int]]] = {members: [] for members in ordered}
        for low in ordered:
            above = [high for high in ordered if low < high]
            covers[low] = [high for high in above if not any(low < mid < high for mid in above)]

        lengths: dict[frozenset[int], set[int]] = {}
        for members in reversed(ordered):
            if not covers[members]:
                lengths[members] = {0}
            else:
                lengths[members] = {1 + length for high in covers[members] for length in lengths[high]}
        return lengths[ordered[0]] if ordered else set()

    def cover_differences(self) -> set[frozenset[int]]:
        """The sets ``high - low`` over covering relations ``low ⋖ high`` of the family."""
        ordered = sorted(self.sets, key=len)
        differences = set()
        for low in ordered:
            above = [high for high in ordered if low < high]
            for high in above:
                if not any(low < mid < high for mid in above):
                    differences.add(high - low)
        return differences

    def as_list(self) -> list[list[int]]:
        return sorted((sorted(members) for members in self.sets), key=lambda members: (len(members), members))
