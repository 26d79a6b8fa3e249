from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any

import networkx as nx
from sympy import Matrix

from aoforge.apps.graphs.serializers import GraphSerializer
from aoforge.apps.graphs.structures import PAO, ConnectedPartition, Edge, IdealFamily, Orientation, SimpleGraph
from aoforge.core.checks import CheckReport
from aoforge.core.exceptions import InvalidArgument
from aoforge.core.guards import check_limit
from aoforge.core.serialization import deserialize, read_json
from libraries.combinatorics.partitions import set_partitions
from libraries.combinatorics.posets import count_linear_extensions, down_sets

logger = logging.getLogger(__name__)


def load_graph(source: str | Path | Mapping[str, Any]) -> SimpleGraph:
    """Load graph JSON from a path or an already parsed mapping."""
    data = source if isinstance(source, Mapping) else read_json(source)
    return deserialize(GraphSerializer, data)


def dump_graph(graph: SimpleGraph) -> dict:
    return GraphSerializer(graph).data


def require_connected(graph: SimpleGraph) -> None:
    if not graph.is_connected():
        raise InvalidArgument(f"{graph} is not connected")


def induced_subgraph(graph: SimpleGraph, sigma: Iterable[int]) -> SimpleGraph:
    """G[σ], keeping the vertex labels of ``graph``."""
    sigma = frozenset(sigma)
    if not sigma:
        raise InvalidArgument("induced subgraph needs a nonempty vertex set")
    if not sigma <= set(graph.vertices):
        raise InvalidArgument(f"vertices {sorted(sigma - set(graph.vertices))} are not in the graph")
    return SimpleGraph(tuple(sorted(sigma)), frozenset(edge for edge in graph.edges if set(edge) <= sigma))


def rooted_extension(graph: SimpleGraph) -> SimpleGraph:
    """G_r: the root ``n+1`` joined to every vertex."""
    root = max(graph.vertices, default=0) + 1
    edges = graph.edges | {(vertex, root) for vertex in graph.vertices}
    return SimpleGraph(graph.vertices + (root,), frozenset(edges), root=root)


def enumerate_acyclic_orientations(graph: SimpleGraph) -> list[Orientation]:
    """Every acyclic orientation, ordered by canonical encoding."""
    edges = graph.edge_list
    digraph = nx.DiGraph()
    digraph.add_nodes_from(graph.vertices)
    found: list[frozenset[Edge]] = []
    arcs: list[Edge] = []

    def extend(index: int) -> None:
        if index == len(edges):
            found.append(frozenset(arcs))
            return
        i, j = edges[index]
        for tail, head in ((i, j), (j, i)):
            if nx.has_path(digraph, head, tail):
                continue
            digraph.add_edge(tail, head)
            arcs.append((tail, head))
            extend(index + 1)
            arcs.pop()
            digraph.remove_edge(tail, head)

    extend(0)
    orientations = sorted((Orientation(graph, arc_set) for arc_set in found), key=lambda o: o.sort_key)
    logger.debug("%s: %d acyclic orientations", graph, len(orientations))
    return orientations


@lru_cache(maxsize=None)
def _acyclic_count(edges: frozenset[Edge]) -> int:
    if not edges:
        return 1
    u, v = max(edges)
    deleted = edges - {(u, v)}
    # Contract v into u; parallel edges collapse, which leaves χ unchanged.
    contracted = frozenset(
        (min(a, b), max(a, b)) for a, b in ((u if x == v else x, u if y == v else y) for x, y in deleted)
    )
    return _acyclic_count(deleted) + _acyclic_count(contracted)


def count_acyclic_orientations(graph: SimpleGraph) -> int:
    """|χ_G(−1)| by deletion–contraction: a(G) = a(G − e) + a(G / e)."""
    return _acyclic_count(graph.edges)


def connected_partitions(graph: SimpleGraph) -> list[ConnectedPartition]:
    partitions = []
    for blocks in set_partitions(graph.vertices):
        if all(graph.is_connected_subset(block) for block in blocks):
            partitions.append(ConnectedPartition(graph, blocks))
    return partitions


def enumerate_paos(graph: SimpleGraph) -> list[PAO]:
    """
    All partial acyclic orientations of ``graph``.

    Raises:
        ResourceLimit: above the ``pao_n`` guard rail.
    """
    check_limit("pao_n", graph.n)
    paos = []
    for partition in connected_partitions(graph):
        quotient = partition.quotient_graph()
        for orientation in enumerate_acyclic_orientations(quotient):
            arcs = frozenset((a - 1, b - 1) for a, b in orientation.arcs)
            paos.append(PAO(partition, arcs))
    paos.sort(key=lambda pao: (-len(pao.blocks), pao.encoding))
    logger.debug("%s: %d partial acyclic orientations", graph, len(paos))
    return paos


def acyclic_orientation_as_pao(orientation: Orientation) -> PAO:
    graph = orientation.graph
    partition = ConnectedPartition(graph, tuple(frozenset({vertex}) for vertex in graph.vertices))
    index = graph.position
    return PAO(partition, frozenset((index[u], index[v]) for u, v in orientation.arcs))


def trivial_pao(graph: SimpleGraph) -> PAO:
    """The one-block PAO; only exists for connected graphs."""
    return PAO(ConnectedPartition(graph, (frozenset(graph.vertices),)), frozenset())


def order_ideal_family(pao: PAO) -> IdealFamily:
    """J_G(O): unions of down-closed block sets of the quotient poset."""
    blocks = pao.blocks
    sets = frozenset(
        frozenset(vertex for index, block in enumerate(blocks) if (mask >> index) & 1 for vertex in block)
        for mask in down_sets(len(blocks), pao.quotient_arcs)
    )
    return IdealFamily(sets)


def linear_extension_count(orientation: Orientation) -> int:
    """e(O) for an acyclic orientation."""
    if not orientation.is_acyclic:
        raise InvalidArgument(f"orientation {orientation} has a directed cycle")
    position = orientation.graph.position
    return count_linear_extensions(orientation.graph.n, ((position[u], position[v]) for u, v in orientation.arcs))


def is_linear_extension(orientation: Orientation, labelling: Mapping[int, int]) -> bool:
    """``labelling`` is a bijection onto 1..n with u < v ⇒ f(u) < f(v)."""
    graph = orientation.graph
    if sorted(labelling.get(vertex, 0) for vertex in graph.vertices) != list(range(1, graph.n + 1)):
        return False
    return all(labelling[u] < labelling[v] for u, v in orientation.arcs)


def submodularity_check(
    graph: SimpleGraph,
    a: Fraction | int,
    b: Fraction | int,
    c: Fraction | int,
    sigma: Iterable[int],
    rho: Iterable[int],
) -> CheckReport:
    """F(σ) = a + b|σ| + c|E(G[σ])| is supermodular, with equality iff σ∖ρ and ρ∖σ are non-adjacent."""
    if Fraction(c) <= 0:
        raise InvalidArgument("c must be positive")
    sigma, rho = frozenset(sigma), frozenset(rho)
    vertices = set(graph.vertices)
    if not (sigma <= vertices and rho <= vertices):
        raise InvalidArgument("sigma and rho must be vertex subsets")

    def value(members: frozenset[int]) -> Fraction:
        return Fraction(a) + Fraction(b) * len(members) + Fraction(c) * graph.edges_inside(members)

    lhs = value(sigma) + value(rho)
    rhs = value(sigma & rho) + value(sigma | rho)
    non_adjacent = not any(graph.has_edge(i, j) for i in sigma - rho for j in rho - sigma)

    report = CheckReport("submodularity")
    report.check("F(σ)+F(ρ) ≤ F(σ∩ρ)+F(σ∪ρ)", lhs <= rhs, [lhs, rhs])
    report.expect("equality iff σ∖ρ, ρ∖σ non-adjacent", non_adjacent, lhs == rhs)
    report.details.update({"lhs": lhs, "rhs": rhs, "equality": lhs == rhs, "non_adjacent": non_adjacent})
    return report


def count_spanning_trees(graph: SimpleGraph) -> int:
    """Matrix-tree theorem: determinant of the Laplacian with one row and column removed."""
    if graph.n <= 1:
        return 1
    index = graph.position
    size = graph.n
    laplacian = [[0] * size for _ in range(size)]
    for i, j in graph.edges:
        a, b = index[i], index[j]
        laplacian[a][a] += 1
        laplacian[b][b] += 1
        laplacian[a][b] -= 1
        laplacian[b][a] -= 1
    reduced = Matrix(laplacian)[1:, 1:]
    return int(reduced.det(method="bareiss"))


def graph_census(graph: SimpleGraph) -> dict:
    """Summary numbers reported by the ``graph`` command."""
    rooted = rooted_extension(graph)
    return {
        "graph": graph.as_dict(),
        "connected": graph.is_connected(),
        "degrees": list(graph.degree_vector),
        "acyclic_orientations": count_acyclic_orientations(graph),
        "rooted_spanning_trees": count_spanning_trees(rooted),
    }


def pao_report(graph: SimpleGraph) -> CheckReport:
    """Order-ideal families of all PAOs: lattices, graded by block count, injective on PAOs."""
    paos = enumerate_paos(graph)
    families = [order_ideal_family(pao) for pao in paos]
    orientations = enumerate_acyclic_orientations(graph)

    report = CheckReport("partial acyclic orientations")
    report.expect(
        "PAOs with n blocks = #AO", count_acyclic_orientations(graph), sum(pao.is_acyclic_orientation for pao in paos)
    )
    report.check("families are lattices", all(family.is_lattice() for family in families))
    report.check(
        "maximal chains have |Σ| steps",
        all(family.maximal_chain_lengths() == {len(pao.blocks)} for pao, family in zip(paos, families)),
    )
    report.check(
        "cover differences are blocks",
        all(family.cover_differences() == set(pao.blocks) for pao, family in zip(paos, families)),
    )
    report.expect("distinct families", len(paos), len({family.masks for family in families}))
    report.expect("distinct indegree vectors", len(orientations), len({o.indegree_vector for o in orientations}))
    report.expect("distinct outdegree vectors", len(orientations), len({o.outdegree_vector for o in orientations}))
    report.expect("Σ e(O) = n!", math.factorial(graph.n), sum(linear_extension_count(o) for o in orientations))
    report.details.update({"paos": len(paos), "acyclic_orientations": len(orientations)})
    return report


def pao_census(graph: SimpleGraph) -> list[dict]:
    return [
        {"encoding": pao.encoding, **pao.as_dict(), "ideals": order_ideal_family(pao).as_list()}
        for pao in enumerate_paos(graph)
    ]
