from __future__ import annotations

import logging
from typing import NamedTuple

import networkx as nx
import numpy as np
from django.conf import settings

from aoforge.apps.graphs.structures import SimpleGraph

logger = logging.getLogger(__name__)

RANDOM_ATTEMPTS = 50


class CorpusGraph(NamedTuple):
    name: str
    graph: SimpleGraph


def from_networkx(graph: nx.Graph) -> SimpleGraph:
    """Relabel the nodes ``1..n`` in sorted order."""
    nodes = sorted(graph.nodes)
    label = {node: index + 1 for index, node in enumerate(nodes)}
    return SimpleGraph.from_edges(len(nodes), [(label[u], label[v]) for u, v in graph.edges])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def star_graph(n: int) -> SimpleGraph:
    """Centre 1 joined to ``2..n``."""
    return SimpleGraph.from_edges(n, [(1, j) for j in range(2, n + 1)])


def edgeless_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [])


def grid_graph(rows: int, columns: int) -> SimpleGraph:
    return from_networkx(nx.grid_2d_graph(rows, columns))


def random_connected_graph(n: int, rng: np.random.Generator) -> SimpleGraph:
    """Random spanning tree plus independent extra edges with probability 1/2."""
    edges = set()
    order = [int(vertex) + 1 for vertex in rng.permutation(n)]
    for index in range(1, n):
        parent = order[int(rng.integers(index))]
        edges.add((min(parent, order[index]), max(parent, order[index])))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) not in edges and rng.random() < 0.5:
                edges.add((i, j))
    return SimpleGraph.from_edges(n, sorted(edges))


def graph_corpus(n_max: int, seed: int | None = None, random_per_n: int | None = None) -> list[CorpusGraph]:
    """
    Connected test graphs with at most ``n_max`` vertices, in a fixed order.

    Paths, cycles, complete graphs, stars and complete bipartite graphs for each size, the 3×3 grid
    once ``n_max >= 9``, and seeded random connected graphs.
    """
    seed = settings.AOFORGE_DEFAULT_SEED if seed is None else seed
    random_per_n = settings.AOFORGE_CORPUS_RANDOM_GRAPHS if random_per_n is None else random_per_n
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))

    corpus: list[CorpusGraph] = []
    seen: set[SimpleGraph] = set()

    def add(name: str, graph: SimpleGraph) -> bool:
        if graph in seen:
            return False
        seen.add(graph)
        corpus.append(CorpusGraph(name, graph))
        return True

    for n in range(1, n_max + 1):
        add(f"P{n}", path_graph(n))
        if n >= 3:
            add(f"C{n}", cycle_graph(n))
        add(f"K{n}", complete_graph(n))
        if n >= 4:
            add(f"S{n}", star_graph(n))
        for left in range(2, n // 2 + 1):
            add(f"K{left},{n - left}", from_networkx(nx.complete_bipartite_graph(left, n - left)))
        if n >= 4:
            # Duplicates are redrawn, at most RANDOM_ATTEMPTS times.
            for index in range(random_per_n):
                for _ in range(RANDOM_ATTEMPTS):
                    if add(f"R{n}-{index}", random_connected_graph(n, rng)):
                        break
    if n_max >= 9:
        add("Grid3x3", grid_graph(3, 3))

    logger.debug("corpus n_max=%d seed=%d: %d graphs", n_max, seed, len(corpus))
    return corpus
