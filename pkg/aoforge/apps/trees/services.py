from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator, Mapping, Sequence
from functools import cmp_to_key, lru_cache
from pathlib import Path
from typing import Any

from aoforge.apps.graphs.services import (
    count_spanning_trees,
    enumerate_acyclic_orientations,
    is_linear_extension,
    rooted_extension,
)
from aoforge.apps.graphs.structures import Orientation, SimpleGraph
from aoforge.apps.ideals.services import ideal_t, standard_monomials
from aoforge.apps.ideals.structures import Monomial, MonomialIdeal
from aoforge.apps.trees.serializers import ChainSerializer, TreeSerializer
from aoforge.apps.trees.structures import (
    DepictionFunction,
    NCChain,
    NCPartition,
    RootedSpanningTree,
    TraceStep,
    TreeOrientation,
)
from aoforge.core.checks import CheckReport
from aoforge.core.exceptions import ConsistencyError, InvalidArgument
from aoforge.core.guards import check_limit
from aoforge.core.serialization import deserialize, read_json
from aoforge.core.utils import vertex_label
from libraries.combinatorics.partitions import SetPartition, canonical_partition, noncrossing_partitions
from libraries.combinatorics.partitions import is_noncrossing as partition_is_noncrossing

logger = logging.getLogger(__name__)


def load_tree(graph: SimpleGraph, source: str | Path | Mapping[str, Any]) -> RootedSpanningTree:
    data = source if isinstance(source, Mapping) else read_json(source)
    return deserialize(TreeSerializer, data, context={"graph": graph})


def load_chain(source: str | Path | Sequence | Mapping[str, Any]) -> NCChain:
    """Chain JSON is a bare list of block-lists; ``{"partitions": [...]}`` is accepted too."""
    data = read_json(source) if isinstance(source, (str, Path)) else source
    if not isinstance(data, Mapping):
        data = {"partitions": data}
    return deserialize(ChainSerializer, data)


def _precedes(tree: RootedSpanningTree, i: int, j: int) -> int:
    """cmp for ≺_T: ancestors come first, otherwise the larger branch at the meeting vertex wins."""
    if i == j:
        return 0
    path_i, path_j = tree.root_paths[i], tree.root_paths[j]
    on_j = set(path_j)
    meet = next(vertex for vertex in path_i if vertex in on_j)
    if meet == i:
        return -1
    if meet == j:
        return 1
    branch_i = path_i[path_i.index(meet) - 1]
    branch_j = path_j[path_j.index(meet) - 1]
    if branch_i == branch_j:
        raise ConsistencyError(f"vertices {i} and {j} are incomparable in {tree.encoding}")
    return -1 if branch_i > branch_j else 1


def sibling_condition(tree: RootedSpanningTree, p: DepictionFunction) -> bool:
    """Children i < j of a common vertex have p(i) > p(j)."""
    return all(
        p[first] > p[second] for kids in tree.children.values() for first, second in itertools.combinations(kids, 2)
    )


def is_order_reversing(tree: RootedSpanningTree, p: DepictionFunction) -> bool:
    return p[tree.root] == 0 and all(p[parent] < p[vertex] for vertex, parent in tree.edges)


def is_noncrossing(tree: RootedSpanningTree, p: DepictionFunction) -> bool:
    """No two tree arcs interleave: p(i) < p(k) < p(j) < p(m) for edges (j, i), (m, k)."""
    arcs = [(p[parent], p[vertex]) for vertex, parent in tree.edges]
    for (low, high), (other_low, other_high) in itertools.permutations(arcs, 2):
        if low < other_low < high < other_high:
            return False
    return True


def canonical_depiction(tree: RootedSpanningTree) -> DepictionFunction:
    """The unique non-crossing, order-reversing p with the sibling condition, via ≺_T ranks."""
    order = sorted(range(1, tree.n + 1), key=cmp_to_key(lambda i, j: _precedes(tree, i, j)))
    values = [0] * (tree.n + 1)
    for rank, vertex in enumerate(order, 1):
        values[vertex - 1] = rank
    p = DepictionFunction(tuple(values))
    if not (is_order_reversing(tree, p) and sibling_condition(tree, p) and is_noncrossing(tree, p)):
        raise ConsistencyError(f"≺_T ranks of {tree.encoding} are not a non-crossing depiction")
    return p


def depiction_uniqueness_check(tree: RootedSpanningTree) -> CheckReport:
    """Brute force over every bijection onto 0..n: exactly one admissible p, the canonical one."""
    check_limit("depiction_bruteforce_n", tree.n)
    admissible = []
    for ranks in itertools.permutations(range(1, tree.n + 1)):
        p = DepictionFunction(ranks + (0,))
        if is_order_reversing(tree, p) and sibling_condition(tree, p) and is_noncrossing(tree, p):
            admissible.append(p)

    report = CheckReport("depiction uniqueness")
    report.expect("admissible depictions", 1, len(admissible))
    report.expect("equals ≺_T ranks", [canonical_depiction(tree)], admissible)
    return report


@lru_cache(maxsize=32)
def _tree_ideal(graph: SimpleGraph) -> MonomialIdeal:
    return ideal_t(graph)


def _grow_tree(graph: SimpleGraph, a: Sequence[int]) -> tuple[RootedSpanningTree, list[TraceStep]]:
    n = graph.n
    root = n + 1
    rooted = rooted_extension(graph)
    placed = {root: 0}  # f_a^{-1}
    placed_at = [root]  # f_a
    parent: dict[int, int] = {}
    steps = []
    for step in range(1, n + 1):
        best: tuple[int, int] | None = None
        best_sequence: tuple[int, ...] = ()
        for vertex in graph.vertices:
            if vertex in placed:
                continue
            sequence = tuple(sorted(placed[u] for u in rooted.neighbors(vertex) if u in placed))
            if a[vertex - 1] >= len(sequence):
                continue
            candidate = (sequence[a[vertex - 1]], vertex)
            if best is None or candidate > best:
                best, best_sequence = candidate, sequence
        if best is None:
            raise InvalidArgument(f"x^{list(a)} is not standard: no admissible pair at step {step}")
        anchor, vertex = best
        placed[vertex] = step
        placed_at.append(vertex)
        parent[vertex] = placed_at[anchor]
        steps.append(TraceStep(step, vertex, anchor, best_sequence, (str(vertex), vertex_label(parent[vertex], n))))
    return RootedSpanningTree.from_mapping(graph, parent), steps


def monomial_to_tree(graph: SimpleGraph, a: Sequence[int]) -> RootedSpanningTree:
    """
    Grow T_a by repeatedly taking the lexicographically maximal admissible (k, j).

    ``j`` is admissible with ``k = l_{a_j}`` where l_0 < l_1 < … are the steps at which the
    neighbours of ``j`` in G_r were placed.

    Raises:
        InvalidArgument: when x^a lies in T_G or the recursion gets stuck.
    """
    return monomial_to_tree_trace(graph, a)[0]


def monomial_to_tree_trace(graph: SimpleGraph, a: Sequence[int]) -> tuple[RootedSpanningTree, list[TraceStep]]:
    a = tuple(a)
    if len(a) != graph.n or any(power < 0 for power in a):
        raise InvalidArgument(f"exponent vector {list(a)} does not fit a graph on {graph.n} vertices")
    if a in _tree_ideal(graph):
        raise InvalidArgument(f"x^{list(a)} lies in the tree ideal, it is not a standard monomial")
    return _grow_tree(graph, a)


def tree_to_monomial(tree: RootedSpanningTree, p: DepictionFunction | None = None) -> Monomial:
    """b(T)_i counts the G_r neighbours of i depicted before i_r."""
    p = p or canonical_depiction(tree)
    rooted = rooted_extension(tree.graph)
    return tuple(
        sum(1 for u in rooted.neighbors(vertex) if p[u] < p[tree.parent_of(vertex)]) for vertex in tree.graph.vertices
    )


def tree_to_orientation(tree: RootedSpanningTree) -> TreeOrientation:
    graph = tree.graph
    p = canonical_depiction(tree)
    arcs = set()
    for i, j in graph.edges:
        if p[j] <= p[tree.parent_of(i)]:
            arcs.add((i, j))
        elif p[i] <= p[tree.parent_of(j)]:
            arcs.add((j, i))
    orientation = Orientation(graph, frozenset(arcs))
    flagged = not any(
        p[tree.parent_of(i)] < p[j] < p[i] for i in graph.vertices for j in graph.neighbors(i)
    )
    linear_extension = {vertex: graph.n + 1 - p[vertex] for vertex in graph.vertices}
    if flagged and not (orientation.is_complete and orientation.is_acyclic):
        raise ConsistencyError(f"flagged tree {tree.encoding} gave the partial orientation {orientation}")
    return TreeOrientation(orientation, flagged, linear_extension)


def ao_to_tree(orientation: Orientation) -> RootedSpanningTree:
    if not (orientation.is_complete and orientation.is_acyclic):
        raise InvalidArgument(f"{orientation} is not an acyclic orientation")
    return monomial_to_tree(orientation.graph, orientation.outdegree_vector)


def enumerate_rooted_spanning_trees(graph: SimpleGraph) -> list[RootedSpanningTree]:
    """Spanning trees of G_r, one parent choice per vertex, ordered by parent tuple."""
    root = graph.n + 1
    choices = [sorted(graph.neighbors(vertex) | {root}) for vertex in graph.vertices]
    trees = []
    for parent in itertools.product(*choices):
        reaches = {root}
        pending = set(graph.vertices)
        while pending:
            grown = {vertex for vertex in pending if parent[vertex - 1] in reaches}
            if not grown:
                break
            reaches |= grown
            pending -= grown
        if not pending:
            trees.append(RootedSpanningTree(graph, parent))
    logger.debug("%s: %d rooted spanning trees", graph, len(trees))
    return trees


def _merge(partition: SetPartition, first: int, second: int) -> SetPartition:
    blocks = [block for index, block in enumerate(partition) if index not in (first, second)]
    return canonical_partition(blocks + [partition[first] | partition[second]])


def _nc_merges(partition: SetPartition) -> Iterator[SetPartition]:
    for first, second in itertools.combinations(range(len(partition)), 2):
        merged = _merge(partition, first, second)
        if partition_is_noncrossing(merged):
            yield merged


def enumerate_nc_partitions(elements: Sequence[int]) -> list[NCPartition]:
    return [NCPartition(blocks) for blocks in noncrossing_partitions(elements)]


def _singletons(n: int) -> SetPartition:
    return tuple(frozenset({element}) for element in range(n + 1))


def enumerate_nc_maximal_chains(n: int) -> list[NCChain]:
    check_limit("nc_chain_n", n)
    chains = []

    def extend(path: list[SetPartition]) -> None:
        if len(path[-1]) == 1:
            chains.append(NCChain(tuple(NCPartition(blocks) for blocks in path)))
            return
        for merged in _nc_merges(path[-1]):
            path.append(merged)
            extend(path)
            path.pop()

    extend([_singletons(n)])
    return chains


@lru_cache(maxsize=None)
def _chains_above(partition: SetPartition) -> int:
    if len(partition) == 1:
        return 1
    return sum(_chains_above(merged) for merged in _nc_merges(partition))


def count_nc_maximal_chains(n: int) -> int:
    """Maximal chains of NC([0, n]), counted over the partitions they pass through."""
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    check_limit("nc_chain_n", n)
    return _chains_above(_singletons(n))


def chain_to_tree(chain: NCChain) -> tuple[RootedSpanningTree, DepictionFunction]:
    n = chain.n
    lost_minimum = {}  # step -> ī
    predecessor = {}  # step -> i̲
    for step in range(1, n + 1):
        before, after = set(chain.partitions[step - 1].blocks), set(chain.partitions[step].blocks)
        first, second = before - after
        (merged,) = after - before
        bar = max(min(first), min(second))
        lost_minimum[step] = bar
        predecessor[step] = max(element for element in merged if element < bar)

    p = DepictionFunction(tuple(lost_minimum[vertex] for vertex in range(1, n + 1)) + (0,))
    graph = SimpleGraph.from_edges(n, itertools.combinations(range(1, n + 1), 2))
    tree = RootedSpanningTree(graph, tuple(p.inverse[predecessor[vertex]] for vertex in range(1, n + 1)))
    return tree, p


def tree_to_chain(tree: RootedSpanningTree) -> NCChain:
    """π_i merges the blocks holding p(i) and p(i_r)."""
    p = canonical_depiction(tree)
    partition = _singletons(tree.n)
    partitions = [partition]
    for vertex in range(1, tree.n + 1):
        lookup = {element: index for index, block in enumerate(partition) for element in block}
        first, second = lookup[p[vertex]], lookup[p[tree.parent_of(vertex)]]
        if first == second:
            raise ConsistencyError(f"{tree.encoding}: step {vertex} merges a block with itself")
        partition = _merge(partition, first, second)
        partitions.append(partition)
    if not all(partition_is_noncrossing(blocks) for blocks in partitions):
        raise ConsistencyError(f"{tree.encoding} produced a crossing partition")
    return NCChain(tuple(NCPartition(blocks) for blocks in partitions))


def forest_identity(n: int) -> CheckReport:
    """(n+1)^{n−1} against Σ_{π ∈ NC([n])} n!/∏|B|!."""
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    check_limit("forest_n", n)
    lhs = (n + 1) ** (n - 1)
    rhs = sum(
        math.factorial(n) // math.prod(math.factorial(len(block)) for block in blocks)
        for blocks in noncrossing_partitions(range(1, n + 1))
    )
    report = CheckReport("forest identity")
    report.expect(f"(n+1)^(n-1) at n={n}", lhs, rhs)
    report.details.update({"n": n, "lhs": lhs, "rhs": rhs})
    return report


def arc_diagram(tree: RootedSpanningTree, p: DepictionFunction | None = None) -> str:
    """Vertices left to right by p, one row per tree arc."""
    p = p or canonical_depiction(tree)
    width = 4
    header = "".join(vertex_label(vertex, tree.n).ljust(width) for vertex in p.inverse).rstrip()
    rows = [header]
    for vertex, parent in sorted(tree.edges, key=lambda edge: (p[edge[1]], p[edge[0]])):
        low, high = p[parent], p[vertex]
        row = " " * (low * width) + "+" + "-" * ((high - low) * width - 1) + "+"
        rows.append(f"{row.ljust((tree.n + 1) * width)}  {vertex}->{vertex_label(parent, tree.n)}")
    return "\n".join(rows)


def _is_cover(orientation: Orientation, lower: int, upper: int) -> bool:
    """(lower, upper) is an arc and the only directed path between them."""
    if (lower, upper) not in orientation.arcs:
        return False
    successors: dict[int, list[int]] = {vertex: [] for vertex in orientation.graph.vertices}
    for tail, head in orientation.arcs:
        if (tail, head) != (lower, upper):
            successors[tail].append(head)
    stack, seen = [lower], {lower}
    while stack:
        vertex = stack.pop()
        for head in successors[vertex]:
            if head == upper:
                return False
            if head not in seen:
                seen.add(head)
                stack.append(head)
    return True


def flagged_trees(graph: SimpleGraph) -> CheckReport:
    """Flagged spanning trees of G_r against the acyclic orientations of G."""
    trees = enumerate_rooted_spanning_trees(graph)
    orientations = enumerate_acyclic_orientations(graph)
    flagged = []
    report = CheckReport("flagged trees")
    for tree in trees:
        result = tree_to_orientation(tree)
        if not result.flagged:
            continue
        flagged.append(tree)
        report.check(
            f"{tree.encoding}: n+1-p is a linear extension",
            is_linear_extension(result.orientation, result.linear_extension),
            result.linear_extension,
        )
        inner = [(vertex, parent) for vertex, parent in tree.edges if parent != tree.root]
        report.check(
            f"{tree.encoding}: tree edges are covers",
            all(_is_cover(result.orientation, vertex, parent) for vertex, parent in inner),
            inner,
        )
    report.expect("flagged trees = acyclic orientations", len(orientations), len(flagged))
    for orientation in orientations:
        tree = ao_to_tree(orientation)
        result = tree_to_orientation(tree)
        roundtrip = result.flagged and result.orientation == orientation
        report.check(f"{orientation}: ao -> tree -> ao", roundtrip, tree.encoding)
    report.details.update({"trees": len(trees), "flagged": len(flagged), "acyclic_orientations": len(orientations)})
    return report


def roundtrip_suite(graph: SimpleGraph) -> CheckReport:
    """Standard monomials of T_G against spanning trees of G_r, both directions."""
    t_ideal = _tree_ideal(graph)
    monomials = standard_monomials(t_ideal, graph.degree_vector)
    trees = enumerate_rooted_spanning_trees(graph)
    report = CheckReport("tree roundtrips")
    matrix_tree = count_spanning_trees(rooted_extension(graph))
    report.expect("standard monomials = spanning trees of G_r", matrix_tree, len(monomials))
    report.expect("enumerated trees = matrix-tree count", len(monomials), len(trees))

    passed_a = 0
    for a in monomials:
        tree, steps = _grow_tree(graph, a)
        grown = DepictionFunction(tuple(step.step for step in sorted(steps, key=lambda s: s.placed)) + (0,))
        ok = tree_to_monomial(tree) == a and grown == canonical_depiction(tree)
        passed_a += ok
        if not ok:
            report.check(f"x^{list(a)}: b(T_a) = a with p_a canonical", False, tree.encoding)

    passed_b = 0
    for tree in trees:
        b = tree_to_monomial(tree)
        ok = b not in t_ideal and monomial_to_tree(graph, b) == tree
        passed_b += ok
        if not ok:
            report.check(f"{tree.encoding}: T_b(T) = T", False, list(b))

    report.expect("monomial -> tree -> monomial", len(monomials), passed_a)
    report.expect("tree -> monomial -> tree", len(trees), passed_b)
    report.details.update({"standard_monomials": len(monomials), "trees": len(trees)})
    return report


def chain_suite(n: int) -> CheckReport:
    """Chains of NC([0, n]) against spanning trees of (K_n)_r."""
    chains = enumerate_nc_maximal_chains(n)
    trees = enumerate_rooted_spanning_trees(SimpleGraph.from_edges(n, itertools.combinations(range(1, n + 1), 2)))
    report = CheckReport("chain roundtrips")
    report.expect(f"maximal chains of NC([0,{n}])", (n + 1) ** (n - 1), count_nc_maximal_chains(n))
    report.expect("enumerated chains", len(trees), len(chains))

    images = set()
    passed = 0
    for chain in chains:
        tree, p = chain_to_tree(chain)
        images.add(tree)
        passed += p == canonical_depiction(tree) and tree_to_chain(tree) == chain
    report.expect("chain -> tree -> chain with canonical p_C", len(chains), passed)
    report.expect("chain -> tree hits every tree", len(trees), len(images))
    returned = sum(chain_to_tree(tree_to_chain(tree))[0] == tree for tree in trees)
    report.expect("tree -> chain -> tree", len(trees), returned)
    report.details.update({"n": n, "chains": len(chains), "trees": len(trees)})
    return report
