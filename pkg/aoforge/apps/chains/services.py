from __future__ import annotations

import logging
import math
from collections import Counter, deque
from collections.abc import Callable, Hashable, Mapping
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import django
import networkx as nx
import numpy as np
from django.conf import settings
from numpy.random import PCG64, Generator, SeedSequence
from sympy import Matrix, Rational

from aoforge.apps.chains.structures import (
    ChainState,
    FlipGraph,
    MarkovChain,
    SimulationResult,
    SuccessorTable,
    TransitionMatrix,
)
from aoforge.apps.graphs.services import (
    enumerate_acyclic_orientations,
    linear_extension_count,
    require_connected,
    rooted_extension,
)
from aoforge.apps.graphs.structures import Edge, Orientation, SimpleGraph, normalize_edge
from aoforge.core.checks import CheckReport
from aoforge.core.constants import ChainKind
from aoforge.core.exceptions import ConsistencyError, InvalidArgument
from aoforge.core.guards import check_limit
from aoforge.core.utils import vertex_label

logger = logging.getLogger(__name__)

LABELLING_KINDS = frozenset({ChainKind.ELR, ChainKind.SL})

# sympy nullspace solves stay exact but get slow; larger chains are checked by πP = π alone.
NULLSPACE_MAX_STATES = 64


def _require_chain_graph(graph: SimpleGraph, kind: ChainKind) -> None:
    require_connected(graph)
    if kind in (ChainKind.ELR, ChainKind.CR, ChainKind.IR) and not graph.edges:
        raise InvalidArgument(f"the {kind.label} chain is undefined on a graph without edges")


def _descendants(orientation: Orientation, vertex: int, forward: bool = True) -> set[int]:
    successors: dict[int, list[int]] = {v: [] for v in orientation.graph.vertices}
    for tail, head in orientation.arcs:
        if forward:
            successors[tail].append(head)
        else:
            successors[head].append(tail)
    seen = {vertex}
    stack = [vertex]
    while stack:
        current = stack.pop()
        for nxt in successors[current]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def cover_edges(orientation: Orientation) -> list[Edge]:
    """Cov(O): arcs (u, v) with no other directed path from u to v, sorted."""
    covers = []
    for u, v in sorted(orientation.arcs):
        others = Orientation(orientation.graph, orientation.arcs - {(u, v)})
        if v not in _descendants(others, u):
            covers.append((u, v))
    return covers


def interval_reversal(orientation: Orientation, edge: Edge) -> Orientation:
    """Reverse every arc inside the interval [u, v] of O, where u → v is the orientation of ``edge``."""
    graph = orientation.graph
    if normalize_edge(*edge) not in graph.edges:
        raise InvalidArgument(f"{list(edge)} is not an edge of the graph")
    if not (orientation.is_complete and orientation.is_acyclic):
        raise InvalidArgument(f"{orientation} is not an acyclic orientation")
    u, v = orientation.value(edge)
    interval = _descendants(orientation, u) & _descendants(orientation, v, forward=False)
    return orientation.reversed((x, y) for x, y in orientation.arcs if x in interval and y in interval)


def card_shuffle(orientation: Orientation, vertex: int) -> Orientation:
    """Every edge at ``vertex`` points into it; the vertex moves to the top of its label order."""
    return Orientation(
        orientation.graph,
        frozenset((v, u) if u == vertex else (u, v) for u, v in orientation.arcs),
    )


def _swap(labels: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    swapped = list(labels)
    swapped[u - 1], swapped[v - 1] = labels[v - 1], labels[u - 1]
    return tuple(swapped)


def _choices(kind: ChainKind, graph: SimpleGraph, state: ChainState) -> list[ChainState]:
    """Successor of ``state`` for each equally likely random choice of the kernel."""
    if kind == ChainKind.CS:
        return [card_shuffle(state, vertex) for vertex in graph.vertices]
    if kind == ChainKind.ELR:
        return [_swap(state, u, v) for u, v in graph.edge_list]
    if kind == ChainKind.SL:
        rooted = rooted_extension(graph)
        top = state.index(graph.n + 1) + 1
        return [_swap(state, top, neighbor) for neighbor in sorted(rooted.neighbors(top))]
    if kind == ChainKind.CR:
        return [state.reversed([edge]) for edge in cover_edges(state)]
    if kind == ChainKind.IR:
        return [interval_reversal(state, edge) for edge in graph.edge_list]
    raise InvalidArgument(f"unknown chain kind {kind!r}")


def _validate_state(kind: ChainKind, graph: SimpleGraph, state: ChainState) -> None:
    if kind in LABELLING_KINDS:
        size = graph.n + (1 if kind == ChainKind.SL else 0)
        if not isinstance(state, tuple) or sorted(state) != list(range(1, size + 1)):
            raise InvalidArgument(f"{state!r} is not a bijective labelling onto 1..{size}")
    elif not (isinstance(state, Orientation) and state.is_complete and state.is_acyclic):
        raise InvalidArgument(f"{state} is not an acyclic orientation")


def step(kind: ChainKind | str, graph: SimpleGraph, state: ChainState, rng: np.random.Generator) -> ChainState:
    kind = ChainKind(kind)
    _validate_state(kind, graph, state)
    choices = _choices(kind, graph, state)
    return choices[int(rng.integers(len(choices)))]


def labelling_orientation(graph: SimpleGraph, labels: tuple[int, ...]) -> Orientation:
    """The acyclic orientation of G induced by the first n labels."""
    return Orientation.from_labelling(graph, {vertex: labels[vertex - 1] for vertex in graph.vertices})


def state_key(graph: SimpleGraph, state: ChainState) -> str:
    if isinstance(state, Orientation):
        return state.encoding
    return ",".join(f"{vertex_label(vertex, graph.n)}={label}" for vertex, label in enumerate(state, 1))


def _initial_state(kind: ChainKind, graph: SimpleGraph) -> ChainState:
    if kind == ChainKind.ELR:
        return tuple(graph.vertices)
    if kind == ChainKind.SL:
        return tuple(range(1, graph.n + 2))
    return enumerate_acyclic_orientations(graph)[0]


def _state_space(kind: ChainKind, graph: SimpleGraph) -> list[ChainState]:
    """States reachable from the canonical initial state, in canonical order."""
    if kind not in LABELLING_KINDS:
        states = enumerate_acyclic_orientations(graph)
        check_limit("chain_states", len(states), what="states")
        return states
    size = graph.n + (1 if kind == ChainKind.SL else 0)
    check_limit("chain_states", math.factorial(size), what="states")
    start = _initial_state(kind, graph)
    seen = {start}
    queue = deque([start])
    while queue:
        for successor in _choices(kind, graph, queue.popleft()):
            if successor not in seen:
                seen.add(successor)
                queue.append(successor)
    return sorted(seen)


def successor_table(graph: SimpleGraph, kind: ChainKind | str) -> SuccessorTable:
    kind = ChainKind(kind)
    _require_chain_graph(graph, kind)
    states = _state_space(kind, graph)
    index = {state: position for position, state in enumerate(states)}
    successors = []
    for state in states:
        try:
            successors.append(tuple(index[successor] for successor in _choices(kind, graph, state)))
        except KeyError:
            raise ConsistencyError(f"{kind} leaves its state space from {state_key(graph, state)}")
    logger.debug("%s on %s: %d states", kind, graph, len(states))
    return SuccessorTable(kind, graph, tuple(states), tuple(state_key(graph, s) for s in states), tuple(successors))


def exact_transition_matrix(graph: SimpleGraph, kind: ChainKind | str) -> TransitionMatrix:
    table = successor_table(graph, kind)
    rows = []
    for successors in table.successors:
        counts = Counter(successors)
        rows.append({column: Fraction(count, len(successors)) for column, count in sorted(counts.items())})
    return TransitionMatrix(table.kind, table.states, table.keys, tuple(rows))


def _is_irreducible(matrix: TransitionMatrix) -> bool:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(len(matrix)))
    digraph.add_edges_from((row, column) for row, targets in enumerate(matrix.rows) for column in targets)
    return nx.is_strongly_connected(digraph)


def _rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def solve_stationary(matrix: TransitionMatrix) -> list[Fraction]:
    """Exact solution of πP = π, Σπ = 1; the chain must be irreducible."""
    size = len(matrix)
    dense = Matrix(size, size, lambda i, j: _rational(matrix.rows[i].get(j, Fraction(0))))
    kernel = (dense.T - Matrix.eye(size)).nullspace()
    if len(kernel) != 1:
        raise ConsistencyError(f"{matrix.kind}: stationary space has dimension {len(kernel)}")
    vector = kernel[0] / sum(kernel[0])
    return [Fraction(int(value.p), int(value.q)) for value in vector]


def _theoretical_law(graph: SimpleGraph, matrix: TransitionMatrix) -> list[Fraction]:
    kind = matrix.kind
    if kind == ChainKind.CS:
        total = math.factorial(graph.n)
        return [Fraction(linear_extension_count(state), total) for state in matrix.states]
    if kind == ChainKind.ELR:
        return [Fraction(1, len(matrix))] * len(matrix)
    if kind == ChainKind.SL:
        rooted = rooted_extension(graph)
        weights = [rooted.degree(state.index(graph.n + 1) + 1) for state in matrix.states]
        return [Fraction(weight, sum(weights)) for weight in weights]
    if kind == ChainKind.CR:
        weights = [len(cover_edges(state)) for state in matrix.states]
        return [Fraction(weight, sum(weights)) for weight in weights]
    return [Fraction(1, len(matrix))] * len(matrix)


def _project(
    graph: SimpleGraph, matrix: TransitionMatrix, law: list[Fraction], keep: Callable[[tuple[int, ...]], bool]
) -> dict[str, Fraction]:
    projected: dict[str, Fraction] = {}
    for state, mass in zip(matrix.states, law):
        if keep(state):
            key = labelling_orientation(graph, state).encoding
            projected[key] = projected.get(key, Fraction(0)) + mass
    total = sum(projected.values(), Fraction(0))
    return {key: mass / total for key, mass in projected.items()}


def orientation_law(graph: SimpleGraph, kind: ChainKind | str) -> dict[str, Fraction]:
    """The limiting law on acyclic orientations the theorems predict (SL: conditioned on r on top)."""
    kind = ChainKind(kind)
    orientations = enumerate_acyclic_orientations(graph)
    if kind in (ChainKind.CS, ChainKind.ELR, ChainKind.SL):
        total = math.factorial(graph.n)
        return {o.encoding: Fraction(linear_extension_count(o), total) for o in orientations}
    if kind == ChainKind.CR:
        weights = {o.encoding: len(cover_edges(o)) for o in orientations}
        return {key: Fraction(weight, sum(weights.values())) for key, weight in weights.items()}
    return {o.encoding: Fraction(1, len(orientations)) for o in orientations}


def stationary_verify(graph: SimpleGraph, kind: ChainKind | str) -> CheckReport:
    """
    Check the stationary law of ``kind`` on ``graph`` as an exact rational identity.

    The theorem's law π is checked against πP = π on the chain's own state space, together with
    irreducibility (which makes π the unique stationary law). Labelling chains are then projected
    onto acyclic orientations and compared with e(O)/n!.
    """
    kind = ChainKind(kind)
    matrix = exact_transition_matrix(graph, kind)
    law = _theoretical_law(graph, matrix)
    report = CheckReport(f"stationary law {kind}")
    report.check("irreducible", _is_irreducible(matrix))
    report.expect("πP = π", law, matrix.apply(law))
    if len(matrix) <= NULLSPACE_MAX_STATES:
        report.expect("nullspace solve", law, solve_stationary(matrix))

    expected = orientation_law(graph, kind)
    if kind == ChainKind.ELR:
        observed = _project(graph, matrix, law, lambda state: True)
    elif kind == ChainKind.SL:
        observed = _project(graph, matrix, law, lambda state: state[graph.n] == graph.n + 1)
    else:
        observed = dict(zip(matrix.keys, law))
    report.expect("law on acyclic orientations", expected, observed)
    if kind == ChainKind.CR:
        total = sum(len(cover_edges(state)) for state in matrix.states)
        report.details["c"] = Fraction(1, total)
    report.details.update({"states": len(matrix), "law": observed})
    return report


def build_flip_graph(graph: SimpleGraph, kind: ChainKind | str) -> FlipGraph:
    kind = ChainKind(kind)
    if kind not in (ChainKind.CR, ChainKind.IR):
        raise InvalidArgument(f"flip graphs exist for CR and IR, not {kind}")
    table = successor_table(graph, kind)
    edges = {
        normalize_edge(index + 1, successor + 1)
        for index, successors in enumerate(table.successors)
        for successor in successors
        if successor != index
    }
    return FlipGraph(kind, table.states, SimpleGraph.from_edges(len(table), edges))


def flip_graph_check(graph: SimpleGraph) -> CheckReport:
    """IR is |E|-regular and connected, CR is connected, bipartite and spans a subgraph of IR."""
    cover, interval = build_flip_graph(graph, ChainKind.CR), build_flip_graph(graph, ChainKind.IR)
    ir_graph, cr_graph = interval.graph.to_networkx(), cover.graph.to_networkx()
    report = CheckReport("flip graphs")
    report.expect("IR degrees", {len(graph.edges)}, set(interval.graph.degree_vector))
    report.check("IR connected", nx.is_connected(ir_graph))
    report.check("CR connected", nx.is_connected(cr_graph))
    report.check("CR bipartite", nx.is_bipartite(cr_graph))
    report.check("CR ⊆ IR", cover.graph.edges <= interval.graph.edges)
    report.details.update(
        {
            "states": interval.graph.n,
            "IR_edges": len(interval.graph.edges),
            "CR_edges": len(cover.graph.edges),
        }
    )
    return report


def interval_reversal_check(graph: SimpleGraph) -> CheckReport:
    """Each interval reversal is an acyclic involution and distinct edges give distinct results."""
    report = CheckReport("interval reversal")
    failures = []
    for orientation in enumerate_acyclic_orientations(graph):
        results = [interval_reversal(orientation, edge) for edge in graph.edge_list]
        for edge, result in zip(graph.edge_list, results):
            if not (result.is_acyclic and interval_reversal(result, edge) == orientation):
                failures.append([orientation.encoding, list(edge)])
        if len(set(results)) != len(results):
            failures.append([orientation.encoding, "repeated result"])
    report.expect("failures", [], failures)
    return report


def labelling_graph_check(graph: SimpleGraph) -> CheckReport:
    """The ELR labelling graph is |E|-regular, bipartite and connected."""
    table = successor_table(graph, ChainKind.ELR)
    labelling_graph = nx.Graph()
    labelling_graph.add_nodes_from(range(len(table)))
    labelling_graph.add_edges_from(
        (index, successor) for index, successors in enumerate(table.successors) for successor in successors
    )
    report = CheckReport("labelling graph")
    report.expect("states", math.factorial(graph.n), len(table))
    report.expect("degrees", {len(graph.edges)}, {degree for _, degree in labelling_graph.degree()})
    report.check("bipartite", nx.is_bipartite(labelling_graph))
    report.check("connected", nx.is_connected(labelling_graph))
    return report


def _run_replica(table: SuccessorTable, initial: int, seed: SeedSequence, steps: int, burn_in: int) -> list[int]:
    rng = Generator(PCG64(seed))
    visits = [0] * len(table)
    for t, state in enumerate(MarkovChain(table, initial, rng, steps), 1):
        if t > burn_in:
            visits[state] += 1
    return visits


def total_variation(frequencies: Mapping[str, float], law: Mapping[str, Fraction | float]) -> float:
    keys = set(frequencies) | set(law)
    return 0.5 * sum(abs(frequencies.get(key, 0.0) - float(law.get(key, 0))) for key in keys)


def _normalize(counts: Mapping[Hashable, int]) -> dict[str, float]:
    total = sum(counts.values())
    return {key: count / total for key, count in counts.items()} if total else {}


def simulate(
    graph: SimpleGraph,
    kind: ChainKind | str,
    seed: int | None = None,
    steps: int = 1_000_000,
    burn_in: int = 0,
    replicas: int = 1,
    jobs: int = 1,
) -> SimulationResult:
    """
    Run ``replicas`` independent copies of the chain and pool their visit counts after ``burn_in``.

    Each replica gets its own PCG64 stream spawned from ``SeedSequence(seed)``; counts are merged
    in replica order, so the result depends only on the arguments.
    """
    kind = ChainKind(kind)
    seed = settings.AOFORGE_DEFAULT_SEED if seed is None else seed
    if steps <= 0 or not 0 <= burn_in < steps:
        raise InvalidArgument(f"need steps > burn_in >= 0, got steps={steps}, burn_in={burn_in}")
    if replicas < 1 or jobs < 1:
        raise InvalidArgument("replicas and jobs must be positive")

    table = successor_table(graph, kind)
    initial = table.states.index(_initial_state(kind, graph))
    streams = SeedSequence(seed).spawn(replicas)
    logger.info("simulating %s on %s: %d replicas x %d steps, seed %d", kind, graph, replicas, steps, seed)

    if jobs > 1 and replicas > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, replicas), initializer=django.setup) as executor:
            futures = [executor.submit(_run_replica, table, initial, s, steps, burn_in) for s in streams]
            runs = [future.result() for future in futures]
    else:
        runs = [_run_replica(table, initial, s, steps, burn_in) for s in streams]
    visits = [sum(column) for column in zip(*runs)]

    counts: Counter[str] = Counter()
    conditional: Counter[str] = Counter()
    for state, count in zip(table.states, visits):
        if not count:
            continue
        if kind in LABELLING_KINDS:
            key = labelling_orientation(graph, state).encoding
            counts[key] += count
            if kind == ChainKind.SL and state[graph.n] == graph.n + 1:
                conditional[key] += count
        else:
            counts[state_key(graph, state)] += count

    exact = orientation_law(graph, kind)
    frequencies = _normalize(counts)
    conditional_frequencies = _normalize(conditional)
    distance = total_variation(conditional_frequencies if kind == ChainKind.SL else frequencies, exact)
    logger.info("%s on %s: total variation %.5f", kind, graph, distance)
    return SimulationResult(
        kind=kind,
        seed=seed,
        steps=steps,
        burn_in=burn_in,
        replicas=replicas,
        counts=dict(counts),
        frequencies=frequencies,
        exact=exact,
        total_variation=distance,
        conditional=conditional_frequencies,
        conditional_visits=sum(conditional.values()),
    )


def chain_report(graph: SimpleGraph, kinds: list[ChainKind] | None = None) -> CheckReport:
    report = CheckReport("markov chains")
    for kind in kinds or list(ChainKind):
        report.extend(stationary_verify(graph, kind))
    report.extend(interval_reversal_check(graph))
    report.extend(flip_graph_check(graph))
    report.extend(labelling_graph_check(graph))
    return report
