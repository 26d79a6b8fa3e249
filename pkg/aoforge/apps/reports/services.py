from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING

import django

from aoforge.apps.chains.services import (
    build_flip_graph,
    flip_graph_check,
    interval_reversal_check,
    simulate,
    stationary_verify,
)
from aoforge.apps.complexes.services import (
    betti_check,
    complex_report,
    dual_label_identity,
    vertex_coordinates_check,
    z_order_equivalence_check,
    zero_cell_generator_check,
    zonotope_check,
)
from aoforge.apps.expectation.services import enumerate_parking_functions, expectation_report
from aoforge.apps.graphs.corpus import CorpusGraph, complete_graph, cycle_graph, graph_corpus, grid_graph, path_graph
from aoforge.apps.graphs.structures import SimpleGraph
from aoforge.apps.ideals.services import duality_check, irreducible_decomposition_check
from aoforge.apps.percolation.services import minimal_percolating_size, percolation_check
from aoforge.apps.percolation.structures import PercolationInstance
from aoforge.apps.trees.services import (
    chain_suite,
    count_nc_maximal_chains,
    flagged_trees,
    forest_identity,
    roundtrip_suite,
)
from aoforge.core.checks import CheckReport
from aoforge.core.constants import ChainKind
from aoforge.core.exceptions import InvalidArgument
from aoforge.core.serialization import render_json

if TYPE_CHECKING:
    from aoforge.apps.reports.structures import RunReport

logger = logging.getLogger(__name__)

CHAIN_GRAPHS = (
    ("P2", path_graph(2)),
    ("P3", path_graph(3)),
    ("K3", complete_graph(3)),
    ("C4", cycle_graph(4)),
    ("K4", complete_graph(4)),
    ("P5", path_graph(5)),
)
PERCOLATION_N_MAX = 10
SIMULATION_TOLERANCE = 0.01


def render_table(report: RunReport) -> str:
    """Plain-text rendering for terminals."""
    lines = [
        f"command   {report.command}",
        f"version   {report.version}",
        f"passed    {'yes' if report.passed else 'NO'}",
    ]
    if report.input_digest:
        lines.append(f"input     sha256:{report.input_digest}")
    if report.timestamp:
        lines.append(f"timestamp {report.timestamp}")
    if report.results:
        lines.append("")
        width = max(len(key) for key in report.results)
        for key, value in report.results.items():
            text = value if isinstance(value, str) else render_json(value, indent=None).decode()
            lines.append(f"{key.ljust(width)}  {text}")
    verdicts = report.verdicts
    if verdicts:
        lines.append("")
        for verdict in verdicts:
            status = "PASS" if verdict.passed else "FAIL"
            line = f"{status}  {verdict.name}"
            if not verdict.passed:
                expected = render_json(verdict.expected, indent=None).decode()
                actual = render_json(verdict.actual, indent=None).decode()
                line += f"  expected={expected} actual={actual}"
            lines.append(line)
    return "\n".join(lines)


def _graph_checks(name: str, graph: SimpleGraph, full: bool) -> list[tuple[str, CheckReport]]:
    """Per-graph checks of the acceptance suite, keyed by criterion."""
    checks: list[tuple[str, CheckReport]] = []
    if full:
        checks += [
            ("alexander duality", duality_check(graph)),
            ("irreducible decompositions", irreducible_decomposition_check(graph)),
            ("tree bijections", roundtrip_suite(graph)),
            ("orientation correspondence", flagged_trees(graph)),
        ]
    # The artinianized ideal needs x_i^(deg+2) to be a new generator, which fails on a single vertex.
    if full and graph.n >= 2:
        checks += [
            ("cell complexes", zonotope_check(graph)),
            ("cell complexes", vertex_coordinates_check(graph)),
            ("cell complexes", z_order_equivalence_check(graph)),
            ("labels", complex_report(graph)),
            ("labels", dual_label_identity(graph)),
            ("betti counts", betti_check(graph)),
            ("betti counts", zero_cell_generator_check(graph)),
        ]
    if graph.n <= 4 and graph.edges:
        checks.append(("interval reversal", interval_reversal_check(graph)))
    if graph.n <= PERCOLATION_N_MAX:
        checks += [("percolation", percolation_check(PercolationInstance(graph, k))) for k in (1, 2, 3)]
    for _, report in checks:
        report.name = f"{name} {report.name}"
    return checks


def _run_graph_checks(entries: list[tuple[CorpusGraph, bool]], jobs: int) -> list[list[tuple[str, CheckReport]]]:
    arguments = [(entry.name, entry.graph, full) for entry, full in entries]
    if jobs > 1 and len(arguments) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=django.setup) as executor:
            futures = [executor.submit(_graph_checks, *args) for args in arguments]
            return [future.result() for future in futures]
    return [_graph_checks(*args) for args in arguments]


def _global_checks(n_max: int, seed: int, steps: int) -> list[tuple[str, CheckReport]]:
    checks: list[tuple[str, CheckReport]] = []

    for n in range(1, min(n_max, 4) + 1):
        checks.append(("nc chains", chain_suite(n)))
    counts = CheckReport("maximal chain counts")
    for n in range(1, 6):
        expected = (n + 1) ** (n - 1)
        counts.expect(f"NC([0,{n}])", expected, count_nc_maximal_chains(n))
        counts.expect(f"parking functions of [{n}]", expected, len(enumerate_parking_functions(n)))
    checks.append(("nc chains", counts))
    checks += [("nc chains", forest_identity(n)) for n in range(1, 7)]

    for name, graph in CHAIN_GRAPHS:
        for kind in ChainKind:
            report = stationary_verify(graph, kind)
            report.name = f"{name} {report.name}"
            checks.append(("markov chains", report))
    c4 = cycle_graph(4)
    flips = build_flip_graph(c4, ChainKind.IR)
    flip_report = flip_graph_check(c4)
    flip_report.name = "C4 flip graphs"
    flip_report.expect("IR states", 14, flips.graph.n)
    checks.append(("markov chains", flip_report))
    result = simulate(c4, ChainKind.IR, seed=seed, steps=steps)
    sampling = CheckReport("C4 IR simulation")
    distance = result.total_variation
    sampling.check(f"total variation < {SIMULATION_TOLERANCE}", distance < SIMULATION_TOLERANCE, distance)
    checks.append(("markov chains", sampling))

    checks.append(("expectation formula", expectation_report(5)))

    minimal = CheckReport("minimal percolating sets")
    minimal.expect("P3, k=2", 2, minimal_percolating_size(PercolationInstance(path_graph(3), 2)))
    minimal.expect("3x3 grid, k=2", 3, minimal_percolating_size(PercolationInstance(grid_graph(3, 3), 2)))
    checks.append(("percolation", minimal))
    return checks


def acceptance_suite(
    report: RunReport, n_max: int, seed: int, steps: int = 1_000_000, jobs: int = 1, progress: Callable | None = None
) -> None:
    """Run every acceptance criterion over the built-in corpus and record it in ``report``."""
    if n_max < 1 or steps < 1 or jobs < 1:
        raise InvalidArgument(f"need positive n_max, steps and jobs, got {n_max}, {steps}, {jobs}")
    corpus = graph_corpus(n_max, seed=seed)
    # C4 and the 3x3 grid always take part in the interval-reversal and percolation criteria.
    extras = [CorpusGraph("C4", cycle_graph(4)), CorpusGraph("Grid3x3", grid_graph(3, 3))]
    known = {entry.graph for entry in corpus}
    entries = [(entry, True) for entry in corpus] + [(entry, False) for entry in extras if entry.graph not in known]
    logger.info("acceptance suite: %d graphs, n_max=%d, jobs=%d", len(entries), n_max, jobs)

    criteria: dict[str, list[CheckReport]] = {}
    for graph_checks in _run_graph_checks(entries, jobs):
        for criterion, check in graph_checks:
            criteria.setdefault(criterion, []).append(check)
    for criterion, check in _global_checks(n_max, seed, steps):
        criteria.setdefault(criterion, []).append(check)

    for criterion, checks in criteria.items():
        for check in checks:
            report.add_check(check)
        if progress:
            progress(criterion, all(check.passed for check in checks))

    report.results.update(
        {
            "corpus": [entry.name for entry, _ in entries],
            "criteria": {
                criterion: {"passed": all(check.passed for check in checks), "checks": len(checks)}
                for criterion, checks in criteria.items()
            },
        }
    )
