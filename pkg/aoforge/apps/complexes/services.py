from __future__ import annotations

import itertools
import logging
from collections.abc import Callable
from fractions import Fraction

from aoforge.apps.complexes.structures import Cell, CellComplex, Label
from aoforge.apps.graphs.services import (
    count_acyclic_orientations,
    enumerate_paos,
    induced_subgraph,
    order_ideal_family,
    require_connected,
)
from aoforge.apps.graphs.structures import PAO, SimpleGraph
from aoforge.apps.ideals.services import artinianized_a, ideal_a, ideal_t
from aoforge.core.checks import CheckReport
from aoforge.core.constants import ComplexKind, IdealKind
from aoforge.core.exceptions import ConsistencyError, InvalidArgument

logger = logging.getLogger(__name__)


def _bitmask(members: frozenset[int]) -> int:
    return sum(1 << vertex for vertex in members)


def _ambient(graph: SimpleGraph, values: dict[int, int], default: Callable[[int], int]) -> Label:
    return tuple(values[vertex] if vertex in values else default(vertex) for vertex in graph.vertices)


def _pairs(graph: SimpleGraph) -> list[tuple[frozenset[int], PAO]]:
    """Every (σ, PAO of G[σ]) for nonempty σ."""
    pairs = []
    for size in range(1, graph.n + 1):
        for members in itertools.combinations(graph.vertices, size):
            sigma = frozenset(members)
            for pao in enumerate_paos(induced_subgraph(graph, sigma)):
                pairs.append((sigma, pao))
    return pairs


def _faces_from(cells: list[Cell], below: Callable[[Cell, Cell], bool]) -> tuple[frozenset[int], ...]:
    return tuple(
        frozenset(lower for lower, candidate in enumerate(cells) if lower != upper and below(candidate, cell))
        for upper, cell in enumerate(cells)
    )


def _check_label_bounds(complex_: CellComplex) -> None:
    bound = [d + 2 for d in complex_.graph.degree_vector]
    for cell in complex_.cells:
        if any(x < 0 or x > b for x, b in zip(cell.label, bound)):
            raise ConsistencyError(f"{complex_.kind} cell {cell.id} has label {cell.label} outside deg+2")


def build_z(graph: SimpleGraph) -> CellComplex:
    """Z_G: one cell per PAO, O1 ⪯ O2 iff J(O2) ⊆ J(O1), labels noOutdeg + 1."""
    require_connected(graph)
    cells = []
    for pao in enumerate_paos(graph):
        label = tuple(d + 1 for d in pao.orientation.no_outdegree_vector)
        cells.append(Cell(pao.encoding, pao.dim, label, pao=pao, ideals=order_ideal_family(pao).masks))
    complex_ = CellComplex(
        ComplexKind.Z, graph, tuple(cells), _faces_from(cells, lambda low, high: high.ideals <= low.ideals)
    )
    _check_label_bounds(complex_)
    logger.debug("Z of %s: f-vector %s", graph, complex_.f_vector)
    return complex_


def _y_pair_label(graph: SimpleGraph, sigma: frozenset[int], pao: PAO) -> Label:
    inside = dict(zip(pao.graph.vertices, (d + 1 for d in pao.orientation.no_outdegree_vector)))
    return _ambient(graph, inside, lambda vertex: graph.degree(vertex) + 2)


def _y_below(low: Cell, high: Cell) -> bool:
    if low.subset is not None:
        if high.subset is not None:
            return low.subset < high.subset
        return not low.subset & high.sigma
    if high.subset is not None:
        return False
    return high.ideals <= low.ideals


def build_y(graph: SimpleGraph) -> CellComplex:
    """
    Y_G: pair cells (σ, PAO of G[σ]) and the nonempty proper subsets of the vertex set.

    Order: subsets by inclusion, A ⪯ (σ, O) iff A ⊆ V∖σ, and (σ0, O0) ⪯ (σ1, O1) iff J(O1) ⊆ J(O0).
    """
    require_connected(graph)
    vertices = frozenset(graph.vertices)
    cells = []
    for sigma, pao in _pairs(graph):
        dim = len(vertices - sigma) + pao.dim
        ideals = order_ideal_family(pao).masks
        cells.append(
            Cell(f"pair:{pao.encoding}", dim, _y_pair_label(graph, sigma, pao), pao=pao, sigma=sigma, ideals=ideals)
        )
    for size in range(1, graph.n):
        for members in itertools.combinations(graph.vertices, size):
            subset = frozenset(members)
            label = _ambient(graph, {vertex: graph.degree(vertex) + 2 for vertex in subset}, lambda vertex: 0)
            cells.append(Cell(f"subset:{','.join(map(str, members))}", size - 1, label, subset=subset))

    complex_ = CellComplex(ComplexKind.Y, graph, tuple(cells), _faces_from(cells, _y_below))
    _check_label_bounds(complex_)
    logger.debug("Y of %s: f-vector %s", graph, complex_.f_vector)
    return complex_


def _x_label(graph: SimpleGraph, sigma: frozenset[int], pao: PAO) -> Label:
    orientation = pao.orientation
    inside = {
        vertex: orientation.outdegree(vertex) + graph.degout(sigma, vertex) + 1 for vertex in pao.graph.vertices
    }
    return _ambient(graph, inside, lambda vertex: 0)


def build_x(graph: SimpleGraph) -> CellComplex:
    """X_G: pair cells, (σ0, O0) ⪯ (σ1, O1) iff J(O0) ⊆ J(O1), labels outdeg + degout_σ + 1 on σ."""
    require_connected(graph)
    cells = []
    for sigma, pao in _pairs(graph):
        dim = len(sigma) - 1 - pao.dim
        ideals = order_ideal_family(pao).masks
        cells.append(
            Cell(f"pair:{pao.encoding}", dim, _x_label(graph, sigma, pao), pao=pao, sigma=sigma, ideals=ideals)
        )
    complex_ = CellComplex(
        ComplexKind.X, graph, tuple(cells), _faces_from(cells, lambda low, high: low.ideals <= high.ideals)
    )
    _check_label_bounds(complex_)
    logger.debug("X of %s: f-vector %s", graph, complex_.f_vector)
    return complex_


BUILDERS = {ComplexKind.Z: build_z, ComplexKind.Y: build_y, ComplexKind.X: build_x}


def build_complex(graph: SimpleGraph, kind: ComplexKind | str) -> CellComplex:
    try:
        builder = BUILDERS[ComplexKind(kind)]
    except ValueError:
        raise InvalidArgument(f"unknown complex kind {kind!r}")
    return builder(graph)


def verify_label_lcm(complex_: CellComplex) -> CheckReport:
    """Every label equals the componentwise max of the labels of the 0-cells below it."""
    report = CheckReport(f"{complex_.kind} label lcm")
    violations = []
    for index, cell in enumerate(complex_.cells):
        vertex_labels = [complex_.cells[vertex].label for vertex in complex_.vertices_of(index)]
        if not vertex_labels:
            violations.append({"cell": cell.id, "label": cell.label, "lcm": None})
            continue
        lcm = tuple(max(column) for column in zip(*vertex_labels))
        if lcm != cell.label:
            violations.append({"cell": cell.id, "label": cell.label, "lcm": lcm})
    report.expect("cells whose label is not the lcm of their vertices", [], violations)
    report.details["cells"] = len(complex_.cells)
    return report


def _strictly_below(low: Label, high: Label) -> bool:
    return low != high and all(x <= y for x, y in zip(low, high))


def verify_minimality(complex_: CellComplex) -> CheckReport:
    """Face-related cells have strictly increasing labels."""
    report = CheckReport(f"{complex_.kind} minimality")
    violations = []
    pairs = 0
    for upper, lowers in enumerate(complex_.faces):
        high = complex_.cells[upper]
        for lower in lowers:
            pairs += 1
            low = complex_.cells[lower]
            if not _strictly_below(low.label, high.label):
                violations.append({"face": low.id, "cell": high.id, "labels": [low.label, high.label]})
    report.expect("face pairs without strictly increasing labels", [], violations)
    report.details["face_pairs"] = pairs
    return report


def euler_characteristic(complex_: CellComplex) -> int:
    return sum((-1) ** cell.dim for cell in complex_.cells)


def betti_counts(graph: SimpleGraph, which: IdealKind | str) -> list[tuple[int, int]]:
    """
    Face-count Betti numbers.

    A: β_i = #PAOs of G with n − i blocks. T: β_i = #pairs (σ, PAO of G[σ]) with i + 1 blocks.
    """
    require_connected(graph)
    which = IdealKind(which)
    n = graph.n
    counts = [0] * n
    if which == IdealKind.A:
        for pao in enumerate_paos(graph):
            counts[n - len(pao.blocks)] += 1
    else:
        for _, pao in _pairs(graph):
            counts[len(pao.blocks) - 1] += 1
    return list(enumerate(counts))


def betti_check(graph: SimpleGraph) -> CheckReport:
    """β_0 against minimal generator counts and 0-cell counts."""
    report = CheckReport("betti counts")
    a_counts = betti_counts(graph, IdealKind.A)
    t_counts = betti_counts(graph, IdealKind.T)
    report.expect("β_0(A) = #gens A_G", len(ideal_a(graph)), a_counts[0][1])
    report.expect("β_0(T) = #gens T_G", len(ideal_t(graph)), t_counts[0][1])
    report.expect(
        "#gens artinianized A_G = #AO + n", count_acyclic_orientations(graph) + graph.n, len(artinianized_a(graph))
    )
    report.details.update({"A": a_counts, "T": t_counts})
    return report


def witness_point(pao: PAO) -> tuple[Fraction, ...]:
    """y_i = directed-in count + ½ unoriented incident count + 1."""
    orientation = pao.orientation
    return tuple(
        indegree + Fraction(unoriented, 2) + 1
        for indegree, unoriented in zip(orientation.indegree_vector, orientation.unoriented_degree_vector)
    )


def _subsets(graph: SimpleGraph):
    for size in range(graph.n + 1):
        for members in itertools.combinations(graph.vertices, size):
            yield frozenset(members)


def zonotope_tightness(graph: SimpleGraph, pao: PAO) -> frozenset[frozenset[int]]:
    """All σ where Σ_{i∈σ} y_i = |σ| + |E(G[σ])| for the witness y of ``pao``."""
    y = dict(zip(graph.vertices, witness_point(pao)))
    return frozenset(
        sigma
        for sigma in _subsets(graph)
        if sum((y[i] for i in sigma), Fraction(0)) == len(sigma) + graph.edges_inside(sigma)
    )


def zonotope_check(graph: SimpleGraph) -> CheckReport:
    """Tight sets reproduce J(O) for every PAO, witnesses are feasible, ½deg + 1 is interior."""
    require_connected(graph)
    report = CheckReport("zonotope tightness")
    subsets = list(_subsets(graph))
    bounds = {sigma: len(sigma) + graph.edges_inside(sigma) for sigma in subsets}

    mismatched, infeasible = [], []
    for pao in enumerate_paos(graph):
        y = dict(zip(graph.vertices, witness_point(pao)))
        if zonotope_tightness(graph, pao) != order_ideal_family(pao).sets:
            mismatched.append(pao.encoding)
        if any(sum((y[i] for i in sigma), Fraction(0)) < bounds[sigma] for sigma in subsets):
            infeasible.append(pao.encoding)

    interior = {vertex: Fraction(graph.degree(vertex), 2) + 1 for vertex in graph.vertices}
    full = frozenset(graph.vertices)
    not_strict = [
        sorted(sigma)
        for sigma in subsets
        if sigma and sigma != full and not sum((interior[i] for i in sigma), Fraction(0)) > bounds[sigma]
    ]

    report.expect("PAOs whose tight sets differ from J(O)", [], mismatched)
    report.expect("PAOs whose witness violates an inequality", [], infeasible)
    report.expect("proper σ not strict at ½deg+1", [], not_strict)
    report.expect("½deg+1 on the equality constraint", bounds[full], sum(interior.values(), Fraction(0)))
    return report


def vertex_coordinates_check(graph: SimpleGraph) -> CheckReport:
    """0-cells of Z_G are the acyclic orientations, with witness point indeg + 1."""
    complex_ = build_z(graph)
    report = CheckReport("zonotope vertices")
    zero_cells = [complex_.cells[index] for index in complex_.zero_cells]
    report.expect("#0-cells = #AO", count_acyclic_orientations(graph), len(zero_cells))
    report.check("0-cells are acyclic orientations", all(cell.pao.is_acyclic_orientation for cell in zero_cells))

    points = []
    wrong = []
    for cell in zero_cells:
        point = witness_point(cell.pao)
        expected = tuple(Fraction(d + 1) for d in cell.pao.orientation.indegree_vector)
        if point != expected or any(coordinate.denominator != 1 for coordinate in point):
            wrong.append(cell.id)
        points.append(tuple(int(coordinate) for coordinate in point))
    report.expect("0-cells whose witness is not indeg+1", [], wrong)
    report.expect("distinct vertex points", len(points), len(set(points)))
    report.expect("coordinate sums", {graph.n + len(graph.edges)}, {sum(point) for point in points})
    report.details["vertices"] = sorted(points)
    return report


def dual_label_identity(graph: SimpleGraph) -> CheckReport:
    """(deg+2) − ℓ_y = ℓ_x on every pair cell, and the X order reverses the Y order on pairs."""
    y_complex, x_complex = build_y(graph), build_x(graph)
    degree = graph.degree_vector
    report = CheckReport("dual labels")

    y_pairs = {cell.id: index for index, cell in enumerate(y_complex.cells) if cell.is_pair}
    x_pairs = {cell.id: index for index, cell in enumerate(x_complex.cells)}
    report.expect("same pair cells", sorted(y_pairs), sorted(x_pairs))

    wrong = []
    for cell_id, y_index in y_pairs.items():
        y_cell, x_cell = y_complex.cells[y_index], x_complex.cells[x_pairs[cell_id]]
        for position, vertex in enumerate(graph.vertices):
            difference = degree[position] + 2 - y_cell.label[position]
            if vertex in y_cell.sigma:
                ok = difference == x_cell.label[position]
            else:
                ok = difference == 0 and x_cell.label[position] == 0
            if not ok:
                wrong.append({"cell": cell_id, "vertex": vertex})
    report.expect("entries violating deg+2−ℓ_y = ℓ_x", [], wrong)

    y_order = {
        (y_complex.cells[low].id, y_complex.cells[high].id)
        for high, lows in enumerate(y_complex.faces)
        if y_complex.cells[high].is_pair
        for low in lows
        if y_complex.cells[low].is_pair
    }
    x_order = {
        (x_complex.cells[high].id, x_complex.cells[low].id) for high, lows in enumerate(x_complex.faces) for low in lows
    }
    report.expect("X order = reversed Y order on pairs", len(y_order), len(x_order))
    report.check("X order = reversed Y order on pairs (relations)", y_order == x_order)
    return report


def z_order_equivalence_check(graph: SimpleGraph) -> CheckReport:
    """J-containment agrees with 'coarser partition whose arcs O1 keeps'."""
    paos = enumerate_paos(graph)
    families = {pao.encoding: order_ideal_family(pao).masks for pao in paos}
    mismatches = []
    for first in paos:
        for second in paos:
            by_ideals = families[second.encoding] <= families[first.encoding]
            coarsens = all(
                block == frozenset().union(*(b for b in first.blocks if b <= block)) for block in second.blocks
            )
            keeps_arcs = second.orientation.arcs <= first.orientation.arcs
            if by_ideals != (coarsens and keeps_arcs):
                mismatches.append([first.encoding, second.encoding])
    report = CheckReport("Z order equivalence")
    report.expect("pairs where the two descriptions disagree", [], mismatches)
    return report


def zero_cell_generator_check(graph: SimpleGraph) -> CheckReport:
    """0-cell labels of Y_G and X_G are the minimal generators of artinianized A_G and of T_G."""
    y_complex, x_complex = build_y(graph), build_x(graph)
    report = CheckReport("0-cell generators")
    y_labels = sorted(y_complex.cells[index].label for index in y_complex.zero_cells)
    x_labels = sorted(x_complex.cells[index].label for index in x_complex.zero_cells)
    report.expect("#Y 0-cells = #AO + n", count_acyclic_orientations(graph) + graph.n, len(y_labels))
    report.expect("Y 0-cell labels = gens of A_G + 𝔪^{deg+2}", list(artinianized_a(graph).gens), y_labels)
    report.expect("X 0-cell labels = gens of T_G", list(ideal_t(graph).gens), x_labels)
    report.check(
        "X 0-cells are one-block pairs", all(x_complex.cells[index].pao.is_trivial for index in x_complex.zero_cells)
    )
    return report


def export_complex(complex_: CellComplex) -> dict:
    """Cells with id, dim, payload and label, plus the cover relations."""
    cells = complex_.cells
    return {
        "kind": str(complex_.kind),
        "graph": complex_.graph.as_dict(),
        "f_vector": list(complex_.f_vector),
        "cells": [
            {**cell.as_dict(), "covers": sorted(cells[lower].id for lower in complex_.covers[index])}
            for index, cell in enumerate(cells)
        ],
    }


def complex_report(graph: SimpleGraph, kinds: list[ComplexKind] | None = None) -> CheckReport:
    """All structural checks on the requested complexes."""
    kinds = kinds or list(ComplexKind)
    report = CheckReport("complexes")
    for kind in kinds:
        complex_ = build_complex(graph, kind)
        report.details[str(kind)] = {"f_vector": list(complex_.f_vector), "euler": euler_characteristic(complex_)}
        report.extend(verify_label_lcm(complex_))
        report.extend(verify_minimality(complex_))
        if kind == ComplexKind.Z:
            report.expect("Z euler characteristic", 1, euler_characteristic(complex_))
    return report
