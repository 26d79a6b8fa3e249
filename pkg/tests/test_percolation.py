from __future__ import annotations

from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from aoforge.apps.graphs.corpus import complete_graph, cycle_graph, grid_graph, path_graph, star_graph
from aoforge.apps.percolation.services import (
    closure,
    closure_rounds,
    generators_c,
    minimal_percolating_size,
    percolates,
    percolating_sets,
    percolation_check,
    percolation_ideal,
)
from aoforge.apps.percolation.structures import PercolationInstance
from aoforge.core.exceptions import InvalidArgument

P3_K2 = PercolationInstance(path_graph(3), 2)
K3_K1 = PercolationInstance(complete_graph(3), 1)
SMALL_GRAPHS = (path_graph(4), cycle_graph(5), star_graph(5), grid_graph(2, 3), complete_graph(4))


@st.composite
def instance_with_sets(draw) -> tuple[PercolationInstance, frozenset[int], frozenset[int]]:
    graph = draw(st.sampled_from(SMALL_GRAPHS))
    inst = PercolationInstance(graph, draw(st.integers(min_value=1, max_value=3)))
    vertices = st.frozensets(st.sampled_from(graph.vertices))
    return inst, draw(vertices), draw(vertices)


class ClosureTests(SimpleTestCase):
    def test_path(self) -> None:
        self.assertEqual(closure(P3_K2, {1, 3}), {1, 2, 3})
        self.assertEqual(closure(P3_K2, {1, 2}), {1, 2})
        self.assertEqual(closure(P3_K2, set()), frozenset())
        self.assertTrue(percolates(P3_K2, {1, 3}))
        self.assertFalse(percolates(P3_K2, {1, 2}))

    @hypothesis_settings(max_examples=80, deadline=None)
    @given(instance_with_sets())
    def test_closure_is_extensive_monotone_and_idempotent(self, drawn) -> None:
        inst, first, second = drawn
        closed = closure(inst, first)
        self.assertLessEqual(first, closed)
        self.assertLessEqual(closed, closure(inst, first | second))
        self.assertEqual(closure(inst, closed), closed)

    def test_rounds(self) -> None:
        self.assertEqual(closure_rounds(P3_K2, {1, 3}), [{1, 3}, {1, 2, 3}])
        rounds = closure_rounds(PercolationInstance(path_graph(5), 1), {1})
        self.assertEqual(len(rounds), 5)
        self.assertEqual(rounds[-1], closure(PercolationInstance(path_graph(5), 1), {1}))

    def test_rejects_foreign_vertices_and_bad_thresholds(self) -> None:
        with self.assertRaises(InvalidArgument):
            closure(P3_K2, {4})
        with self.assertRaises(InvalidArgument):
            PercolationInstance(path_graph(3), 0)


class PercolationIdealTests(SimpleTestCase):
    def test_generators(self) -> None:
        self.assertEqual(
            generators_c(P3_K2),
            [{1}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}],
        )
        self.assertEqual(percolation_ideal(P3_K2).gens, ((0, 0, 1), (1, 0, 0)))
        self.assertEqual(generators_c(K3_K1), [{1, 2, 3}])
        self.assertEqual(percolation_ideal(K3_K1).gens, ((1, 1, 1),))

    def test_threshold_above_max_degree(self) -> None:
        inst = PercolationInstance(path_graph(3), 5)
        self.assertEqual(len(generators_c(inst)), 7)
        self.assertEqual(percolating_sets(inst), [{1, 2, 3}])
        self.assertEqual(minimal_percolating_size(inst), 3)

    def test_percolating_sets(self) -> None:
        self.assertEqual(percolating_sets(P3_K2), [{1, 3}, {1, 2, 3}])
        self.assertEqual(len(percolating_sets(K3_K1)), 7)

    def test_minimal_sizes(self) -> None:
        self.assertEqual(minimal_percolating_size(P3_K2), 2)
        self.assertEqual(minimal_percolating_size(K3_K1), 1)
        self.assertEqual(minimal_percolating_size(PercolationInstance(grid_graph(3, 3), 2)), 3)

    def test_ideal_matches_direct_closure(self) -> None:
        for graph in (path_graph(4), cycle_graph(5), star_graph(5), grid_graph(2, 3), complete_graph(4)):
            for k in (1, 2, 3):
                with self.subTest(graph=str(graph), k=k):
                    report = percolation_check(PercolationInstance(graph, k))
                    self.assertEqual(report.violations, [])

    def test_check_details(self) -> None:
        details = percolation_check(P3_K2).details
        self.assertEqual(details["minimal_generators"], [[1], [3]])
        self.assertEqual(details["minimal_size"], 2)
