from __future__ import annotations

from fractions import Fraction

from django.test import SimpleTestCase

from aoforge.apps.complexes.services import (
    betti_check,
    betti_counts,
    build_complex,
    build_x,
    build_y,
    build_z,
    complex_report,
    dual_label_identity,
    euler_characteristic,
    export_complex,
    vertex_coordinates_check,
    verify_label_lcm,
    verify_minimality,
    witness_point,
    z_order_equivalence_check,
    zero_cell_generator_check,
    zonotope_check,
    zonotope_tightness,
)
from aoforge.apps.graphs.corpus import complete_graph, cycle_graph, edgeless_graph, path_graph, star_graph
from aoforge.apps.graphs.services import enumerate_paos, trivial_pao
from aoforge.core.constants import ComplexKind, IdealKind
from aoforge.core.exceptions import InvalidArgument


def labels_by_id(complex_):
    return {cell.id: cell.label for cell in complex_.cells}


class ZonotopeComplexTests(SimpleTestCase):
    def test_p2_cells_and_labels(self) -> None:
        complex_ = build_z(path_graph(2))
        self.assertEqual(complex_.f_vector, (2, 1))
        zero_labels = sorted(complex_.cells[index].label for index in complex_.zero_cells)
        self.assertEqual(zero_labels, [(1, 2), (2, 1)])
        (top,) = [cell for cell in complex_.cells if cell.dim == 1]
        self.assertEqual(top.label, (2, 2))
        self.assertEqual(euler_characteristic(complex_), 1)

    def test_k3(self) -> None:
        complex_ = build_z(complete_graph(3))
        self.assertEqual(len(complex_), 13)
        self.assertEqual(complex_.f_vector, (6, 6, 1))
        (top,) = [cell for cell in complex_.cells if cell.dim == 2]
        self.assertEqual(top.label, (3, 3, 3))
        self.assertEqual(euler_characteristic(complex_), 1)

    def test_labels_are_lcms_and_strict(self) -> None:
        for graph in (path_graph(2), path_graph(3), complete_graph(3), cycle_graph(4)):
            complex_ = build_z(graph)
            with self.subTest(graph=str(graph)):
                self.assertTrue(verify_label_lcm(complex_).passed)
                self.assertTrue(verify_minimality(complex_).passed)

    def test_rejects_disconnected_graph(self) -> None:
        with self.assertRaises(InvalidArgument):
            build_z(edgeless_graph(2))

    def test_unknown_kind(self) -> None:
        with self.assertRaises(InvalidArgument):
            build_complex(path_graph(2), "W")


class DualComplexTests(SimpleTestCase):
    def test_y_on_p2(self) -> None:
        complex_ = build_y(path_graph(2))
        self.assertEqual(len(complex_), 7)
        self.assertEqual(len(complex_.zero_cells), 4)
        self.assertEqual(labels_by_id(complex_)["subset:1"], (3, 0))

    def test_x_on_p2(self) -> None:
        complex_ = build_x(path_graph(2))
        self.assertEqual(len(complex_), 5)
        self.assertEqual(complex_.f_vector, (3, 2))
        one_cells = [cell for cell in complex_.cells if cell.dim == 1]
        self.assertTrue(all(cell.sigma == {1, 2} and cell.pao.is_acyclic_orientation for cell in one_cells))
        labels = labels_by_id(complex_)
        self.assertEqual(labels["pair:1;"], (2, 0))
        self.assertEqual(labels["pair:1|2;0->1"], (2, 1))
        self.assertEqual(euler_characteristic(complex_), 1)

    def test_x_minimality_on_k3(self) -> None:
        report = verify_minimality(build_x(complete_graph(3)))
        self.assertTrue(report.passed)
        # 6 triangles with 6 faces each, 12 edges with 2 vertices each
        self.assertEqual(report.details["face_pairs"], 60)

    def test_dual_labels(self) -> None:
        for graph in (path_graph(2), path_graph(3), complete_graph(3), star_graph(4)):
            with self.subTest(graph=str(graph)):
                self.assertEqual(dual_label_identity(graph).violations, [])

    def test_zero_cells_are_generators(self) -> None:
        for graph in (path_graph(2), complete_graph(3), cycle_graph(4)):
            with self.subTest(graph=str(graph)):
                self.assertEqual(zero_cell_generator_check(graph).violations, [])

    def test_export(self) -> None:
        exported = export_complex(build_complex(path_graph(2), ComplexKind.Z))
        self.assertEqual(exported["f_vector"], [2, 1])
        top = next(cell for cell in exported["cells"] if cell["dim"] == 1)
        self.assertEqual(len(top["covers"]), 2)
        self.assertEqual(top["payload"]["blocks"], [[1, 2]])


class BettiTests(SimpleTestCase):
    def test_p2(self) -> None:
        self.assertEqual(betti_counts(path_graph(2), IdealKind.A), [(0, 2), (1, 1)])
        self.assertEqual(betti_counts(path_graph(2), IdealKind.T), [(0, 3), (1, 2)])

    def test_p3_t_generators(self) -> None:
        self.assertEqual(betti_counts(path_graph(3), "T")[0], (0, 6))

    def test_betti_check(self) -> None:
        for graph in (path_graph(2), path_graph(3), complete_graph(3), cycle_graph(4)):
            with self.subTest(graph=str(graph)):
                self.assertTrue(betti_check(graph).passed)


class ZonotopeRealizationTests(SimpleTestCase):
    def test_witness_points(self) -> None:
        p2 = path_graph(2)
        up = next(pao for pao in enumerate_paos(p2) if pao.orientation.arcs == {(1, 2)})
        self.assertEqual(witness_point(up), (1, 2))
        self.assertEqual(zonotope_tightness(p2, up), {frozenset(), frozenset({1}), frozenset({1, 2})})
        trivial = trivial_pao(p2)
        self.assertEqual(witness_point(trivial), (Fraction(3, 2), Fraction(3, 2)))
        self.assertEqual(zonotope_tightness(p2, trivial), {frozenset(), frozenset({1, 2})})

    def test_full_set_is_always_tight(self) -> None:
        graph = complete_graph(3)
        for pao in enumerate_paos(graph):
            self.assertIn(frozenset(graph.vertices), zonotope_tightness(graph, pao))

    def test_vertex_coordinates(self) -> None:
        self.assertEqual(vertex_coordinates_check(path_graph(2)).details["vertices"], [(1, 2), (2, 1)])
        k3 = vertex_coordinates_check(complete_graph(3))
        self.assertTrue(k3.passed)
        self.assertEqual(len(k3.details["vertices"]), 6)
        p3 = vertex_coordinates_check(path_graph(3))
        self.assertEqual({sum(point) for point in p3.details["vertices"]}, {5})

    def test_checks_pass(self) -> None:
        for graph in (path_graph(3), complete_graph(3), cycle_graph(4), star_graph(4)):
            with self.subTest(graph=str(graph)):
                self.assertEqual(zonotope_check(graph).violations, [])
                self.assertEqual(z_order_equivalence_check(graph).violations, [])
                self.assertEqual(complex_report(graph).violations, [])
