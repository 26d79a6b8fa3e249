from __future__ import annotations

from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from aoforge.apps.graphs.corpus import complete_graph, cycle_graph, path_graph, star_graph
from aoforge.apps.graphs.services import enumerate_acyclic_orientations
from aoforge.apps.graphs.structures import Orientation
from aoforge.apps.trees.services import (
    ao_to_tree,
    arc_diagram,
    canonical_depiction,
    chain_suite,
    chain_to_tree,
    count_nc_maximal_chains,
    depiction_uniqueness_check,
    enumerate_nc_maximal_chains,
    enumerate_rooted_spanning_trees,
    flagged_trees,
    forest_identity,
    is_noncrossing,
    load_chain,
    load_tree,
    monomial_to_tree,
    monomial_to_tree_trace,
    roundtrip_suite,
    tree_to_chain,
    tree_to_monomial,
    tree_to_orientation,
)
from aoforge.apps.trees.structures import DepictionFunction, RootedSpanningTree
from aoforge.core.exceptions import InvalidArgument, ResourceLimit

FIXTURES = Path(settings.BASE_DIR) / "tests" / "fixtures"


def tree(graph, **parent):
    """``tree(P2, v1="r", v2="1")``"""
    root = graph.n + 1
    mapping = {int(key[1:]): root if value == "r" else int(value) for key, value in parent.items()}
    return RootedSpanningTree.from_mapping(graph, mapping)


class RootedSpanningTreeTests(SimpleTestCase):
    def test_load_tree(self) -> None:
        loaded = load_tree(path_graph(2), FIXTURES / "trees" / "p2_flagged.json")
        self.assertEqual(loaded, tree(path_graph(2), v1="r", v2="1"))
        self.assertEqual(loaded.encoding, "1>r,2>1")
        self.assertEqual(loaded.as_dict(), {"parent": {"1": "r", "2": "1"}})

    def test_rejects_bad_parent_maps(self) -> None:
        p3 = path_graph(3)
        for parent in (
            {"1": "2", "2": "r"},
            {"1": "2", "2": "1", "3": "r"},
            {"1": "3", "2": "r", "3": "r"},
            {"1": "x", "2": "r", "3": "r"},
        ):
            with self.subTest(parent=parent), self.assertRaises(InvalidArgument):
                load_tree(p3, {"parent": parent})

    def test_enumeration_matches_matrix_tree(self) -> None:
        self.assertEqual(len(enumerate_rooted_spanning_trees(path_graph(2))), 3)
        self.assertEqual(len(enumerate_rooted_spanning_trees(path_graph(3))), 8)
        self.assertEqual(len(enumerate_rooted_spanning_trees(complete_graph(3))), 16)


class DepictionTests(SimpleTestCase):
    def test_star_tree_lists_children_of_the_root_in_decreasing_order(self) -> None:
        p = canonical_depiction(tree(path_graph(2), v1="r", v2="r"))
        self.assertEqual(p, DepictionFunction((2, 1, 0)))
        self.assertEqual(p.as_dict(), {"1": 2, "2": 1, "r": 0})

    def test_chain_tree(self) -> None:
        self.assertEqual(canonical_depiction(tree(path_graph(2), v1="r", v2="1")), DepictionFunction((1, 2, 0)))

    def test_fixture_tree_on_p3(self) -> None:
        p3_tree = load_tree(path_graph(3), FIXTURES / "trees" / "p3.json")
        p = canonical_depiction(p3_tree)
        self.assertEqual(p, DepictionFunction((3, 2, 1, 0)))
        self.assertTrue(depiction_uniqueness_check(p3_tree).passed)

    def test_noncrossing_predicate(self) -> None:
        star = tree(path_graph(2), v1="r", v2="r")
        self.assertTrue(is_noncrossing(star, DepictionFunction((1, 2, 0))))
        crossing = tree(complete_graph(3), v1="r", v2="r", v3="1")
        self.assertFalse(is_noncrossing(crossing, DepictionFunction((1, 2, 3, 0))))

    def test_uniqueness_over_all_trees_of_k4(self) -> None:
        for spanning_tree in enumerate_rooted_spanning_trees(complete_graph(3)):
            with self.subTest(tree=spanning_tree.encoding):
                self.assertTrue(depiction_uniqueness_check(spanning_tree).passed)

    @override_settings(AOFORGE_GUARD_RAILS={**settings.AOFORGE_GUARD_RAILS, "depiction_bruteforce_n": 2})
    def test_bruteforce_guard(self) -> None:
        with self.assertRaises(ResourceLimit):
            depiction_uniqueness_check(tree(path_graph(3), v1="2", v2="r", v3="r"))

    def test_arc_diagram(self) -> None:
        lines = arc_diagram(tree(path_graph(2), v1="r", v2="1")).splitlines()
        self.assertEqual(lines[0], "r   1   2")
        self.assertTrue(lines[1].startswith("+---+"))
        self.assertTrue(lines[1].endswith("1->r"))
        self.assertTrue(lines[2].endswith("2->1"))


class MonomialTreeTests(SimpleTestCase):
    def test_monomial_to_tree_on_p2(self) -> None:
        p2 = path_graph(2)
        self.assertEqual(monomial_to_tree(p2, (0, 0)), tree(p2, v1="r", v2="r"))
        self.assertEqual(monomial_to_tree(p2, (1, 0)), tree(p2, v1="2", v2="r"))
        self.assertEqual(monomial_to_tree(p2, (0, 1)), tree(p2, v1="r", v2="1"))

    def test_trace(self) -> None:
        _, steps = monomial_to_tree_trace(path_graph(2), (0, 1))
        self.assertEqual([(step.placed, step.anchor) for step in steps], [(1, 0), (2, 1)])
        self.assertEqual(steps[1].neighbors, (0, 1))
        self.assertEqual(steps[1].edge, ("2", "1"))

    def test_non_standard_monomials_are_rejected(self) -> None:
        for a in ((1, 1), (0, 2), (1,), (-1, 0)):
            with self.subTest(a=a), self.assertRaises(InvalidArgument):
                monomial_to_tree(path_graph(2), a)

    def test_tree_to_monomial(self) -> None:
        self.assertEqual(tree_to_monomial(tree(path_graph(2), v1="r", v2="r")), (0, 0))
        self.assertEqual(tree_to_monomial(tree(path_graph(3), v1="r", v2="1", v3="2")), (0, 1, 1))

    def test_roundtrips(self) -> None:
        for graph in (path_graph(2), path_graph(3), complete_graph(3), cycle_graph(4), star_graph(4)):
            with self.subTest(graph=str(graph)):
                report = roundtrip_suite(graph)
                self.assertEqual(report.violations, [])
        self.assertEqual(roundtrip_suite(complete_graph(3)).details["trees"], 16)


class OrientationCorrespondenceTests(SimpleTestCase):
    def test_p2_trees(self) -> None:
        p2 = path_graph(2)
        star = tree_to_orientation(tree(p2, v1="r", v2="r"))
        self.assertFalse(star.flagged)
        self.assertEqual(star.orientation.arcs, frozenset())

        chain = tree_to_orientation(tree(p2, v1="r", v2="1"))
        self.assertTrue(chain.flagged)
        self.assertEqual(chain.orientation.arcs, {(2, 1)})
        self.assertEqual(chain.linear_extension, {1: 2, 2: 1})

    def test_flagged_counts(self) -> None:
        self.assertEqual(flagged_trees(path_graph(2)).details["flagged"], 2)
        k3 = flagged_trees(complete_graph(3))
        self.assertEqual((k3.details["trees"], k3.details["flagged"]), (16, 6))
        self.assertEqual(k3.violations, [])

    def test_ao_to_tree_roundtrip(self) -> None:
        p2 = path_graph(2)
        up = Orientation(p2, frozenset({(1, 2)}))
        self.assertEqual(ao_to_tree(up), tree(p2, v1="2", v2="r"))
        for graph in (path_graph(3), complete_graph(3)):
            for orientation in enumerate_acyclic_orientations(graph):
                result = tree_to_orientation(ao_to_tree(orientation))
                self.assertTrue(result.flagged)
                self.assertEqual(result.orientation, orientation)

    def test_cyclic_orientation_has_no_tree(self) -> None:
        cyclic = Orientation(complete_graph(3), frozenset({(1, 2), (2, 3), (3, 1)}))
        with self.assertRaises(InvalidArgument):
            ao_to_tree(cyclic)


class NoncrossingChainTests(SimpleTestCase):
    def test_counts(self) -> None:
        self.assertEqual([count_nc_maximal_chains(n) for n in (1, 2, 3, 4)], [1, 3, 16, 125])
        self.assertEqual(len(enumerate_nc_maximal_chains(3)), 16)
        with self.assertRaises(InvalidArgument):
            count_nc_maximal_chains(0)

    @override_settings(AOFORGE_GUARD_RAILS={**settings.AOFORGE_GUARD_RAILS, "nc_chain_n": 3})
    def test_guard(self) -> None:
        with self.assertRaises(ResourceLimit):
            count_nc_maximal_chains(4)

    def test_chain_to_tree(self) -> None:
        chain = load_chain(FIXTURES / "chains" / "n2.json")
        spanning_tree, p = chain_to_tree(chain)
        self.assertEqual(spanning_tree.encoding, "1>r,2>1")
        self.assertEqual(p, DepictionFunction((1, 2, 0)))
        self.assertEqual(p, canonical_depiction(spanning_tree))

        (single,) = enumerate_nc_maximal_chains(1)
        self.assertEqual(chain_to_tree(single)[0].encoding, "1>r")

    def test_tree_to_chain(self) -> None:
        star = tree(complete_graph(2), v1="r", v2="r")
        self.assertEqual(tree_to_chain(star).as_list(), [[[0], [1], [2]], [[0, 2], [1]], [[0, 1, 2]]])

    def test_invalid_chains(self) -> None:
        for partitions in (
            [[[0], [1]], [[0], [1]]],
            [[[0], [1], [2], [3]], [[0, 2], [1], [3]], [[0, 2], [1, 3]], [[0, 1, 2, 3]]],
            [[[0], [2]], [[0, 2]]],
        ):
            with self.subTest(partitions=partitions), self.assertRaises(InvalidArgument):
                load_chain(partitions)

    def test_chain_suite(self) -> None:
        for n in (1, 2, 3):
            with self.subTest(n=n):
                self.assertEqual(chain_suite(n).violations, [])
        self.assertEqual(chain_suite(2).details["chains"], 3)


class ForestIdentityTests(SimpleTestCase):
    def test_small_cases(self) -> None:
        for n, expected in ((1, 1), (2, 3), (3, 16), (5, 1296)):
            report = forest_identity(n)
            self.assertTrue(report.passed)
            self.assertEqual((report.details["lhs"], report.details["rhs"]), (expected, expected))
