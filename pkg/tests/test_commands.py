from __future__ import annotations

import json
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.mock import MagicMock, patch

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from aoforge.core.checks import CheckReport

FIXTURES = Path(settings.BASE_DIR) / "tests" / "fixtures"
GRAPHS = FIXTURES / "graphs"


class CommandTestCase(SimpleTestCase):
    def call(self, *args: str) -> tuple[str, str]:
        stdout, stderr = StringIO(), StringIO()
        call_command(*args, stdout=stdout, stderr=stderr)
        return stdout.getvalue(), stderr.getvalue()

    def call_json(self, *args: str) -> dict:
        return json.loads(self.call(*args)[0])

    def assertExitCode(self, code: int, *args: str) -> CommandError:
        with self.assertRaises(CommandError) as raised:
            self.call(*args)
        self.assertEqual(raised.exception.returncode, code)
        return raised.exception


class GraphCommandTests(CommandTestCase):
    def test_census(self) -> None:
        report = self.call_json("graph", "--graph", str(GRAPHS / "k4.json"))
        self.assertTrue(report["passed"])
        self.assertEqual(report["command"], "graph")
        self.assertEqual(report["results"]["acyclic_orientations"], 24)
        self.assertEqual(report["results"]["rooted_spanning_trees"], 125)
        self.assertEqual(len(report["input_digest"]), 64)
        self.assertNotIn("timestamp", report)

    def test_supermodularity(self) -> None:
        report = self.call_json(
            "graph", "--graph", str(GRAPHS / "k3.json"), "--sigma", "1,2", "--rho", "2,3", "--coefficients", "0,1,1"
        )
        (check,) = report["checks"]
        self.assertEqual((check["details"]["lhs"], check["details"]["rhs"]), ("6", "7"))

    def test_sigma_needs_rho(self) -> None:
        error = self.assertExitCode(2, "graph", "--graph", str(GRAPHS / "k3.json"), "--sigma", "1")
        self.assertIn("invalid_argument", str(error))

    def test_missing_graph_file(self) -> None:
        self.assertExitCode(2, "graph", "--graph", str(GRAPHS / "missing.json"))

    def test_table_format(self) -> None:
        stdout, _ = self.call("graph", "--graph", str(GRAPHS / "p2.json"), "--format", "table")
        lines = stdout.splitlines()
        self.assertEqual(lines[0], "command   graph")
        self.assertIn("passed    yes", lines)

    def test_out_and_timestamp(self) -> None:
        tempdir = TemporaryDirectory()
        self.addCleanup(tempdir.cleanup)
        target = Path(tempdir.name) / "report.json"
        stdout, stderr = self.call("graph", "--graph", str(GRAPHS / "c4.json"), "--out", str(target), "--timestamp")
        self.assertEqual(stdout, "")
        self.assertIn("Report written to", stderr)
        report = json.loads(target.read_text(encoding="utf-8"))
        self.assertIn("timestamp", report)
        self.assertEqual(report["results"]["acyclic_orientations"], 14)

    def test_output_is_deterministic(self) -> None:
        args = ("paos", "--graph", str(GRAPHS / "p3.json"))
        self.assertEqual(self.call(*args), self.call(*args))


class AlgebraCommandTests(CommandTestCase):
    def test_paos(self) -> None:
        report = self.call_json("paos", "--graph", str(GRAPHS / "k3.json"))
        self.assertEqual(report["results"]["count"], 13)
        self.assertTrue(report["passed"])

    def test_complexes(self) -> None:
        report = self.call_json("complexes", "--graph", str(GRAPHS / "p2.json"))
        self.assertEqual(report["results"]["Z"], {"f_vector": [2, 1], "euler_characteristic": 1})
        self.assertEqual(report["results"]["Y"]["f_vector"][0], 4)
        self.assertTrue(report["passed"])

    def test_complex_export(self) -> None:
        report = self.call_json("complexes", "--graph", str(GRAPHS / "k3.json"), "--kind", "Z", "--export")
        self.assertEqual(list(report["results"]), ["Z"])
        self.assertEqual(len(report["results"]["Z"]["cells"]), 13)

    def test_unknown_complex_kind(self) -> None:
        with self.assertRaises(CommandError):
            self.call("complexes", "--graph", str(GRAPHS / "p2.json"), "--kind", "W")

    def test_ideals(self) -> None:
        report = self.call_json("ideals", "--graph", str(GRAPHS / "p2.json"))
        self.assertEqual(report["results"]["rendered"]["T"], "<x2^2, x1*x2, x1^2>")
        self.assertEqual(report["results"]["standard_monomials_T"], [[0, 0], [0, 1], [1, 0]])

    def test_duality(self) -> None:
        report = self.call_json("duality", "--graph", str(GRAPHS / "p3.json"))
        self.assertEqual(report["results"]["bound"], [2, 3, 2])
        self.assertTrue(report["passed"])


class TreeCommandTests(CommandTestCase):
    def test_roundtrip(self) -> None:
        report = self.call_json("nct", "roundtrip", "--graph", str(GRAPHS / "k3.json"))
        self.assertEqual(report["results"]["standard_monomials"], 16)
        self.assertEqual(report["results"]["trees"], 16)
        self.assertEqual(report["results"]["flagged"], 6)

    def test_monomial_with_trace(self) -> None:
        report = self.call_json("nct", "monomial", "--graph", str(GRAPHS / "p2.json"), "--a", "0,1", "--trace")
        self.assertEqual(report["results"]["tree"], {"parent": {"1": "r", "2": "1"}})
        self.assertEqual(len(report["results"]["trace"]), 2)

    def test_non_standard_monomial(self) -> None:
        self.assertExitCode(2, "nct", "monomial", "--graph", str(GRAPHS / "p2.json"), "--a", "1,1")
        self.assertExitCode(2, "nct", "monomial", "--graph", str(GRAPHS / "p2.json"), "--a", "one")

    def test_tree(self) -> None:
        report = self.call_json(
            "nct", "tree", "--graph", str(GRAPHS / "p2.json"), "--tree", str(FIXTURES / "trees" / "p2_flagged.json")
        )
        self.assertTrue(report["results"]["flagged"])
        self.assertEqual(report["results"]["orientation"], "2->1")
        self.assertEqual(report["results"]["linear_extension"], {"1": 2, "2": 1})

    def test_chains(self) -> None:
        report = self.call_json("nct", "chains", "--chain", str(FIXTURES / "chains" / "n2.json"), "--n", "3")
        self.assertEqual(report["results"]["tree"], {"parent": {"1": "r", "2": "1"}})
        self.assertEqual(report["results"]["chains"]["chains"], 16)
        self.assertTrue(report["passed"])
        self.assertExitCode(2, "nct", "chains")

    def test_forest(self) -> None:
        report = self.call_json("nct", "forest", "--n", "4")
        self.assertEqual((report["results"]["lhs"], report["results"]["rhs"]), (125, 125))


class ChainCommandTests(CommandTestCase):
    def test_verify(self) -> None:
        report = self.call_json("chains", "verify", "--graph", str(GRAPHS / "c4.json"), "--kind", "IR")
        self.assertEqual(report["results"]["states"], 14)
        self.assertEqual(set(report["results"]["law"].values()), {"1/14"})

    def test_simulate_is_reproducible(self) -> None:
        args = ("chains", "simulate", "--graph", str(GRAPHS / "p3.json"), "--kind", "CS", "--seed", "5")
        args += ("--steps", "5000", "--replicas", "2")
        first, second = self.call_json(*args), self.call_json(*args)
        self.assertEqual(first, second)
        self.assertEqual(first["results"]["visits"], 10000)

    def test_simulation_tolerance_failure(self) -> None:
        args = ("chains", "simulate", "--graph", str(GRAPHS / "p2.json"), "--kind", "IR", "--steps", "100")
        self.assertExitCode(1, *args, "--tolerance", "0")

    def test_flip(self) -> None:
        report = self.call_json("chains", "flip", "--graph", str(GRAPHS / "c4.json"), "--kind", "CR")
        self.assertEqual(len(report["results"]["states"]), 14)
        self.assertEqual(len(report["results"]["edges"]), 24)


class ExpectationCommandTests(CommandTestCase):
    def test_formula_and_oracle(self) -> None:
        report = self.call_json("expected_ao", "--n", "2", "--p", "1/2", "--oracle")
        self.assertEqual(report["results"]["formula"], "3/2")
        self.assertEqual(report["results"]["bruteforce"], "3/2")
        self.assertEqual(report["results"]["parking_functions"], 3)

    def test_probability_out_of_range(self) -> None:
        self.assertExitCode(2, "expected_ao", "--n", "2", "--p", "1")

    def test_guard_rail(self) -> None:
        error = self.assertExitCode(2, "expected_ao", "--n", "9", "--p", "1/2")
        self.assertIn("resource_limit", str(error))


class PercolationCommandTests(CommandTestCase):
    def test_minimal_size(self) -> None:
        report = self.call_json("percolation", "--graph", str(GRAPHS / "grid3x3.json"), "--k", "2")
        self.assertEqual(report["results"]["minimal_size"], 3)

    def test_closure(self) -> None:
        report = self.call_json("percolation", "--graph", str(GRAPHS / "p3.json"), "--k", "2", "--closure", "1,3")
        self.assertEqual(report["results"]["rounds"], [[1, 3], [1, 2, 3]])
        self.assertTrue(report["results"]["percolates"])

    def test_all_sets(self) -> None:
        report = self.call_json("percolation", "--graph", str(GRAPHS / "p3.json"), "--k", "2", "--all-sets")
        self.assertEqual(report["results"]["percolating_sets"], [[1, 3], [1, 2, 3]])
        self.assertTrue(report["passed"])


class VerifyAllCommandTests(CommandTestCase):
    def test_small_corpus(self) -> None:
        stdout, stderr = self.call("verify_all", "--n-max", "2", "--steps", "200000")
        report = json.loads(stdout)
        self.assertTrue(report["passed"])
        self.assertIn("C4", report["results"]["corpus"])
        self.assertTrue(all(entry["passed"] for entry in report["results"]["criteria"].values()))
        self.assertIn("PASS  markov chains", stderr)

    @patch("aoforge.apps.reports.management.commands.verify_all.acceptance_suite")
    def test_failed_criterion(self, suite: MagicMock) -> None:
        def fail(report, n_max, seed, steps, jobs, progress):
            check = report.add_check(CheckReport("labels"))
            check.expect("lcm", [2, 2], [2, 1])
            progress("labels", False)

        suite.side_effect = fail
        with self.assertRaises(CommandError) as raised:
            call_command("verify_all", "--n-max", "3", stdout=StringIO(), stderr=StringIO())
        self.assertEqual(raised.exception.returncode, 1)
        suite.assert_called_once()
        self.assertEqual(suite.call_args.args[1:3], (3, settings.AOFORGE_DEFAULT_SEED))

    def test_rejects_bad_arguments(self) -> None:
        self.assertExitCode(2, "verify_all", "--n-max", "0")
