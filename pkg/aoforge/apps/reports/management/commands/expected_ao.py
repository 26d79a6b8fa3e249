from aoforge.apps.expectation.services import (
    enumerate_parking_functions,
    expected_ao_bruteforce,
    expected_ao_formula,
)
from aoforge.apps.reports.commands import ReportCommand
from aoforge.core.checks import CheckReport
from aoforge.core.guards import check_limit
from aoforge.core.utils import parse_fraction


class Command(ReportCommand):
    help = "Expected number of acyclic orientations of G(n, p) through parking functions"

    def add_command_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Number of vertices")
        parser.add_argument("--p", type=str, required=True, help="Edge probability as a rational, e.g. 1/3")
        parser.add_argument("--oracle", action="store_true", help="Also sum over all labelled graphs and compare")

    def run(self, report, options):
        n, p = options["n"], parse_fraction(options["p"])
        check_limit("parking_n", n)
        formula = expected_ao_formula(n, p)
        report.results.update(
            {"n": n, "p": p, "parking_functions": len(enumerate_parking_functions(n)), "formula": formula}
        )
        if options["oracle"]:
            bruteforce = expected_ao_bruteforce(n, p)
            report.results["bruteforce"] = bruteforce
            check = CheckReport("expected acyclic orientations")
            check.expect(f"n={n}, p={options['p']}", bruteforce, formula)
            report.add_check(check)
