from fractions import Fraction

from aoforge.apps.graphs.services import graph_census, submodularity_check
from aoforge.apps.reports.commands import ReportCommand
from aoforge.core.exceptions import InvalidArgument
from aoforge.core.utils import parse_fraction, parse_vertex_set


class Command(ReportCommand):
    help = "Summarize a graph: degrees, acyclic orientations and spanning trees of G_r"

    def add_command_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument("--sigma", type=str, help="Vertex set for the supermodularity check, e.g. 1,2")
        parser.add_argument("--rho", type=str, help="Second vertex set for the supermodularity check")
        parser.add_argument(
            "--coefficients", type=str, default="0,1,1", help="a,b,c of F(σ) = a + b|σ| + c|E(σ)| (default: 0,1,1)"
        )

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        report.results.update(graph_census(graph))

        if (options["sigma"] is None) != (options["rho"] is None):
            raise InvalidArgument("--sigma and --rho go together")
        if options["sigma"] is not None:
            coefficients = [parse_fraction(part) for part in options["coefficients"].split(",")]
            if len(coefficients) != 3:
                raise InvalidArgument(f"--coefficients needs three values, got {options['coefficients']!r}")
            a, b, c = (Fraction(value) for value in coefficients)
            sigma = parse_vertex_set(options["sigma"], graph.n)
            rho = parse_vertex_set(options["rho"], graph.n)
            report.add_check(submodularity_check(graph, a, b, c, sigma, rho))
