from aoforge.apps.percolation.services import (
    closure_rounds,
    generators_c,
    minimal_percolating_size,
    percolating_sets,
    percolation_check,
)
from aoforge.apps.percolation.structures import PercolationInstance
from aoforge.apps.reports.commands import ReportCommand
from aoforge.core.utils import parse_vertex_set, sorted_sets


class Command(ReportCommand):
    help = "k-neighbour bootstrap percolation through the square-free ideal of non-percolating complements"

    def add_command_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument("--k", type=int, required=True, help="Infection threshold")
        query = parser.add_mutually_exclusive_group()
        query.add_argument("--min-size", action="store_true", help="Smallest percolating set size (default)")
        query.add_argument("--all-sets", action="store_true", help="Every percolating set, checked against closure")
        query.add_argument("--closure", type=str, metavar="VERTICES", help="Closure rounds of a set such as 1,3")

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        inst = PercolationInstance(graph, options["k"])
        report.results["k"] = inst.k
        if options["closure"] is not None:
            rounds = closure_rounds(inst, parse_vertex_set(options["closure"], graph.n))
            report.results.update(
                {"rounds": [sorted(step) for step in rounds], "percolates": len(rounds[-1]) == inst.n}
            )
        elif options["all_sets"]:
            report.results.update(
                {
                    "generators": sorted_sets(generators_c(inst)),
                    "percolating_sets": sorted_sets(percolating_sets(inst)),
                }
            )
            report.add_check(percolation_check(inst))
        else:
            report.results["minimal_size"] = minimal_percolating_size(inst)
