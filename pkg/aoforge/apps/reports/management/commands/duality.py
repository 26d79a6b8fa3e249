from aoforge.apps.ideals.services import duality_check, ideal_a, ideal_t
from aoforge.apps.reports.commands import ReportCommand


class Command(ReportCommand):
    help = "Check that A_G and T_G are Alexander dual with respect to deg + 1"

    def add_command_arguments(self, parser):
        self.add_graph_argument(parser)

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        report.results.update(
            {
                "bound": [degree + 1 for degree in graph.degree_vector],
                "A": ideal_a(graph),
                "T": ideal_t(graph),
            }
        )
        report.add_check(duality_check(graph))
