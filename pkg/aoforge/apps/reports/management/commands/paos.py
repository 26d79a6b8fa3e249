from aoforge.apps.graphs.services import pao_census, pao_report
from aoforge.apps.reports.commands import ReportCommand


class Command(ReportCommand):
    help = "List the partial acyclic orientations of a graph with their order-ideal families"

    def add_command_arguments(self, parser):
        self.add_graph_argument(parser)

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        census = pao_census(graph)
        report.results.update({"count": len(census), "paos": census})
        report.add_check(pao_report(graph))
