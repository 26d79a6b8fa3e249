from aoforge.apps.ideals.services import ideal_census, irreducible_decomposition_check
from aoforge.apps.reports.commands import ReportCommand


class Command(ReportCommand):
    help = "Compute A_G, T_G, the artinianized A_G and the standard monomials of T_G"

    def add_command_arguments(self, parser):
        self.add_graph_argument(parser)

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        census = ideal_census(graph)
        report.results.update(census)
        report.results["rendered"] = {name: str(census[name]) for name in ("A", "T", "artinianized_A")}
        report.add_check(irreducible_decomposition_check(graph))
