from aoforge.apps.complexes.services import build_complex, complex_report, euler_characteristic, export_complex
from aoforge.apps.reports.commands import ReportCommand
from aoforge.core.constants import ComplexKind


class Command(ReportCommand):
    help = "Build the cell complexes Z_G, Y_G and X_G of a graph and verify their labels"

    def add_command_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            "--kind", choices=ComplexKind.values, action="append", help="Complex to build; repeatable (default: all)"
        )
        parser.add_argument("--export", action="store_true", help="Include every cell and cover relation")

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        kinds = [ComplexKind(kind) for kind in options["kind"] or ComplexKind.values]
        for kind in kinds:
            complex_ = build_complex(graph, kind)
            if options["export"]:
                report.results[str(kind)] = export_complex(complex_)
            else:
                report.results[str(kind)] = {
                    "f_vector": list(complex_.f_vector),
                    "euler_characteristic": euler_characteristic(complex_),
                }
        report.add_check(complex_report(graph, kinds))
