from aoforge.apps.chains.services import (
    build_flip_graph,
    flip_graph_check,
    orientation_law,
    simulate,
    stationary_verify,
)
from aoforge.apps.reports.commands import ReportCommand
from aoforge.core.checks import CheckReport
from aoforge.core.constants import ChainKind


class Command(ReportCommand):
    help = "Markov chains on acyclic orientations: exact stationary laws, simulation and flip graphs"

    def add_command_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="action", required=True)

        verify = subparsers.add_parser("verify", help="Verify the stationary law exactly")
        self.add_graph_argument(verify)
        verify.add_argument("--kind", choices=ChainKind.values, required=True)

        run = subparsers.add_parser("simulate", help="Estimate the stationary law by simulation")
        self.add_graph_argument(run)
        run.add_argument("--kind", choices=ChainKind.values, required=True)
        run.add_argument("--seed", type=int, help="Seed for the random streams (default: AOFORGE_DEFAULT_SEED)")
        run.add_argument("--steps", type=int, default=1_000_000, help="Steps per replica (default: 1000000)")
        run.add_argument("--burn-in", type=int, default=0, help="Steps discarded per replica (default: 0)")
        run.add_argument("--replicas", type=int, default=1, help="Independent replicas (default: 1)")
        run.add_argument(
            "--tolerance", type=float, help="Fail unless the total variation to the exact law is below this"
        )

        flip = subparsers.add_parser("flip", help="Cover and interval flip graphs")
        self.add_graph_argument(flip)
        flip.add_argument("--kind", choices=[ChainKind.CR.value, ChainKind.IR.value], default=ChainKind.IR.value)

    def run(self, report, options):
        graph = self.load_graph(report, options["graph"])
        kind = ChainKind(options["kind"])
        if options["action"] == "verify":
            check = report.add_check(stationary_verify(graph, kind))
            law = orientation_law(graph, kind)
            report.results.update({"kind": kind, "states": check.details["states"], "law": law})
        elif options["action"] == "simulate":
            result = simulate(
                graph,
                kind,
                seed=options["seed"],
                steps=options["steps"],
                burn_in=options["burn_in"],
                replicas=options["replicas"],
                jobs=options["jobs"],
            )
            report.results.update(result.as_dict())
            if options["tolerance"] is not None:
                check = CheckReport("simulation")
                check.check(
                    f"total variation < {options['tolerance']}",
                    result.total_variation < options["tolerance"],
                    result.total_variation,
                )
                report.add_check(check)
        else:
            flips = build_flip_graph(graph, kind)
            report.results.update(
                {
                    "kind": kind,
                    "states": [state.encoding for state in flips.states],
                    "edges": [list(edge) for edge in flips.graph.edge_list],
                    "degrees": list(flips.graph.degree_vector),
                }
            )
            report.add_check(flip_graph_check(graph))
