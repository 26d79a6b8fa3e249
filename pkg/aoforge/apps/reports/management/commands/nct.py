from aoforge.apps.reports.commands import ReportCommand
from aoforge.apps.trees.services import (
    arc_diagram,
    canonical_depiction,
    chain_suite,
    chain_to_tree,
    depiction_uniqueness_check,
    flagged_trees,
    forest_identity,
    load_chain,
    load_tree,
    monomial_to_tree_trace,
    roundtrip_suite,
    tree_to_chain,
    tree_to_monomial,
    tree_to_orientation,
)
from aoforge.core.checks import CheckReport
from aoforge.core.exceptions import InvalidArgument


def parse_exponents(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InvalidArgument(f"exponent vector must be comma separated integers, got {text!r}")


class Command(ReportCommand):
    help = "Non-crossing tree bijections: standard monomials, spanning trees, orientations and NC chains"

    def add_command_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="action", required=True)

        roundtrip = subparsers.add_parser("roundtrip", help="Monomial <-> tree roundtrips and flagged trees")
        self.add_graph_argument(roundtrip)

        monomial = subparsers.add_parser("monomial", help="Grow the spanning tree of a standard monomial")
        self.add_graph_argument(monomial)
        monomial.add_argument("--a", required=True, help="Exponent vector, e.g. 0,1,0")
        monomial.add_argument("--trace", action="store_true", help="Include the step-by-step recursion log")

        tree = subparsers.add_parser("tree", help="Depiction, monomial and orientation of a spanning tree")
        self.add_graph_argument(tree)
        tree.add_argument("--tree", required=True, help="Tree JSON file: {\"parent\": {\"1\": \"r\", ...}}")

        chains = subparsers.add_parser("chains", help="Maximal chains of NC([0,n]) against spanning trees of K_n")
        chains.add_argument("--n", type=int, help="Check every chain for this n")
        chains.add_argument("--chain", help="Chain JSON file: a list of partitions, each a list of blocks")

        forest = subparsers.add_parser("forest", help="(n+1)^(n-1) as a sum over non-crossing partitions")
        forest.add_argument("--n", type=int, required=True)

    def run(self, report, options):
        getattr(self, f"run_{options['action']}")(report, options)

    def run_roundtrip(self, report, options):
        graph = self.load_graph(report, options["graph"])
        suite = report.add_check(roundtrip_suite(graph))
        flagged = report.add_check(flagged_trees(graph))
        report.results.update({**suite.details, "flagged": flagged.details["flagged"]})

    def run_monomial(self, report, options):
        graph = self.load_graph(report, options["graph"])
        a = parse_exponents(options["a"])
        tree, steps = monomial_to_tree_trace(graph, a)
        p = canonical_depiction(tree)
        report.results.update(
            {
                "a": list(a),
                "tree": tree.as_dict(),
                "depiction": p.as_dict(),
                "arc_diagram": arc_diagram(tree, p),
            }
        )
        if options["trace"]:
            report.results["trace"] = [step._asdict() for step in steps]
        check = CheckReport("monomial roundtrip")
        check.expect("b(T_a) = a", list(a), list(tree_to_monomial(tree, p)))
        report.add_check(check)

    def run_tree(self, report, options):
        graph = self.load_graph(report, options["graph"])
        tree = load_tree(graph, options["tree"])
        report.add_input("tree", tree.as_dict())
        p = canonical_depiction(tree)
        result = tree_to_orientation(tree)
        report.results.update(
            {
                "depiction": p.as_dict(),
                "monomial": list(tree_to_monomial(tree, p)),
                "orientation": result.orientation.encoding,
                "flagged": result.flagged,
                "arc_diagram": arc_diagram(tree, p),
            }
        )
        if result.flagged:
            report.results["linear_extension"] = result.linear_extension
        report.add_check(depiction_uniqueness_check(tree))

    def run_chains(self, report, options):
        if options["chain"] is None and options["n"] is None:
            raise InvalidArgument("chains needs --n or --chain")
        if options["chain"] is not None:
            chain = load_chain(options["chain"])
            report.add_input("chain", chain.as_list())
            tree, p = chain_to_tree(chain)
            report.results.update(
                {"tree": tree.as_dict(), "depiction": p.as_dict(), "arc_diagram": arc_diagram(tree, p)}
            )
            check = CheckReport("chain roundtrip")
            check.expect("p_C is the canonical depiction", p.as_dict(), canonical_depiction(tree).as_dict())
            check.expect("tree -> chain returns the chain", chain.as_list(), tree_to_chain(tree).as_list())
            report.add_check(check)
        if options["n"] is not None:
            suite = report.add_check(chain_suite(options["n"]))
            report.results["chains"] = suite.details

    def run_forest(self, report, options):
        check = report.add_check(forest_identity(options["n"]))
        report.results.update(check.details)
