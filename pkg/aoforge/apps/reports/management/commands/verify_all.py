from django.conf import settings

from aoforge.apps.reports.commands import ReportCommand
from aoforge.apps.reports.services import acceptance_suite


class Command(ReportCommand):
    help = "Run the acceptance suite over the built-in graph corpus"

    def add_command_arguments(self, parser):
        parser.add_argument("--n-max", type=int, default=4, help="Largest corpus graph (default: 4)")
        parser.add_argument("--seed", type=int, help="Seed for random corpus graphs and the simulation")
        parser.add_argument("--steps", type=int, default=1_000_000, help="Simulation steps (default: 1000000)")

    def run(self, report, options):
        seed = settings.AOFORGE_DEFAULT_SEED if options["seed"] is None else options["seed"]

        def progress(criterion, passed):
            style = self.style.SUCCESS if passed else self.style.ERROR
            self.stderr.write(style(f"{'PASS' if passed else 'FAIL'}  {criterion}"))

        acceptance_suite(
            report, options["n_max"], seed, steps=options["steps"], jobs=options["jobs"], progress=progress
        )
