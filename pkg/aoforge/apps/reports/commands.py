from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from django.core.management.base import BaseCommand, CommandError, CommandParser

from aoforge.apps.graphs.services import load_graph
from aoforge.apps.graphs.structures import SimpleGraph
from aoforge.apps.reports.services import render_table
from aoforge.apps.reports.structures import RunReport
from aoforge.core.constants import ErrorExitCode
from aoforge.core.exceptions import ConsistencyError, InvalidArgument, ResourceLimit
from aoforge.core.serialization import render_json
from aoforge.core.utils import jsonable

logger = logging.getLogger(__name__)

# Django's own options; they never belong in a report.
BASE_OPTIONS = frozenset(
    {"verbosity", "settings", "pythonpath", "traceback", "no_color", "force_color", "skip_checks", "stdout", "stderr"}
)
OUTPUT_OPTIONS = frozenset({"out", "format", "timestamp"})


class ReportCommand(BaseCommand):
    """
    Base for the aoforge commands: every run produces one RunReport.

    Subclasses add their flags in ``add_command_arguments`` and fill the report in ``run``.
    Invalid input and guard rails exit with 2, failed verdicts and consistency errors with 1.
    """

    requires_system_checks: list[str] = []

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--out", type=Path, help="Write the report here instead of stdout")
        parser.add_argument("--format", choices=["json", "table"], default="json", help="Report format")
        parser.add_argument("--timestamp", action="store_true", help="Add a wall-clock timestamp to the report")
        parser.add_argument("--jobs", type=int, default=1, help="Cap on worker processes (default: 1)")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: CommandParser) -> None:
        pass

    @staticmethod
    def add_graph_argument(parser: CommandParser, required: bool = True) -> None:
        parser.add_argument("--graph", type=Path, required=required, help="Graph JSON file")

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def run(self, report: RunReport, options: dict[str, Any]) -> None:
        raise NotImplementedError

    def load_graph(self, report: RunReport, path: Path) -> SimpleGraph:
        graph = load_graph(path)
        report.add_input("graph", graph.as_dict())
        return graph

    def handle(self, *args: Any, **options: Any) -> None:
        arguments = {
            key: jsonable(str(value) if isinstance(value, Path) else value)
            for key, value in sorted(options.items())
            if key not in BASE_OPTIONS | OUTPUT_OPTIONS and key != "jobs"
        }
        report = RunReport(self.command_name, arguments)
        try:
            self.run(report, options)
        except (InvalidArgument, ResourceLimit) as exc:
            raise CommandError(f"{exc.code}: {exc.message}", returncode=ErrorExitCode.USAGE)
        except ConsistencyError as exc:
            logger.error("%s: %s", self.command_name, exc.message)
            raise CommandError(f"{exc.code}: {exc.message}", returncode=ErrorExitCode.VERDICT_FAILED)

        if options["timestamp"]:
            report.stamp()
        self.emit(report, options)

        if not report.passed:
            failed = len(report.violations)
            raise CommandError(f"{failed} verdict(s) failed", returncode=ErrorExitCode.VERDICT_FAILED)

    def emit(self, report: RunReport, options: dict[str, Any]) -> None:
        if options["format"] == "table":
            text = render_table(report)
        else:
            text = render_json(report.as_dict()).decode()
        if options["out"]:
            options["out"].write_text(text + "\n", encoding="utf-8")
            self.stderr.write(f"Report written to {options['out']}")
        else:
            self.stdout.write(text)
