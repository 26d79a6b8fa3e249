from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any

from django.conf import settings
from django.utils import timezone

from aoforge.core.checks import CheckReport, Verdict
from aoforge.core.serialization import render_json


@dataclass
class RunReport:
    """What a command ran on, what it computed and which assertions held."""

    command: str
    arguments: dict[str, Any]
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckReport] = field(default_factory=list)
    version: str = field(default_factory=lambda: settings.AOFORGE_VERSION)
    timestamp: str | None = None

    def add_input(self, name: str, value: Any) -> None:
        self.inputs[name] = value

    def add_check(self, report: CheckReport) -> CheckReport:
        self.checks.append(report)
        return report

    def stamp(self) -> None:
        self.timestamp = timezone.now().isoformat()

    @property
    def input_digest(self) -> str | None:
        if not self.inputs:
            return None
        return hashlib.sha256(render_json(self.inputs, indent=None)).hexdigest()

    @property
    def verdicts(self) -> list[Verdict]:
        return [
            Verdict(f"{check.name}: {verdict.name}", verdict.expected, verdict.actual, verdict.passed)
            for check in self.checks
            for verdict in check.verdicts
        ]

    @property
    def violations(self) -> list[Verdict]:
        return [verdict for verdict in self.verdicts if not verdict.passed]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def as_dict(self) -> dict:
        data = {
            "command": self.command,
            "arguments": self.arguments,
            "input_digest": self.input_digest,
            "version": self.version,
            "passed": self.passed,
            "results": self.results,
            "checks": [check.as_dict() for check in self.checks],
        }
        if self.timestamp:
            data["timestamp"] = self.timestamp
        return data
