from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "passed": self.passed}


@dataclass
class CheckReport:
    """Outcome of a verification operation; ``violations`` must be empty on valid input."""

    name: str
    verdicts: list[Verdict] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def expect(self, name: str, expected: Any, actual: Any) -> bool:
        passed = expected == actual
        self.verdicts.append(Verdict(name, expected, actual, passed))
        if not passed:
            logger.warning("%s: %s expected %r, got %r", self.name, name, expected, actual)
        return passed

    def check(self, name: str, condition: bool, actual: Any = None) -> bool:
        """Record a boolean assertion; ``actual`` documents the evidence when it fails."""
        condition = bool(condition)
        self.verdicts.append(Verdict(name, True, condition if actual is None else actual, condition))
        if not condition:
            logger.warning("%s: %s failed (%r)", self.name, name, actual)
        return condition

    def extend(self, other: CheckReport, prefix: str | None = None) -> None:
        prefix = prefix or other.name
        for verdict in other.verdicts:
            self.verdicts.append(
                Verdict(f"{prefix}: {verdict.name}", verdict.expected, verdict.actual, verdict.passed)
            )

    @property
    def violations(self) -> list[Verdict]:
        return [verdict for verdict in self.verdicts if not verdict.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "verdicts": [verdict.as_dict() for verdict in self.verdicts],
            "details": self.details,
        }
