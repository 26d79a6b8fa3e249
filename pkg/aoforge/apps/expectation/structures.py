from __future__ import annotations

from dataclasses import dataclass

from aoforge.core.exceptions import InvalidArgument


@dataclass(frozen=True, order=True)
class ParkingFunction:
    """``a`` in ℕ^n whose sorted entries satisfy a_(i) ≤ i − 1."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(value > index for index, value in enumerate(sorted(self.values))) or min(self.values, default=0) < 0:
            raise InvalidArgument(f"{list(self.values)} is not a parking function")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def area(self) -> int:
        return sum(self.values)

    @property
    def support(self) -> frozenset[int]:
        """1-based positions of the nonzero entries."""
        return frozenset(index for index, value in enumerate(self.values, 1) if value)

    def as_list(self) -> list[int]:
        return list(self.values)
