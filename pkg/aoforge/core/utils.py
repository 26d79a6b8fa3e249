from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from typing import Any

from aoforge.core.constants import ROOT_LABEL
from aoforge.core.exceptions import InvalidArgument


def parse_fraction(value: str | int | Fraction) -> Fraction:
    """Parse ``"1/3"``, ``"0.25"`` or an int into an exact rational."""
    if isinstance(value, Fraction):
        return value
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not a rational number: {value!r} ({exc})")


def format_fraction(value: Fraction | int) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def vertex_label(vertex: int, n: int) -> str:
    return ROOT_LABEL if vertex == n + 1 else str(vertex)


def parse_vertex(label: str | int, n: int) -> int:
    if label == ROOT_LABEL:
        return n + 1
    try:
        vertex = int(label)
    except (TypeError, ValueError):
        raise InvalidArgument(f"unknown vertex label {label!r}")
    if not 1 <= vertex <= n:
        raise InvalidArgument(f"vertex {vertex} outside 1..{n}")
    return vertex


def parse_vertex_set(text: str, n: int) -> frozenset[int]:
    """Parse a comma separated vertex list such as ``"1,3"``; the empty string is the empty set."""
    if not text.strip():
        return frozenset()
    return frozenset(parse_vertex(part.strip(), n) for part in text.split(","))


def sorted_sets(sets: Iterable[Iterable[int]]) -> list[list[int]]:
    """Deterministic order for families of vertex sets: by size, then lexicographically."""
    return sorted((sorted(s) for s in sets), key=lambda s: (len(s), s))


def jsonable(value: Any) -> Any:
    """Turn library values (fractions, sets, tuples) into plain JSON data."""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(item) for item in value)
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if hasattr(value, "as_dict"):
        return jsonable(value.as_dict())
    return value
