from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Iterator
from fractions import Fraction

from sympy.utilities.iterables import multiset_permutations

from aoforge.apps.expectation.structures import ParkingFunction
from aoforge.apps.graphs.services import count_acyclic_orientations
from aoforge.apps.graphs.structures import SimpleGraph
from aoforge.core.checks import CheckReport
from aoforge.core.exceptions import InvalidArgument
from aoforge.core.guards import check_limit
from aoforge.core.utils import format_fraction, parse_fraction

logger = logging.getLogger(__name__)

ORACLE_PROBABILITIES = ("1/10", "1/3", "1/2", "2/3", "9/10")


def _sorted_parking_prefixes(n: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing sequences s with s[i] ≤ i."""

    def extend(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        low = prefix[-1] if prefix else 0
        for value in range(low, len(prefix) + 1):
            prefix.append(value)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def enumerate_parking_functions(n: int) -> list[ParkingFunction]:
    """
    Parking functions of [n] in lexicographic order.

    Raises:
        ResourceLimit: above the ``parking_n`` guard rail.
    """
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    check_limit("parking_n", n)
    functions = [
        ParkingFunction(tuple(values))
        for prefix in _sorted_parking_prefixes(n)
        for values in multiset_permutations(list(prefix))
    ]
    functions.sort()
    logger.debug("%d parking functions of [%d]", len(functions), n)
    return functions


def area(a: ParkingFunction | Iterable[int]) -> int:
    return a.area if isinstance(a, ParkingFunction) else sum(a)


def support(a: ParkingFunction | Iterable[int]) -> frozenset[int]:
    values = a.values if isinstance(a, ParkingFunction) else tuple(a)
    return frozenset(index for index, value in enumerate(values, 1) if value)


def _probability(p: Fraction | str | int, open_interval: bool) -> Fraction:
    p = parse_fraction(p)
    inside = 0 < p < 1 if open_interval else 0 <= p <= 1
    if not inside:
        bounds = "(0, 1)" if open_interval else "[0, 1]"
        raise InvalidArgument(f"p must lie in {bounds}, got {format_fraction(p)}")
    return p


def expected_ao_formula(n: int, p: Fraction | str | int) -> Fraction:
    """E[#AO] of G(n, p) as q^C(n,2) Σ_Park (1/q)^Area p^|supp|, with q = 1 − p."""
    p = _probability(p, open_interval=True)
    q = 1 - p
    pairs = math.comb(n, 2)
    return sum(
        (q ** (pairs - a.area) * p ** len(a.support) for a in enumerate_parking_functions(n)),
        Fraction(0),
    )


def expected_ao_bruteforce(n: int, p: Fraction | str | int) -> Fraction:
    """Σ over every labelled graph on [n] of p^|E| q^(C(n,2)−|E|) · #AO(G)."""
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    check_limit("bruteforce_n", n)
    p = _probability(p, open_interval=False)
    q = 1 - p
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    total = Fraction(0)
    for size in range(len(pairs) + 1):
        weight = p**size * q ** (len(pairs) - size)
        if not weight:
            continue
        for edges in itertools.combinations(pairs, size):
            total += weight * count_acyclic_orientations(SimpleGraph.from_edges(n, edges))
    return total


def max_area_census(n: int) -> CheckReport:
    functions = enumerate_parking_functions(n)
    top = max(a.area for a in functions)
    attained = sum(1 for a in functions if a.area == top)
    report = CheckReport("parking function area")
    report.expect("count", (n + 1) ** (n - 1), len(functions))
    report.expect("max Area", math.comb(n, 2), top)
    report.expect("functions attaining max Area", math.factorial(n), attained)
    return report


def closed_form_check() -> CheckReport:
    """At n = 2 the expectation simplifies to 1 + p."""
    report = CheckReport("closed form n=2")
    for p in ORACLE_PROBABILITIES:
        report.expect(f"p={p}", 1 + parse_fraction(p), expected_ao_formula(2, p))
    return report


def expectation_report(n_max: int, probabilities: Iterable[str] = ORACLE_PROBABILITIES) -> CheckReport:
    report = CheckReport("expected acyclic orientations")
    for n in range(1, n_max + 1):
        for p in probabilities:
            report.expect(f"n={n}, p={p}", expected_ao_bruteforce(n, p), expected_ao_formula(n, p))
        report.extend(max_area_census(n), f"n={n}")
    report.extend(closed_form_check())
    return report
