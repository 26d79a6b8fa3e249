from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable

from aoforge.apps.ideals.services import minimize
from aoforge.apps.ideals.structures import MonomialIdeal
from aoforge.apps.percolation.structures import PercolationInstance
from aoforge.core.checks import CheckReport
from aoforge.core.exceptions import InvalidArgument
from aoforge.core.guards import check_limit
from aoforge.core.utils import sorted_sets

logger = logging.getLogger(__name__)


def _seed(inst: PercolationInstance, infected: Iterable[int]) -> frozenset[int]:
    infected = frozenset(infected)
    outside = infected - set(inst.graph.vertices)
    if outside:
        raise InvalidArgument(f"vertices {sorted(outside)} are not in the graph")
    return infected


def closure(inst: PercolationInstance, infected: Iterable[int]) -> frozenset[int]:
    """cl(A): keep infecting vertices with at least k infected neighbours."""
    result = set(_seed(inst, infected))
    hits = dict.fromkeys(inst.graph.vertices, 0)
    queue = deque(result)
    while queue:
        vertex = queue.popleft()
        for neighbor in inst.graph.neighbors(vertex):
            if neighbor in result:
                continue
            hits[neighbor] += 1
            if hits[neighbor] >= inst.k:
                result.add(neighbor)
                queue.append(neighbor)
    return frozenset(result)


def closure_rounds(inst: PercolationInstance, infected: Iterable[int]) -> list[frozenset[int]]:
    """A_0 ⊆ A_1 ⊆ … with A_t = A_{t−1} ∪ {i : |N(i) ∩ A_{t−1}| ≥ k}, up to the fixed point."""
    rounds = [_seed(inst, infected)]
    while True:
        current = rounds[-1]
        grown = current | {
            vertex for vertex in inst.graph.vertices if len(inst.graph.neighbors(vertex) & current) >= inst.k
        }
        if grown == current:
            return rounds
        rounds.append(frozenset(grown))


def percolates(inst: PercolationInstance, infected: Iterable[int]) -> bool:
    return len(closure(inst, infected)) == inst.n


def _ordered(inst: PercolationInstance, masks: Iterable[int]) -> list[frozenset[int]]:
    return [frozenset(members) for members in sorted_sets(inst.members(mask) for mask in masks)]


def _generator_masks(inst: PercolationInstance) -> list[int]:
    check_limit("percolation_n", inst.n)
    neighbors = inst.neighbor_masks
    full = inst.full_mask
    masks = []
    for sigma in range(1, full + 1):
        outside = full & ~sigma
        if all(
            (neighbors[index] & outside).bit_count() < inst.k for index in range(inst.n) if (sigma >> index) & 1
        ):
            masks.append(sigma)
    return masks


def generators_c(inst: PercolationInstance) -> list[frozenset[int]]:
    """C(G, k): nonempty σ in which every vertex has fewer than k neighbours outside σ."""
    return _ordered(inst, _generator_masks(inst))


def percolation_ideal(inst: PercolationInstance) -> MonomialIdeal:
    """B(G, k), generated by the square-free monomials x^σ over σ ∈ C(G, k)."""
    gens = (tuple(1 if vertex in sigma else 0 for vertex in inst.graph.vertices) for sigma in generators_c(inst))
    return minimize(gens, inst.n)


def _minimal_masks(inst: PercolationInstance) -> list[int]:
    ideal = percolation_ideal(inst)
    return [sum(1 << index for index, power in enumerate(generator) if power) for generator in ideal.gens]


def _percolating_masks(inst: PercolationInstance) -> list[int]:
    """A percolates iff x^(V∖A) is a standard monomial of B: V∖A contains no generator support."""
    gens = _minimal_masks(inst)
    full = inst.full_mask
    return [mask for mask in range(full + 1) if not any(gen & (full & ~mask) == gen for gen in gens)]


def percolating_sets(inst: PercolationInstance) -> list[frozenset[int]]:
    return _ordered(inst, _percolating_masks(inst))


def percolating_sets_bruteforce(inst: PercolationInstance) -> list[frozenset[int]]:
    check_limit("percolation_n", inst.n)
    sets = [
        frozenset(members)
        for size in range(inst.n + 1)
        for members in itertools.combinations(inst.graph.vertices, size)
        if percolates(inst, members)
    ]
    return [frozenset(members) for members in sorted_sets(sets)]


def minimal_percolating_size(inst: PercolationInstance) -> int:
    """Smallest |A| with A percolating, searched by size through the ideal criterion."""
    gens = _minimal_masks(inst)
    full = inst.full_mask
    for size in range(inst.n + 1):
        for members in itertools.combinations(range(inst.n), size):
            complement = full & ~sum(1 << index for index in members)
            if not any(gen & complement == gen for gen in gens):
                logger.debug("%s: minimal percolating size %d", inst, size)
                return size
    return inst.n


def percolation_check(inst: PercolationInstance) -> CheckReport:
    """The ideal description of percolating sets against direct closure over all subsets."""
    by_ideal = percolating_sets(inst)
    by_closure = percolating_sets_bruteforce(inst)
    percolating = set(by_ideal)
    minimal = set(_minimal_masks(inst))
    report = CheckReport(f"percolation k={inst.k}")
    report.expect("percolating sets", sorted_sets(by_closure), sorted_sets(by_ideal))
    report.check(
        "supersets of percolating sets percolate",
        all(s | {v} in percolating for s in by_ideal for v in inst.graph.vertices),
    )
    closures = [(members, closure(inst, members)) for members in map(inst.members, range(1 << inst.n))]
    report.check(
        "closure is extensive and idempotent",
        all(members <= closed and closure(inst, closed) == closed for members, closed in closures),
    )
    report.details.update(
        {
            "k": inst.k,
            "minimal_generators": sorted_sets(inst.members(mask) for mask in minimal),
            "minimal_size": minimal_percolating_size(inst),
        }
    )
    return report
