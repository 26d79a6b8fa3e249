from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from functools import reduce

from aoforge.apps.graphs.services import enumerate_acyclic_orientations, require_connected
from aoforge.apps.graphs.structures import SimpleGraph
from aoforge.apps.ideals.structures import Monomial, MonomialIdeal
from aoforge.core.checks import CheckReport
from aoforge.core.exceptions import ConsistencyError, InvalidArgument
from aoforge.core.guards import check_limit

logger = logging.getLogger(__name__)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def minimize(gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    """
    Drop every generator divisible by another one.

    ``n`` defaults to the length of the generators; with no generators either, the result is the zero
    ideal in zero variables.
    """
    unique = sorted({tuple(generator) for generator in gens}, key=lambda generator: (sum(generator), generator))
    if n is None:
        n = len(unique[0]) if unique else 0
    minimal: list[Monomial] = []
    for generator in unique:
        if not any(divides(kept, generator) for kept in minimal):
            minimal.append(generator)
    return MonomialIdeal(n, tuple(sorted(minimal)))


def contains(ideal: MonomialIdeal, monomial: Sequence[int]) -> bool:
    if len(monomial) != ideal.n:
        raise InvalidArgument(f"monomial has {len(monomial)} exponents, ideal has {ideal.n} variables")
    return tuple(monomial) in ideal


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ((0,) * n,))


def power_ideal(a: Sequence[int]) -> MonomialIdeal:
    """The irreducible ideal 𝔪^a = ⟨x_i^{a_i} : a_i > 0⟩."""
    n = len(a)
    gens = [tuple(power if index == i else 0 for index in range(n)) for i, power in enumerate(a) if power > 0]
    return minimize(gens, n)


def intersect(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    """Generated by the pairwise lcm of generators, then minimized."""
    if first.n != second.n:
        raise InvalidArgument("ideals live in different polynomial rings")
    return minimize((lcm(a, b) for a in first.gens for b in second.gens), first.n)


def intersect_all(ideals: Iterable[MonomialIdeal], n: int) -> MonomialIdeal:
    return reduce(intersect, ideals, unit_ideal(n))


def ideal_sum(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    if first.n != second.n:
        raise InvalidArgument("ideals live in different polynomial rings")
    return minimize(first.gens + second.gens, first.n)


def alexander_dual(ideal: MonomialIdeal, a: Sequence[int]) -> MonomialIdeal:
    """I^[a] = ⋂_b 𝔪^{a∖b} over minimal generators x^b, with (a∖b)_i = a_i + 1 − b_i when b_i ≥ 1."""
    a = tuple(a)
    if len(a) != ideal.n:
        raise InvalidArgument(f"dual exponent has {len(a)} entries, ideal has {ideal.n} variables")
    components = []
    for generator in ideal.gens:
        if not divides(generator, a):
            raise InvalidArgument(f"generator {list(generator)} does not divide x^{list(a)}")
        components.append(power_ideal([x + 1 - b if b >= 1 else 0 for x, b in zip(a, generator)]))
    return intersect_all(components, ideal.n)


def ideal_a(graph: SimpleGraph) -> MonomialIdeal:
    """A_G, generated by x^{indeg(O)+1} over acyclic orientations."""
    require_connected(graph)
    orientations = enumerate_acyclic_orientations(graph)
    gens = [tuple(d + 1 for d in orientation.indegree_vector) for orientation in orientations]
    ideal = minimize(gens, graph.n)
    if len(ideal) != len(orientations):
        raise ConsistencyError(f"A_G of {graph} is not minimally generated by its {len(orientations)} generators")
    return ideal


def connected_subsets(graph: SimpleGraph) -> list[frozenset[int]]:
    subsets = []
    vertices = graph.vertices
    for size in range(1, graph.n + 1):
        for members in itertools.combinations(vertices, size):
            sigma = frozenset(members)
            if graph.is_connected_subset(sigma):
                subsets.append(sigma)
    return subsets


def tree_generator(graph: SimpleGraph, sigma: frozenset[int]) -> Monomial:
    """x^{degout_σ + 1_σ}"""
    return tuple(graph.degout(sigma, vertex) + 1 if vertex in sigma else 0 for vertex in graph.vertices)


def ideal_t(graph: SimpleGraph) -> MonomialIdeal:
    """T_G, generated by x^{degout_σ + 1_σ} over connected σ."""
    require_connected(graph)
    subsets = connected_subsets(graph)
    ideal = minimize((tree_generator(graph, sigma) for sigma in subsets), graph.n)
    if len(ideal) != len(subsets):
        raise ConsistencyError(f"T_G of {graph} is not minimally generated by its {len(subsets)} generators")
    return ideal


def artinianized_a(graph: SimpleGraph) -> MonomialIdeal:
    """A_G + 𝔪^{deg+2}"""
    return ideal_sum(ideal_a(graph), power_ideal([d + 2 for d in graph.degree_vector]))


def irreducible_decomposition_check(graph: SimpleGraph) -> CheckReport:
    """A_G = ⋂_σ 𝔪^{degin_σ + 1_σ} over connected σ, and T_G = ⋂_O 𝔪^{outdeg(O)+1} over acyclic O."""
    n = graph.n
    a_ideal, t_ideal = ideal_a(graph), ideal_t(graph)

    # degin_σ(i) = |N(i) ∩ σ|
    a_components = [
        power_ideal([len(graph.neighbors(v) & sigma) + 1 if v in sigma else 0 for v in graph.vertices])
        for sigma in connected_subsets(graph)
    ]
    t_components = [
        power_ideal([d + 1 for d in orientation.outdegree_vector])
        for orientation in enumerate_acyclic_orientations(graph)
    ]

    report = CheckReport("irreducible decomposition")
    report.expect("A_G = ⋂ 𝔪^{degin_σ+1_σ}", a_ideal.gens, intersect_all(a_components, n).gens)
    report.expect("T_G = ⋂ 𝔪^{outdeg(O)+1}", t_ideal.gens, intersect_all(t_components, n).gens)
    return report


def duality_check(graph: SimpleGraph) -> CheckReport:
    """A_G and T_G are Alexander dual with respect to deg+1, both ways."""
    a = [d + 1 for d in graph.degree_vector]
    a_ideal, t_ideal = ideal_a(graph), ideal_t(graph)
    dual_of_a = alexander_dual(a_ideal, a)
    dual_of_t = alexander_dual(t_ideal, a)

    report = CheckReport("alexander duality")
    report.expect("dual(A_G, deg+1) = T_G", t_ideal.gens, dual_of_a.gens)
    report.expect("dual(T_G, deg+1) = A_G", a_ideal.gens, dual_of_t.gens)
    report.expect("dual(dual(A_G)) = A_G", a_ideal.gens, alexander_dual(dual_of_a, a).gens)
    report.expect("dual(dual(T_G)) = T_G", t_ideal.gens, alexander_dual(dual_of_t, a).gens)
    report.details.update({"A": a_ideal, "T": t_ideal, "a": a})
    return report


def _verify_box(ideal: MonomialIdeal, bound: Sequence[int]) -> None:
    for index, power in enumerate(bound):
        corner = tuple(power + 1 if i == index else 0 for i in range(len(bound)))
        if corner not in ideal:
            raise InvalidArgument(
                f"bound {list(bound)} misses standard monomials: x{index + 1}^{power + 1} is not in the ideal"
            )


def standard_monomials(ideal: MonomialIdeal, bound: Sequence[int]) -> list[Monomial]:
    """
    Monomials ``b <= bound`` outside the ideal, lexicographically.

    Raises:
        InvalidArgument: when some x_i^{bound_i + 1} lies outside the ideal, so the box would miss
            standard monomials.
    """
    if len(bound) != ideal.n:
        raise InvalidArgument(f"bound has {len(bound)} entries, ideal has {ideal.n} variables")
    _verify_box(ideal, bound)
    check_limit("staircase_box", math.prod(power + 1 for power in bound), what="box size")
    monomials = [b for b in itertools.product(*(range(power + 1) for power in bound)) if b not in ideal]
    logger.debug("%d standard monomials of %s in box %s", len(monomials), ideal, list(bound))
    return monomials


def maximal_standard_monomials(ideal: MonomialIdeal, bound: Sequence[int]) -> list[Monomial]:
    """Standard monomials b with x^{b+e_i} in the ideal for every i."""
    maximal = []
    for b in standard_monomials(ideal, bound):
        if all(tuple(x + 1 if i == index else x for i, x in enumerate(b)) in ideal for index in range(ideal.n)):
            maximal.append(b)
    return maximal


def ideal_census(graph: SimpleGraph) -> dict:
    t_ideal = ideal_t(graph)
    standard = standard_monomials(t_ideal, graph.degree_vector)
    return {
        "A": ideal_a(graph),
        "T": t_ideal,
        "artinianized_A": artinianized_a(graph),
        "standard_monomials_T": [list(b) for b in standard],
        "maximal_standard_monomials_T": [list(b) for b in maximal_standard_monomials(t_ideal, graph.degree_vector)],
    }
