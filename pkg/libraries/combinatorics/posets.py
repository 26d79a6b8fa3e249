"""
Finite posets given by a relation on ``range(size)``.

Elements are integers ``0..size-1`` and ``relations`` are pairs ``(a, b)`` meaning ``a < b``; the
relation does not need to be transitively closed. Subsets are bitmasks.
"""

from collections.abc import Iterable, Iterator


def predecessor_masks(size: int, relations: Iterable[tuple[int, int]]) -> list[int]:
    masks = [0] * size
    for low, high in relations:
        masks[high] |= 1 << low
    return masks


def count_linear_extensions(size: int, relations: Iterable[tuple[int, int]]) -> int:
    """
    Number of orderings of ``range(size)`` compatible with ``relations``.

    Memoized down-set recursion: ``ways[S]`` counts the ways to list the down-set ``S`` first.
    """
    predecessors = predecessor_masks(size, relations)
    full = (1 << size) - 1
    ways = {0: 1}
    frontier = [0]
    for _ in range(size):
        next_ways: dict[int, int] = {}
        for placed in frontier:
            count = ways[placed]
            for element in range(size):
                bit = 1 << element
                if placed & bit or predecessors[element] & ~placed:
                    continue
                grown = placed | bit
                next_ways[grown] = next_ways.get(grown, 0) + count
        ways = next_ways
        frontier = list(next_ways)
    return ways.get(full, 0)


def down_sets(size: int, relations: Iterable[tuple[int, int]]) -> Iterator[int]:
    """All down-closed subsets (order ideals) as bitmasks, increasing."""
    predecessors = predecessor_masks(size, relations)
    for mask in range(1 << size):
        if all(not (mask >> element) & 1 or not predecessors[element] & ~mask for element in range(size)):
            yield mask
