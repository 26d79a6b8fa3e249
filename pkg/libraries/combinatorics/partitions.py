from collections.abc import Iterator, Sequence

Block = frozenset[int]
SetPartition = tuple[Block, ...]


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """
    Yield every restricted growth string of length ``n`` in lexicographic order.

    A string ``a`` is restricted growth when ``a[0] == 0`` and ``a[i] <= 1 + max(a[:i])``;
    such strings are in bijection with the set partitions of an ``n`` element set.
    """
    if n == 0:
        yield ()
        return

    word = [0] * n
    maxima = [0] * n

    while True:
        yield tuple(word)

        # Find the rightmost position that can still be incremented.
        i = n - 1
        while i > 0 and word[i] > maxima[i - 1]:
            i -= 1
        if i == 0:
            return
        word[i] += 1
        maxima[i] = max(maxima[i - 1], word[i])
        for j in range(i + 1, n):
            word[j] = 0
            maxima[j] = maxima[i]


def set_partitions(elements: Sequence[int]) -> Iterator[SetPartition]:
    """Set partitions of ``elements``, blocks sorted by their minimum element."""
    for word in restricted_growth_strings(len(elements)):
        blocks: list[set[int]] = [set() for _ in range(max(word, default=-1) + 1)]
        for element, block in zip(elements, word):
            blocks[block].add(element)
        yield canonical_partition(blocks)


def canonical_partition(blocks: Sequence[set[int] | frozenset[int]]) -> SetPartition:
    return tuple(sorted((frozenset(block) for block in blocks if block), key=min))


def is_noncrossing(blocks: Sequence[frozenset[int]]) -> bool:
    """
    True iff no ``a < b < c < d`` have ``a, c`` in one block and ``b, d`` in another.

    Two blocks cross exactly when, after sorting, some consecutive pair ``x < y`` of one block
    strictly separates elements of the other.
    """
    sorted_blocks = [sorted(block) for block in blocks]
    for i, first in enumerate(sorted_blocks):
        for second in sorted_blocks[i + 1:]:
            if _blocks_cross(first, second) or _blocks_cross(second, first):
                return False
    return True


def _blocks_cross(first: list[int], second: list[int]) -> bool:
    for low, high in zip(first, first[1:]):
        inside = any(low < element < high for element in second)
        outside = any(element < low or element > high for element in second)
        if inside and outside:
            return True
    return False


def noncrossing_partitions(elements: Sequence[int]) -> Iterator[SetPartition]:
    """Non-crossing set partitions of the totally ordered ``elements`` (given in increasing order)."""
    for partition in set_partitions(elements):
        if is_noncrossing(partition):
            yield partition


def block_index(partition: SetPartition, elements: Sequence[int]) -> tuple[int, ...]:
    """Block-index array: position ``i`` holds the index of the block containing ``elements[i]``."""
    lookup = {element: index for index, block in enumerate(partition) for element in block}
    return tuple(lookup[element] for element in elements)
