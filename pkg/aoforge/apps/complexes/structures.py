from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from aoforge.apps.graphs.structures import PAO, SimpleGraph
from aoforge.core.constants import ComplexKind

Label = tuple[int, ...]


@dataclass(frozen=True)
class Cell:
    """
    One cell of an abstract labelled cell complex.

    Z cells carry a PAO of G. Y and X pair cells carry ``sigma`` and a PAO of G[σ]; Y subset cells
    carry ``subset`` only. ``ideals`` is the order ideal family of the PAO as vertex bitmasks.
    """

    id: str
    dim: int
    label: Label
    pao: PAO | None = None
    sigma: frozenset[int] | None = None
    subset: frozenset[int] | None = None
    ideals: frozenset[int] = frozenset()

    @property
    def is_pair(self) -> bool:
        return self.sigma is not None

    @property
    def payload(self) -> dict:
        if self.subset is not None:
            return {"subset": sorted(self.subset)}
        payload = self.pao.as_dict()
        if self.sigma is not None:
            payload["sigma"] = sorted(self.sigma)
        return payload

    def as_dict(self) -> dict:
        return {"id": self.id, "dim": self.dim, "payload": self.payload, "label": list(self.label)}


@dataclass(frozen=True)
class CellComplex:
    """
    Cells plus their face order, stored as the full transitive relation.

    ``faces[j]`` holds the indices of every cell strictly below ``cells[j]``.
    """

    kind: ComplexKind
    graph: SimpleGraph
    cells: tuple[Cell, ...]
    faces: tuple[frozenset[int], ...]

    def below(self, lower: int, upper: int) -> bool:
        return lower in self.faces[upper]

    @property
    def order(self) -> frozenset[tuple[int, int]]:
        return frozenset((lower, upper) for upper, lowers in enumerate(self.faces) for lower in lowers)

    @cached_property
    def zero_cells(self) -> tuple[int, ...]:
        return tuple(index for index, cell in enumerate(self.cells) if cell.dim == 0)

    def vertices_of(self, index: int) -> list[int]:
        """0-cells lying in the closure of ``cells[index]``."""
        if self.cells[index].dim == 0:
            return [index]
        return [lower for lower in self.faces[index] if self.cells[lower].dim == 0]

    @cached_property
    def covers(self) -> tuple[frozenset[int], ...]:
        """``covers[j]``: cells covered by ``cells[j]`` in the Hasse diagram."""
        result = []
        for lowers in self.faces:
            shadowed = set()
            for lower in lowers:
                shadowed |= self.faces[lower]
            result.append(frozenset(lowers - shadowed))
        return tuple(result)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        counts = Counter(cell.dim for cell in self.cells)
        return tuple(counts.get(dim, 0) for dim in range(max(counts, default=-1) + 1))

    def __len__(self) -> int:
        return len(self.cells)
