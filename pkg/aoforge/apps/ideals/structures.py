from __future__ import annotations

from dataclasses import dataclass

from aoforge.core.exceptions import InvalidArgument

Monomial = tuple[int, ...]


def render_monomial(exponents: Monomial) -> str:
    factors = [f"x{index}" if power == 1 else f"x{index}^{power}" for index, power in enumerate(exponents, 1) if power]
    return "*".join(factors) or "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in ``n`` variables, stored by its minimal generators in lexicographic order."""

    n: int
    gens: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        for generator in self.gens:
            if len(generator) != self.n:
                raise InvalidArgument(f"generator {generator} does not have {self.n} exponents")
            if any(power < 0 for power in generator):
                raise InvalidArgument(f"generator {generator} has a negative exponent")

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def __contains__(self, monomial: object) -> bool:
        if not isinstance(monomial, tuple):
            return False
        return any(all(g <= m for g, m in zip(generator, monomial)) for generator in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def as_dict(self) -> dict:
        return {"n": self.n, "gens": [list(generator) for generator in self.gens]}

    def __str__(self) -> str:
        return "<" + ", ".join(render_monomial(generator) for generator in self.gens) + ">"
