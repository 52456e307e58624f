from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Union

Coefficient = Union[int, Fraction]


class LinearCombination(dict):
    """Finitely supported map from generators to exact coefficients.

    Zero coefficients are never stored.
    """

    def add(self, key: Hashable, coeff: Coefficient) -> None:
        if not coeff:
            return
        c = self.get(key, 0) + coeff
        if c:
            self[key] = c
        else:
            del self[key]

    def add_all(self, items: Iterable[tuple[Hashable, Coefficient]], scale: Coefficient = 1) -> None:
        for key, c in items:
            self.add(key, scale * c)

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        out = LinearCombination(self)
        out.add_all(other.items())
        return out

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        out = LinearCombination(self)
        out.add_all(other.items(), -1)
        return out

    def __neg__(self) -> "LinearCombination":
        return LinearCombination({k: -c for k, c in self.items()})

    def scaled(self, factor: Coefficient) -> "LinearCombination":
        if not factor:
            return LinearCombination()
        return LinearCombination({k: factor * c for k, c in self.items()})

    def is_zero(self) -> bool:
        return not self

    def sorted_items(self) -> list[tuple[Hashable, Coefficient]]:
        return sorted(self.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"{c}*[{g.encode()}]" for g, c in self.sorted_items())
