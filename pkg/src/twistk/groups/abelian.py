"""
Finitely generated abelian groups in invariant-factor form.

An element of ``Z/m_1 x ... x Z/m_k x Z^f`` is an integer tuple whose
component ``i`` is reduced modulo ``m_i`` (free components are left alone).
:class:`Quotient` turns any presentation ``Z^n / <relations>`` into this form
through the Smith normal form and keeps the coordinate change both ways.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Optional

from typing_extensions import TypeAlias

from twistk.core.errors import ValidationError
from twistk.core.smith import smith_decomposition
from twistk.groups.table import GroupTable

__all__ = ["AbelianGroup", "AbelianHom", "Element", "Quotient"]

Element: TypeAlias = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/m_1 x ... x Z/m_k x Z^free_rank`` with ``2 <= m_1 | m_2 | ... | m_k``."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        factors = tuple(int(m) for m in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if any(m <= 1 for m in factors):
            raise ValidationError(f"Invariant factors must be at least 2, got {list(factors)}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValidationError(f"Invariant factors {list(factors)} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValidationError(f"Free rank must be non-negative, got {self.free_rank}")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> AbelianGroup:
        """Canonical form of ``Z/a_1 x Z/a_2 x ...``; ``0`` stands for ``Z``."""

        if any(a < 0 for a in orders):
            raise ValidationError(f"Cyclic orders must be non-negative, got {list(orders)}")
        return Quotient(len(orders), [[a if i == j else 0 for j in range(len(orders))] for i, a in enumerate(orders)]).group

    @classmethod
    def free(cls, rank: int) -> AbelianGroup:
        return cls((), rank)

    # -- structure --------------------------------------------------------

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-component modulus, ``0`` for free components."""

        return self.invariant_factors + (0,) * self.free_rank

    @property
    def rank(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        return prod(self.invariant_factors) if self.is_finite else None

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    # -- element arithmetic -----------------------------------------------

    def reduce(self, vec: Sequence[int]) -> Element:
        if len(vec) != self.rank:
            raise ValidationError(f"Element {list(vec)} has {len(vec)} components, group {self} needs {self.rank}")
        return tuple(int(x) % m if m else int(x) for x, m in zip(vec, self.moduli))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> Element:
        return self.reduce([-x for x in a])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.reduce([x - y for x, y in zip(a, b)])

    def scale(self, a: Sequence[int], k: int) -> Element:
        return self.reduce([k * x for x in a])

    def is_zero(self, a: Sequence[int]) -> bool:
        return not any(self.reduce(a))

    def generator(self, i: int) -> Element:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def _require_finite(self) -> None:
        if not self.is_finite:
            raise ValidationError(f"Group {self} is infinite")

    def elements(self) -> Iterator[Element]:
        self._require_finite()
        return itertools.product(*(range(m) for m in self.invariant_factors))

    def index_of(self, a: Sequence[int]) -> int:
        self._require_finite()
        index = 0
        for x, m in zip(self.reduce(a), self.invariant_factors):
            index = index * m + x
        return index

    def element_at(self, index: int) -> Element:
        self._require_finite()
        digits = []
        for m in reversed(self.invariant_factors):
            index, digit = divmod(index, m)
            digits.append(digit)
        return tuple(reversed(digits))

    @cached_property
    def table(self) -> GroupTable:
        """The group as a :class:`GroupTable`, elements in :meth:`elements` order."""

        self._require_finite()
        elems = list(self.elements())
        mult = tuple(tuple(self.index_of(self.add(a, b)) for b in elems) for a in elems)
        inverses = tuple(self.index_of(self.neg(a)) for a in elems)
        return GroupTable(mult=mult, identity=0, inverses=inverses, labels=tuple(str(list(a)) for a in elems))

    def __str__(self) -> str:
        parts = [f"Z{m}" for m in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return "x".join(parts) if parts else "0"

    def to_json(self) -> dict[str, object]:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank, "name": str(self)}


@dataclass(frozen=True)
class AbelianHom:
    """``x -> x M`` between abelian groups; ``M`` has one row per source component."""

    source: AbelianGroup
    target: AbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.source.rank or any(len(r) != self.target.rank for r in rows):
            raise ValidationError(f"Matrix shape does not match {self.source} -> {self.target}")
        for m, row in zip(self.source.moduli, rows):
            if m and not self.target.is_zero([m * x for x in row]):
                raise ValidationError(f"Map {self.source} -> {self.target} is not well defined")

    def __call__(self, a: Sequence[int]) -> Element:
        out = [0] * self.target.rank
        for x, row in zip(a, self.matrix):
            if x:
                for j, y in enumerate(row):
                    out[j] += x * y
        return self.target.reduce(out)

    def kernel(self) -> tuple[Element, ...]:
        return tuple(a for a in self.source.elements() if self.target.is_zero(self(a)))

    def image(self) -> frozenset[Element]:
        return frozenset(self(a) for a in self.source.elements())

    def is_injective(self) -> bool:
        return len(self.kernel()) == 1

    def is_surjective(self) -> bool:
        self.target._require_finite()
        return len(self.image()) == self.target.order


class Quotient:
    """The group ``Z^n / rowspace(relations)`` with coordinate maps.

    With ``U R V = D`` the substitution ``y = x V`` diagonalizes the relations.
    Components with ``d_i = 1`` are dropped; torsion components come first,
    then free ones.
    """

    def __init__(self, n: int, relations: Sequence[Sequence[int]]):
        rows = [list(r) for r in relations if any(r)]
        if any(len(r) != n for r in rows):
            raise ValidationError(f"Relations must have {n} entries")
        snf = smith_decomposition(rows, ncols=n)
        moduli = [snf.diagonal[i] if i < len(snf.diagonal) else 0 for i in range(n)]
        torsion = [i for i in range(n) if moduli[i] > 1]
        free = [i for i in range(n) if moduli[i] == 0]
        self.n = n
        self.kept = tuple(torsion + free)
        self.group = AbelianGroup(tuple(moduli[i] for i in torsion), len(free))
        self._right = snf.right
        self._right_inv = snf.right_inv

    def project(self, x: Sequence[int]) -> Element:
        """Class of ``x in Z^n`` in :attr:`group`."""

        if len(x) != self.n:
            raise ValidationError(f"Vector {list(x)} must have {self.n} entries")
        y = []
        for col in self.kept:
            total = 0
            for xi, row in zip(x, self._right):
                if xi:
                    total += xi * row[col]
            y.append(total)
        return self.group.reduce(y)

    def lift(self, a: Sequence[int]) -> tuple[int, ...]:
        """A vector of ``Z^n`` projecting to ``a``."""

        out = [0] * self.n
        for coeff, col in zip(self.group.reduce(a), self.kept):
            if coeff:
                for j, v in enumerate(self._right_inv[col]):
                    out[j] += coeff * v
        return tuple(out)
