"""
Cochains with group coefficients on a simplicial complex.

Values on edges and triangles are stored on sorted simplices, following the
order of :attr:`SimplicialComplex.edges` and :attr:`SimplicialComplex.triangles`.
Other orientations are derived: a 1-cochain takes the inverse on ``(j, i)`` and
a 2-cochain changes sign under odd vertex permutations.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Optional

from twistk.complexes.complex import Simplex, SimplicialComplex
from twistk.core.errors import InvalidCochain
from twistk.groups.abelian import AbelianGroup, Element
from twistk.groups.table import GroupTable

__all__ = ["GCochain1", "Cocycle1", "ACochain2", "is_cocycle", "first_cocycle_failure"]


@dataclass(frozen=True, eq=False)
class GCochain1:
    """A ``G``-valued function on the oriented edges, ``g_ji = g_ij^-1``.

    Attributes:
        complex: The base complex.
        group: Coefficient group.
        values: One element index per edge of ``complex.edges``.
    """

    complex: SimplicialComplex
    group: GroupTable
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.complex.edges):
            raise InvalidCochain(f"Cochain needs {len(self.complex.edges)} edge values, got {len(values)}")
        bad = [v for v in values if not 0 <= v < self.group.order]
        if bad:
            raise InvalidCochain(f"Edge values {bad} are not elements of a group of order {self.group.order}")

    @classmethod
    def from_mapping(
        cls,
        complex_: SimplicialComplex,
        group: GroupTable,
        mapping: Mapping[tuple[int, int], int],
        *,
        default: Optional[int] = None,
    ) -> GCochain1:
        """Build from ``{(i, j): element}``; reversed keys are inverted.

        Args:
            default: Value for edges missing from ``mapping``; when ``None``
                every edge must be given.
        """

        values: dict[Simplex, int] = {}
        for (i, j), g in mapping.items():
            if (min(i, j), max(i, j)) not in complex_.edge_index:
                raise InvalidCochain(f"({i}, {j}) is not an edge of the complex")
            if not 0 <= g < group.order:
                raise InvalidCochain(f"Edge ({i}, {j}) has value {g} outside the group")
            values[(i, j) if i < j else (j, i)] = g if i < j else group.inverses[g]
        missing = [e for e in complex_.edges if e not in values]
        if missing and default is None:
            raise InvalidCochain(f"Edges {[list(e) for e in missing]} have no value")
        return cls(complex_, group, tuple(values.get(e, default) for e in complex_.edges))  # type: ignore[misc]

    @classmethod
    def constant(cls, complex_: SimplicialComplex, group: GroupTable, element: Optional[int] = None) -> GCochain1:
        value = group.identity if element is None else element
        return cls(complex_, group, (value,) * len(complex_.edges))

    def __call__(self, i: int, j: int) -> int:
        if i < j:
            return self.values[self.complex.edge_index[(i, j)]]
        return self.group.inverses[self.values[self.complex.edge_index[(j, i)]]]

    def items(self) -> list[tuple[Simplex, int]]:
        return list(zip(self.complex.edges, self.values))

    def to_json(self) -> dict[str, int]:
        return {f"{i}-{j}": g for (i, j), g in self.items()}


def first_cocycle_failure(cochain: GCochain1) -> Optional[Simplex]:
    """Return the first triangle where ``g_ik != g_ij g_jk``, if any."""

    group = cochain.group
    for tri in cochain.complex.triangles:
        i, j, k = tri
        if cochain(i, k) != group.mult[cochain(i, j)][cochain(j, k)]:
            return tri
    return None


def is_cocycle(cochain: GCochain1) -> bool:
    """``g_ik = g_ij g_jk`` on every triangle ``i < j < k``."""

    return first_cocycle_failure(cochain) is None


@dataclass(frozen=True, eq=False)
class Cocycle1(GCochain1):
    """A 1-cochain satisfying the cocycle identity, checked at construction."""

    def __post_init__(self) -> None:
        super().__post_init__()
        failure = first_cocycle_failure(self)
        if failure is not None:
            raise InvalidCochain(f"Cocycle identity fails on triangle {list(failure)}")

    @classmethod
    def of(cls, cochain: GCochain1) -> Cocycle1:
        if isinstance(cochain, Cocycle1):
            return cochain
        return cls(cochain.complex, cochain.group, cochain.values)


def _sort_with_sign(vertices: Sequence[int]) -> tuple[Simplex, int]:
    items = list(vertices)
    sign = 1
    for a in range(len(items)):
        for b in range(len(items) - 1 - a):
            if items[b] > items[b + 1]:
                items[b], items[b + 1] = items[b + 1], items[b]
                sign = -sign
    return tuple(items), sign


@dataclass(frozen=True, eq=False)
class ACochain2:
    """An alternating ``A``-valued function on triangles, ``A`` abelian."""

    complex: SimplicialComplex
    group: AbelianGroup
    values: tuple[Element, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.complex.triangles):
            raise InvalidCochain(
                f"2-cochain needs {len(self.complex.triangles)} triangle values, got {len(self.values)}",
            )
        object.__setattr__(self, "values", tuple(self.group.reduce(v) for v in self.values))

    @classmethod
    def zero(cls, complex_: SimplicialComplex, group: AbelianGroup) -> ACochain2:
        return cls(complex_, group, (group.zero(),) * len(complex_.triangles))

    def __call__(self, i: int, j: int, k: int) -> Element:
        tri, sign = _sort_with_sign((i, j, k))
        value = self.values[self.complex.triangle_index[tri]]
        return value if sign > 0 else self.group.neg(value)

    def coboundary_values(self) -> list[Element]:
        """``(delta c)(ijkl) = c_jkl - c_ikl + c_ijl - c_ijk`` on each tetrahedron."""

        out = []
        for i, j, k, l in self.complex.tetrahedra:
            total = self.group.sub(self(j, k, l), self(i, k, l))
            total = self.group.add(total, self(i, j, l))
            out.append(self.group.sub(total, self(i, j, k)))
        return out

    def is_cocycle(self) -> bool:
        return all(self.group.is_zero(v) for v in self.coboundary_values())

    def to_json(self) -> dict[str, list[int]]:
        return {f"{i}-{j}-{k}": list(v) for (i, j, k), v in zip(self.complex.triangles, self.values)}
