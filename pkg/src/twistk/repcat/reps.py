"""Unitary representations of finite groups with exact cyclotomic matrices."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Optional

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import InvalidRepresentation, NotUnitary
from twistk.core.matrices import Matrix
from twistk.groups.builders import closure
from twistk.groups.table import GroupHom, GroupTable

__all__ = ["UnitaryRep"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """A homomorphism ``G -> U(d)`` given on every element.

    Attributes:
        group: The finite group.
        d: Matrix size.
        matrices: ``matrices[g]`` is the ``d x d`` matrix of element ``g``.
        conductor: Field of all entries, at least the exponent of the group.
    """

    group: GroupTable
    d: int
    matrices: tuple[Matrix, ...]
    conductor: int

    @classmethod
    def from_matrices(
        cls,
        group: GroupTable,
        matrices: Sequence[Matrix],
        *,
        conductor: int = 1,
    ) -> UnitaryRep:
        """Validate multiplicativity and unitarity on the whole group.

        The working conductor is the least common multiple of ``conductor``,
        the entries' conductors and the exponent of ``group``.

        Raises:
            InvalidRepresentation: If sizes or multiplicativity are wrong.
            NotUnitary: If some ``M(a) M(a)*`` is not the identity.
        """

        if len(matrices) != group.order:
            raise InvalidRepresentation(f"Need {group.order} matrices, got {len(matrices)}")
        d = matrices[0].nrows
        field = lcm(conductor, group.exponent, *(m.conductor for m in matrices))
        lifted = tuple(m.lift(field) for m in matrices)
        for a, m in enumerate(lifted):
            if m.shape != (d, d):
                raise InvalidRepresentation(f"Matrix of element {a} has shape {m.shape}, expected {(d, d)}")
            if not m.is_unitary():
                raise NotUnitary(f"Matrix of element {group.labels[a]!r} is not unitary")
        if not lifted[group.identity].is_identity():
            raise InvalidRepresentation("Identity element is not represented by the identity matrix")
        for a in group.elements:
            for b in group.elements:
                if lifted[a] @ lifted[b] != lifted[group.mult[a][b]]:
                    raise InvalidRepresentation(
                        f"M({group.labels[a]}) M({group.labels[b]}) != M({group.labels[group.mult[a][b]]})",
                    )
        logger.debug("validated %d-dimensional representation of a group of order %d", d, group.order)
        return cls(group=group, d=d, matrices=lifted, conductor=field)

    @classmethod
    def from_generators(
        cls,
        generators: Sequence[Matrix],
        *,
        names: Optional[Sequence[str]] = None,
        conductor: int = 1,
        max_order: Optional[int] = None,
    ) -> UnitaryRep:
        """The matrix group generated by unitary ``generators`` with its tautological representation."""

        if not generators:
            raise InvalidRepresentation("At least one generator is required")
        field = lcm(conductor, *(g.conductor for g in generators))
        gens = [g.lift(field) for g in generators]
        for k, g in enumerate(gens):
            if g.shape != gens[0].shape:
                raise InvalidRepresentation(f"Generator {k} has shape {g.shape}, expected {gens[0].shape}")
            if not g.is_unitary():
                raise NotUnitary(f"Generator {k} is not unitary")
        table, elements = closure(
            gens,
            Matrix.__matmul__,
            Matrix.identity(gens[0].nrows, field),
            names=names,
            max_order=max_order,
        )
        return cls.from_matrices(table, elements, conductor=field)

    # -- queries ----------------------------------------------------------

    def __call__(self, g: int) -> Matrix:
        return self.matrices[g]

    def tensor_power(self, g: int, r: int) -> Matrix:
        return self.matrices[g].tensor_power(r)

    @cached_property
    def character(self) -> tuple[Cyclotomic, ...]:
        return tuple(m.trace() for m in self.matrices)

    def is_faithful(self) -> bool:
        return len(set(self.matrices)) == self.group.order

    def determinants(self) -> tuple[Cyclotomic, ...]:
        return tuple(m.determinant() for m in self.matrices)

    def in_special_unitary(self) -> bool:
        return all(det == 1 for det in self.determinants())

    def pullback(self, hom: GroupHom) -> UnitaryRep:
        """The representation ``M o hom`` of ``hom.source``."""

        if hom.target is not self.group:
            raise InvalidRepresentation("Homomorphism does not land in the represented group")
        return UnitaryRep(
            group=hom.source,
            d=self.d,
            matrices=tuple(self.matrices[hom(x)] for x in hom.source.elements),
            conductor=self.conductor,
        )

    def restrict(self, subgroup: Sequence[int]) -> tuple[UnitaryRep, tuple[int, ...]]:
        """Restriction to a subgroup, with the local-to-ambient index map."""

        table, members = self.group.subgroup_table(subgroup)
        rep = UnitaryRep(table, self.d, tuple(self.matrices[x] for x in members), self.conductor)
        return rep, members

    def normalizes(self, u: int, subgroup: Sequence[int]) -> bool:
        members = frozenset(subgroup)
        return frozenset(self.group.conj(u, x) for x in members) == members

    def to_json(self) -> dict[str, object]:
        return {
            "d": self.d,
            "conductor": self.conductor,
            "labels": list(self.group.labels),
            "matrices": [m.to_json() for m in self.matrices],
        }

    def summary(self) -> dict[str, object]:
        return {
            "d": self.d,
            "order": self.group.order,
            "conductor": self.conductor,
            "faithful": self.is_faithful(),
            "special_unitary": self.in_special_unitary(),
            "character": [c.to_json() for c in self.character],
        }
