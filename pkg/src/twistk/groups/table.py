"""
Finite groups given by multiplication tables.

Elements are the indices ``0 .. order-1``. Everything else in twistk
(extensions, cocycles, representations) refers to group elements by index.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Optional

from twistk.core.errors import GroupTooLarge, InvalidGroupTable, NotASubgroup, NotNormal, ValidationError
from twistk.core.settings import DEFAULT_SETTINGS

__all__ = ["GroupTable", "GroupHom", "normalizer_in_ambient"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group by its Cayley table.

    Attributes:
        mult: ``mult[a][b]`` is the index of ``a * b``.
        identity: Index of the identity element.
        inverses: ``inverses[a]`` is the index of ``a^-1``.
        labels: Display names, one per element.
    """

    mult: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    labels: tuple[str, ...]

    @classmethod
    def from_table(
        cls,
        mult: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        *,
        max_order: Optional[int] = None,
    ) -> GroupTable:
        """Validate a multiplication table and derive identity and inverses.

        Args:
            mult: Square table of element indices.
            labels: Optional element names; defaults to ``"0", "1", ...``.
            max_order: Largest accepted order; defaults to the configured cap.

        Raises:
            GroupTooLarge: If the order exceeds ``max_order``.
            InvalidGroupTable: If any group axiom fails.
        """

        n = len(mult)
        cap = DEFAULT_SETTINGS.max_group_order if max_order is None else max_order
        if n == 0:
            raise InvalidGroupTable("A group needs at least one element")
        if n > cap:
            raise GroupTooLarge(f"Group order {n} exceeds the cap {cap}")
        table = tuple(tuple(int(x) for x in row) for row in mult)
        _check_latin_square(table)
        identity, inverses = _identity_and_inverses(table)
        _check_associative(table)

        if labels is None:
            names = tuple(str(i) for i in range(n))
        else:
            names = tuple(str(x) for x in labels)
            if len(names) != n:
                raise InvalidGroupTable(f"Expected {n} labels, got {len(names)}")
        logger.debug("validated group table of order %d", n)
        return cls(mult=table, identity=identity, inverses=tuple(inverses), labels=names)

    # -- element arithmetic -----------------------------------------------

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def elements(self) -> range:
        return range(len(self.mult))

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def product(self, items: Iterable[int]) -> int:
        result = self.identity
        for x in items:
            result = self.mult[result][x]
        return result

    def conj(self, u: int, x: int) -> int:
        """``u x u^-1``."""

        return self.mult[self.mult[u][x]][self.inverses[u]]

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``."""

        return self.product((a, b, self.inverses[a], self.inverses[b]))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        result = self.identity
        for _ in range(k):
            result = self.mult[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult[x][a]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        result = 1
        for a in self.elements:
            result = lcm(result, self.element_order(a))
        return result

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise ValidationError(f"No element labelled {label!r}") from exc

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.mult[a][b] == self.mult[b][a] for a in self.elements for b in range(a))

    # -- subgroups --------------------------------------------------------

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        members = set(subset)
        if self.identity not in members:
            return False
        return all(self.mult[a][b] in members for a in members for b in members)

    def check_subgroup(self, subset: Iterable[int]) -> tuple[int, ...]:
        """Return the sorted members or raise :class:`NotASubgroup`."""

        members = sorted(set(subset))
        bad = [x for x in members if not 0 <= x < self.order]
        if bad:
            raise NotASubgroup(f"Elements {bad} are outside 0..{self.order - 1}")
        if not self.is_subgroup(members):
            raise NotASubgroup(f"{members} is not closed under multiplication or lacks the identity")
        return tuple(members)

    def closure(self, generators: Iterable[int]) -> tuple[int, ...]:
        """Subgroup generated by ``generators``, sorted."""

        gens = list(dict.fromkeys(generators))
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mult[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(members))

    def is_normal(self, subgroup: Iterable[int]) -> bool:
        members = set(subgroup)
        return all(self.conj(u, x) in members for u in self.elements for x in members)

    def check_normal(self, subgroup: Iterable[int]) -> tuple[int, ...]:
        members = self.check_subgroup(subgroup)
        if not self.is_normal(members):
            raise NotNormal(f"Subgroup {list(members)} is not normal")
        return members

    def normalizer(self, subgroup: Iterable[int]) -> tuple[int, ...]:
        members = frozenset(subgroup)
        return tuple(u for u in self.elements if frozenset(self.conj(u, x) for x in members) == members)

    def center(self) -> tuple[int, ...]:
        return tuple(z for z in self.elements if all(self.mult[z][x] == self.mult[x][z] for x in self.elements))

    @cached_property
    def commutator_subgroup(self) -> tuple[int, ...]:
        commutators = {self.commutator(a, b) for a in self.elements for b in self.elements}
        return self.closure(sorted(commutators))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes ordered by smallest member; the identity class comes first."""

        seen: set[int] = set()
        classes: list[tuple[int, ...]] = [(self.identity,)]
        seen.add(self.identity)
        for x in self.elements:
            if x in seen:
                continue
            cls_ = tuple(sorted({self.conj(u, x) for u in self.elements}))
            seen.update(cls_)
            classes.append(cls_)
        return tuple(classes)

    def generating_set(self) -> tuple[int, ...]:
        """Greedy generating set, scanning elements in index order."""

        gens: list[int] = []
        span: set[int] = {self.identity}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = set(self.closure(gens))
        return tuple(gens)

    def subgroup_table(self, subgroup: Iterable[int]) -> tuple[GroupTable, tuple[int, ...]]:
        """Return the subgroup as its own table plus the local-to-ambient index map."""

        members = self.check_subgroup(subgroup)
        local = {x: i for i, x in enumerate(members)}
        mult = tuple(tuple(local[self.mult[a][b]] for b in members) for a in members)
        table = GroupTable(
            mult=mult,
            identity=local[self.identity],
            inverses=tuple(local[self.inverses[a]] for a in members),
            labels=tuple(self.labels[a] for a in members),
        )
        return table, members

    def describe(self) -> dict[str, object]:
        return {
            "order": self.order,
            "abelian": self.is_abelian,
            "exponent": self.exponent,
            "center": list(self.center()),
            "commutator_subgroup": list(self.commutator_subgroup),
            "conjugacy_classes": [list(c) for c in self.conjugacy_classes],
            "labels": list(self.labels),
        }


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism between finite groups, one target index per source element."""

    source: GroupTable
    target: GroupTable
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        src, tgt, img = self.source, self.target, self.images
        if len(img) != src.order:
            raise ValidationError(f"Homomorphism needs {src.order} images, got {len(img)}")
        if any(not 0 <= y < tgt.order for y in img):
            raise ValidationError("Homomorphism image outside the target group")
        if img[src.identity] != tgt.identity:
            raise ValidationError("Homomorphism does not preserve the identity")
        for a in src.elements:
            for b in src.elements:
                if img[src.mult[a][b]] != tgt.mult[img[a]][img[b]]:
                    raise ValidationError(f"Map is not multiplicative on ({a}, {b})")

    @classmethod
    def identity(cls, group: GroupTable) -> GroupHom:
        return cls(group, group, tuple(group.elements))

    @classmethod
    def trivial(cls, source: GroupTable, target: GroupTable) -> GroupHom:
        return cls(source, target, (target.identity,) * source.order)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, first: GroupHom) -> GroupHom:
        """``self o first``."""

        if first.target is not self.source:
            raise ValidationError("Cannot compose homomorphisms with mismatched groups")
        return GroupHom(first.source, self.target, tuple(self.images[y] for y in first.images))

    def kernel(self) -> tuple[int, ...]:
        return tuple(x for x in self.source.elements if self.images[x] == self.target.identity)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.images)))

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order


def normalizer_in_ambient(ambient: GroupTable, subgroup: Iterable[int]) -> tuple[int, ...]:
    """Return ``{u in ambient : u H u^-1 = H}`` for a subgroup ``H``.

    Raises:
        NotASubgroup: If ``subgroup`` is not closed under the group operations.
    """

    members = ambient.check_subgroup(subgroup)
    result = ambient.normalizer(members)
    logger.debug("normalizer of %d-element subgroup has order %d", len(members), len(result))
    return result


def _check_latin_square(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    full = set(range(n))
    for a, row in enumerate(table):
        if len(row) != n:
            raise InvalidGroupTable(f"Row {a} has {len(row)} entries, expected {n}")
        if set(row) != full:
            raise InvalidGroupTable(f"Row {a} is not a permutation of the elements")
    for b in range(n):
        if {table[a][b] for a in range(n)} != full:
            raise InvalidGroupTable(f"Column {b} is not a permutation of the elements")


def _identity_and_inverses(table: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    n = len(table)
    identity = next((e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))), None)
    if identity is None:
        raise InvalidGroupTable("Table has no two-sided identity")
    inverses = []
    for a in range(n):
        b = list(table[a]).index(identity)
        if table[b][a] != identity:
            raise InvalidGroupTable(f"Element {a} has no two-sided inverse")
        inverses.append(b)
    return identity, tuple(inverses)


def _check_associative(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            row_ab = table[row_a[b]]
            row_b = table[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    raise InvalidGroupTable(f"Associativity fails for ({a}, {b}, {c})")
