"""Character tables by Dixon's method and class-function inner products.

Class-multiplication matrices are diagonalized simultaneously over ``GF(p)``
with ``p = 1 (mod exponent)`` and ``p > 2 sqrt(|G|)``; the eigenvectors are the
normalized characters ``chi / chi(1)`` reduced mod ``p``. Each value is then
lifted to ``Q(zeta_e)`` by reading off eigenvalue multiplicities of ``chi`` on
the cyclic subgroup generated by a class representative.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from weakref import WeakKeyDictionary

from sympy import FiniteField, Poly, Symbol, nextprime, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import InvariantViolation, ValidationError
from twistk.groups.table import GroupTable

__all__ = ["CharacterTable", "character_table", "register_character_table", "inner_product", "dixon_prime"]

logger = logging.getLogger(__name__)

_X = Symbol("x")

_SUPPLIED: WeakKeyDictionary[GroupTable, CharacterTable] = WeakKeyDictionary()


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime ``p > 2 sqrt(order)`` with ``p = 1 (mod exponent)``."""

    if order == 1:
        return 3
    p = 2 * isqrt(order)
    while True:
        p = int(nextprime(p))
        if p % exponent == 1:
            return p


def _class_matrix(group: GroupTable, classes: Sequence[Sequence[int]], owner: list[int], r: int) -> list[list[int]]:
    """``m[i][t] = #{g in C_r : x_t g in C_i}`` with ``x_t`` the first member of ``C_t``."""

    n = len(classes)
    m = [[0] * n for _ in range(n)]
    for t, cls_ in enumerate(classes):
        x = cls_[0]
        for g in classes[r]:
            m[owner[group.mul(x, g)]][t] += 1
    return m


def _eigenspaces(a: DomainMatrix) -> list[DomainMatrix]:
    at = a.transpose()
    fp = at.domain
    charpoly = Poly(at.charpoly(), _X, domain=fp)
    spaces = []
    for z in charpoly.ground_roots():
        shifted = at - DomainMatrix.diag([fp(int(z))] * at.shape[0], fp)
        basis, _ = shifted.nullspace().rref()
        spaces.append(basis)
    return spaces


def _common_eigenspaces(matrices: Sequence[list[list[int]]], fp: FiniteField) -> list[list[int]]:
    n = len(matrices[0])
    spaces = _eigenspaces(DomainMatrix.from_list(matrices[0], fp))
    for m in matrices[1:]:
        if len(spaces) == n:
            break
        dm = DomainMatrix.from_list(m, fp)
        refined = []
        for space in spaces:
            if space.shape[0] <= 1:
                refined.append(space)
                continue
            _, pivots = space.rref()
            restricted = space * dm.extract(list(range(space.shape[1])), list(pivots))
            refined.extend(sub * space for sub in _eigenspaces(restricted))
        spaces = refined
    if len(spaces) != n:
        raise InvariantViolation("character table", f"found {len(spaces)} common eigenspaces for {n} classes")
    p = fp.mod
    return [[int(x) % p for x in space.to_list()[0]] for space in spaces]


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Irreducible characters of a finite group, one row per irreducible.

    Attributes:
        group: The group.
        classes: Conjugacy classes, identity class first.
        values: ``values[i][c]`` is the ``i``-th character on class ``c``; the
            trivial character is row 0.
    """

    group: GroupTable
    classes: tuple[tuple[int, ...], ...]
    values: tuple[tuple[Cyclotomic, ...], ...]

    @classmethod
    def from_values(cls, group: GroupTable, values: Sequence[Sequence[Cyclotomic]]) -> CharacterTable:
        """Accept a supplied table after checking row count and both orthogonality relations.

        Raises:
            ValidationError: If the table is not the character table of ``group``.
        """

        classes = group.conjugacy_classes
        rows = tuple(tuple(row) for row in values)
        if len(rows) != len(classes) or any(len(row) != len(classes) for row in rows):
            raise ValidationError(f"Character table must be {len(classes)} x {len(classes)}")
        table = cls(group=group, classes=classes, values=rows)
        table.validate()
        return table

    def validate(self) -> None:
        n = self.group.order
        sizes = [len(c) for c in self.classes]
        for i, a in enumerate(self.values):
            degree = a[0]
            if not degree.is_rational() or degree.to_rational() <= 0 or degree.to_rational().denominator != 1:
                raise ValidationError(f"Character {i} has degree {degree}, not a positive integer")
            for j, b in enumerate(self.values):
                total = sum((size * x * y.conjugate() for size, x, y in zip(sizes, a, b)), Cyclotomic.zero())
                if total != (n if i == j else 0):
                    raise ValidationError(f"Characters {i} and {j} violate row orthogonality")
        for c in range(len(self.classes)):
            for d in range(len(self.classes)):
                total = sum((row[c] * row[d].conjugate() for row in self.values), Cyclotomic.zero())
                expected = Fraction(n, sizes[c]) if c == d else 0
                if total != expected:
                    raise ValidationError(f"Classes {c} and {d} violate column orthogonality")

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        owner = [0] * self.group.order
        for c, members in enumerate(self.classes):
            for x in members:
                owner[x] = c
        return tuple(owner)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0].to_rational()) for row in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def character(self, i: int) -> tuple[Cyclotomic, ...]:
        """Irreducible ``i`` as a function on elements."""

        row = self.values[i]
        return tuple(row[c] for c in self.class_of)

    def decompose(self, character: Sequence[Cyclotomic]) -> tuple[int, ...]:
        """Multiplicities of the irreducibles in a character given on elements.

        Raises:
            ValidationError: If some multiplicity is not a non-negative integer.
        """

        result = []
        for i in range(len(self.values)):
            m = inner_product(self.group, character, self.character(i))
            if not m.is_rational() or m.to_rational().denominator != 1 or m.to_rational() < 0:
                raise ValidationError(f"Not a character: multiplicity {m} of irreducible {i}")
            result.append(int(m.to_rational()))
        return tuple(result)

    def to_json(self) -> dict[str, object]:
        return {
            "classes": [[self.group.labels[x] for x in c] for c in self.classes],
            "values": [[x.to_json() for x in row] for row in self.values],
        }


def inner_product(group: GroupTable, chi: Sequence[Cyclotomic], psi: Sequence[Cyclotomic]) -> Cyclotomic:
    """``(1/|G|) sum_g chi(g) conj(psi(g))``."""

    total = sum((x * y.conjugate() for x, y in zip(chi, psi)), Cyclotomic.zero())
    return total / group.order


def _lift(  # noqa: PLR0913
    group: GroupTable,
    classes: Sequence[Sequence[int]],
    owner: list[int],
    row: list[int],
    degree: int,
    p: int,
) -> tuple[Cyclotomic, ...]:
    e = group.exponent
    z = pow(int(primitive_root(p)), (p - 1) // e, p)
    e_inv = pow(e, -1, p)
    lifted = []
    for cls_ in classes:
        g = cls_[0]
        powers = [row[owner[group.power(g, t)]] for t in range(e)]
        value = Cyclotomic.zero(e)
        for k in range(e):
            zk = pow(z, -k, p)
            m = e_inv * sum(v * pow(zk, t, p) for t, v in enumerate(powers)) % p
            if m > degree:
                raise InvariantViolation("character table", f"eigenvalue multiplicity {m} exceeds degree {degree}")
            if m:
                value = value + m * Cyclotomic.root_of_unity(e, k)
        lifted.append(value)
    return tuple(lifted)


def register_character_table(table: CharacterTable) -> None:
    """Use a supplied, already validated table for its group from now on."""

    _SUPPLIED[table.group] = table


def character_table(group: GroupTable) -> CharacterTable:
    """The registered table of ``group``, or one computed and validated by Dixon's method."""

    supplied = _SUPPLIED.get(group)
    if supplied is not None:
        return supplied
    return _computed_table(group)


@lru_cache(maxsize=32)
def _computed_table(group: GroupTable) -> CharacterTable:
    classes = group.conjugacy_classes
    owner = [0] * group.order
    for c, members in enumerate(classes):
        for x in members:
            owner[x] = c
    n = group.order
    p = dixon_prime(n, group.exponent)
    fp = FiniteField(p)
    logger.debug("computing character table: order %d, %d classes, p = %d", n, len(classes), p)

    matrices = [_class_matrix(group, classes, owner, r) for r in range(len(classes))]
    sizes = [len(c) for c in classes]
    inv_class = [owner[group.inv(c[0])] for c in classes]
    rows = []
    for vector in _common_eigenspaces(matrices, fp):
        scale = pow(vector[0], -1, p)
        normalized = [x * scale % p for x in vector]
        dot = sum(sizes[k] * normalized[k] * normalized[inv_class[k]] for k in range(len(classes))) % p
        degree_sq = n * pow(dot, -1, p) % p
        roots = sqrt_mod(degree_sq, p, all_roots=True)
        if not roots:
            raise InvariantViolation("character table", f"{degree_sq} is not a square mod {p}")
        degree = min(int(r) for r in roots)
        rows.append(_lift(group, classes, owner, [x * degree % p for x in normalized], degree, p))

    rows.sort(key=lambda row: (row[0].sort_key(), [x.sort_key() for x in row]))
    trivial = next(i for i, row in enumerate(rows) if all(x == 1 for x in row))
    rows.insert(0, rows.pop(trivial))
    table = CharacterTable(group=group, classes=classes, values=tuple(rows))
    try:
        table.validate()
    except ValidationError as exc:
        raise InvariantViolation("character table", str(exc)) from exc
    return table
