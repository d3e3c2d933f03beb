"""Intertwiner spaces ``(H^r, H^s)_G`` of a unitary representation.

An operator ``t`` from ``H^r`` to ``H^s`` is stored as a ``d^s x d^r`` matrix.
The conjugation action ``t -> g_s t g_r*`` acts on the row-major flattening of
``t`` by ``g_s (x) conj(g_r)``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from twistk.core import linalg
from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import BoundExceeded, DimensionMismatch, InvariantViolation, ValidationError
from twistk.core.matrices import Matrix
from twistk.core.settings import DEFAULT_SETTINGS, Settings
from twistk.repcat.reps import UnitaryRep

__all__ = [
    "IntertwinerBasis",
    "intertwiners",
    "intertwiners_by_equations",
    "expected_dimension",
    "is_intertwiner",
    "tensor_power",
    "flip",
    "gram_matrix",
    "cross_check",
    "central_idempotent",
]

logger = logging.getLogger(__name__)


def tensor_power(rep: UnitaryRep, g: int, r: int) -> Matrix:
    """``g`` acting on ``H^r``; the empty power is the ``1 x 1`` identity."""

    return _power(rep, g, r)


@lru_cache(maxsize=4096)
def _power(rep: UnitaryRep, g: int, r: int) -> Matrix:
    return rep.matrices[g].tensor_power(r).lift(rep.conductor)


def _conjugation_operator(rep: UnitaryRep, g: int, r: int, s: int) -> Matrix:
    return _power(rep, g, s).kron(_power(rep, g, r).conjugate())


def flip(d: int, r: int, s: int, conductor: int = 1) -> Matrix:
    """Permutation ``H^r (x) H^s -> H^s (x) H^r`` exchanging the two factors."""

    size_r, size_s = d**r, d**s
    rows = [[0] * (size_r * size_s) for _ in range(size_r * size_s)]
    for a in range(size_r):
        for b in range(size_s):
            rows[b * size_r + a][a * size_s + b] = 1
    return Matrix(rows, conductor)


def expected_dimension(rep: UnitaryRep, r: int, s: int) -> int:
    """``(1/|G|) sum_g chi(g)^s conj(chi(g))^r``."""

    total = sum(
        (chi**s * chi.conjugate() ** r for chi in rep.character),
        Cyclotomic.zero(rep.conductor),
    )
    value = total / rep.group.order
    if not value.is_rational() or value.to_rational().denominator != 1:
        raise InvariantViolation("character inner product", f"(H^{r}, H^{s}) gives {value}")
    return int(value.to_rational())


def is_intertwiner(rep: UnitaryRep, t: Matrix, r: int, s: int) -> bool:
    if t.shape != (rep.d**s, rep.d**r):
        return False
    return all(_power(rep, g, s) @ t == t @ _power(rep, g, r) for g in rep.group.generating_set())


def _check_bound(rep: UnitaryRep, r: int, s: int, settings: Settings) -> None:
    if r < 0 or s < 0:
        raise ValidationError(f"Tensor degrees must be non-negative, got ({r}, {s})")
    entries = rep.d ** (2 * (r + s))
    if entries > settings.max_operator_entries:
        raise BoundExceeded(
            f"(H^{r}, H^{s}) needs an operator with {entries} entries, above the bound "
            f"{settings.max_operator_entries}",
        )


@dataclass(frozen=True, eq=False)
class IntertwinerBasis:
    """A basis of ``(H^r, H^s)_G`` in reduced row echelon form.

    The flattened basis matrices form the nonzero rows of a reduced echelon
    matrix, so coordinates are read off at the pivot positions.
    """

    rep: UnitaryRep
    r: int
    s: int
    basis: tuple[Matrix, ...]
    pivots: tuple[int, ...]
    _rows: tuple[tuple[Cyclotomic, ...], ...] = field(repr=False)

    @classmethod
    def from_rows(cls, rep: UnitaryRep, r: int, s: int, rows: Sequence[Sequence[Cyclotomic]]) -> IntertwinerBasis:
        one = Cyclotomic.one(rep.conductor)
        reduced, pivots = linalg.rref(rows, one=one)
        size_r, size_s = rep.d**r, rep.d**s
        return cls(
            rep=rep,
            r=r,
            s=s,
            basis=tuple(Matrix.from_flat(row, size_s, size_r, rep.conductor) for row in reduced),
            pivots=tuple(pivots),
            _rows=tuple(tuple(row) for row in reduced),
        )

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def coordinates(self, t: Matrix) -> list[Cyclotomic]:
        """Coordinates of ``t`` in this basis.

        Raises:
            ValidationError: If ``t`` has the wrong shape or is not an intertwiner.
        """

        if t.shape != (self.rep.d**self.s, self.rep.d**self.r):
            raise ValidationError(f"Expected a {self.rep.d**self.s} x {self.rep.d**self.r} operator, got {t.shape}")
        try:
            return linalg.solve_in_basis(self._rows, self.pivots, t.lift(self.rep.conductor).flatten())
        except ValueError as exc:
            raise ValidationError(f"Operator is not in (H^{self.r}, H^{self.s})_G") from exc

    def combine(self, coordinates: Sequence[Cyclotomic]) -> Matrix:
        if len(coordinates) != len(self.basis):
            raise ValidationError(f"Expected {len(self.basis)} coordinates, got {len(coordinates)}")
        result = Matrix.zeros(self.rep.d**self.s, self.rep.d**self.r, self.rep.conductor)
        for c, b in zip(coordinates, self.basis):
            if c:
                result = result + b.scale(c)
        return result

    def contains(self, t: Matrix) -> bool:
        try:
            self.coordinates(t)
        except ValidationError:
            return False
        return True

    def gram(self) -> Matrix:
        return gram_matrix(self.basis, self.rep.conductor)

    def to_json(self) -> dict[str, object]:
        return {"r": self.r, "s": self.s, "dimension": self.dimension, "basis": [b.to_json() for b in self.basis]}


def gram_matrix(basis: Sequence[Matrix], conductor: int = 1) -> Matrix:
    """``G[j][k] = tr(b_j* b_k)``."""

    return Matrix([[a.hs_inner(b) for b in basis] for a in basis], conductor, ncols=len(basis))


def intertwiners(
    rep: UnitaryRep,
    r: int,
    s: int,
    *,
    settings: Optional[Settings] = None,
) -> IntertwinerBasis:
    """Basis of ``(H^r, H^s)_G`` as the image of the averaging projection.

    The dimension is checked against the character inner product.

    Raises:
        BoundExceeded: If ``d^(2(r+s))`` exceeds ``settings.max_operator_entries``.
        DimensionMismatch: If the basis size disagrees with the character sum.
    """

    cfg = settings or DEFAULT_SETTINGS
    _check_bound(rep, r, s, cfg)
    return _intertwiners(rep, r, s)


@lru_cache(maxsize=256)
def _intertwiners(rep: UnitaryRep, r: int, s: int) -> IntertwinerBasis:
    size = rep.d ** (r + s)
    projector = Matrix.zeros(size, size, rep.conductor)
    for g in rep.group.elements:
        projector = projector + _conjugation_operator(rep, g, r, s)
    projector = projector.scale(Fraction(1, rep.group.order))
    result = IntertwinerBasis.from_rows(rep, r, s, projector.transpose().rows)
    expected = expected_dimension(rep, r, s)
    if result.dimension != expected:
        raise DimensionMismatch(result.dimension, expected, f"(H^{r}, H^{s})")
    logger.debug("(H^%d, H^%d) has dimension %d", r, s, result.dimension)
    return result


def intertwiners_by_equations(
    rep: UnitaryRep,
    r: int,
    s: int,
    *,
    settings: Optional[Settings] = None,
) -> IntertwinerBasis:
    """Basis of ``(H^r, H^s)_G`` as the common fixed space of the generators."""

    cfg = settings or DEFAULT_SETTINGS
    _check_bound(rep, r, s, cfg)
    size = rep.d ** (r + s)
    identity = Matrix.identity(size, rep.conductor)
    equations: list[tuple[Cyclotomic, ...]] = []
    for g in rep.group.generating_set():
        equations.extend((_conjugation_operator(rep, g, r, s) - identity).rows)
    one = Cyclotomic.one(rep.conductor)
    return IntertwinerBasis.from_rows(rep, r, s, linalg.nullspace(equations, size, one=one))


def cross_check(rep: UnitaryRep, r: int, s: int, *, settings: Optional[Settings] = None) -> IntertwinerBasis:
    """Compute ``(H^r, H^s)`` both ways and require identical reduced bases."""

    averaged = intertwiners(rep, r, s, settings=settings)
    solved = intertwiners_by_equations(rep, r, s, settings=settings)
    if averaged.dimension != solved.dimension:
        raise DimensionMismatch(solved.dimension, averaged.dimension, f"(H^{r}, H^{s}) by fixed-point equations")
    if averaged.basis != solved.basis:
        raise InvariantViolation("intertwiner space", f"(H^{r}, H^{s}) bases differ between methods")
    return averaged


def central_idempotent(rep: UnitaryRep, values: Sequence[Cyclotomic], degree: int, r: int) -> Matrix:
    """Isotypic projection ``(dim/|G|) sum_g conj(chi(g)) g_r`` onto the ``chi``-part of ``H^r``.

    Args:
        rep: The representation.
        values: An irreducible character of ``rep.group`` given on elements.
        degree: Its degree ``chi(1)``.
        r: Tensor level.
    """

    size = rep.d**r
    total = Matrix.zeros(size, size, rep.conductor)
    for g in rep.group.elements:
        if values[g]:
            total = total + _power(rep, g, r).scale(values[g].conjugate())
    return total.scale(Fraction(degree, rep.group.order))
