"""
Second cohomology ``H^2(X, A)`` for a finite abelian coefficient group ``A``.

For one cyclic factor ``Z/m`` write ``U d2 V = D`` for the coboundary
``d2 : C^2 -> C^3``. A 2-cochain ``c`` is a cocycle exactly when
``z = V^-1 c`` has ``z_i`` divisible by ``s_i = m / gcd(d_i, m)``, so
``w = diag(s)^-1 V^-1 c`` are free coordinates on the cocycle lattice. The
coboundaries ``d1 b`` and the multiples ``m e_k`` give the relations, and a
:class:`~twistk.groups.abelian.Quotient` over all factors yields the class
group in invariant-factor form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd

from twistk.complexes.cochains import ACochain2
from twistk.complexes.complex import SimplicialComplex
from twistk.core.errors import InvalidCochain, ValidationError
from twistk.core.smith import SmithDecomposition, smith_decomposition
from twistk.groups.abelian import AbelianGroup, Element, Quotient

__all__ = ["H2Presentation", "CohomologyClass2", "h2_presentation"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class _FactorData:
    modulus: int
    steps: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class H2Presentation:
    """Smith-normal-form presentation of ``H^2(X, A)``.

    Attributes:
        complex: The base complex.
        coefficients: The finite abelian group ``A``.
        coboundary: Smith data of ``d2 : C^2 -> C^3``.
        class_group: ``H^2(X, A)`` in invariant-factor form.
    """

    complex: SimplicialComplex
    coefficients: AbelianGroup
    coboundary: SmithDecomposition
    class_group: AbelianGroup
    _factors: tuple[_FactorData, ...] = field(repr=False)
    _quotient: Quotient = field(repr=False)

    def coordinates(self, cochain: ACochain2) -> list[int]:
        """Lattice coordinates ``w`` of a cocycle, factor blocks concatenated.

        Raises:
            InvalidCochain: If ``cochain`` is not a cocycle.
        """

        if cochain.complex is not self.complex or cochain.group != self.coefficients:
            raise InvalidCochain("2-cochain lives on a different complex or coefficient group")
        right_inv = self.coboundary.right_inv
        coords: list[int] = []
        for f, factor in enumerate(self._factors):
            column = [v[f] for v in cochain.values]
            for i, step in enumerate(factor.steps):
                z = sum(a * b for a, b in zip(right_inv[i], column) if a and b)
                if z % step:
                    raise InvalidCochain("2-cochain is not a cocycle")
                coords.append(z // step)
        return coords

    def project(self, cochain: ACochain2) -> CohomologyClass2:
        """Class of a 2-cocycle in :attr:`class_group`."""

        return CohomologyClass2(self, self._quotient.project(self.coordinates(cochain)))

    def zero(self) -> CohomologyClass2:
        return CohomologyClass2(self, self.class_group.zero())


@dataclass(frozen=True, eq=False)
class CohomologyClass2:
    """An element of ``H^2(X, A)`` in canonical coordinates."""

    presentation: H2Presentation
    coordinates: Element

    def __post_init__(self) -> None:
        object.__setattr__(self, "coordinates", self.presentation.class_group.reduce(self.coordinates))

    @property
    def group(self) -> AbelianGroup:
        return self.presentation.class_group

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohomologyClass2):
            return NotImplemented
        return self.group == other.group and self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash((self.group, self.coordinates))

    def to_json(self) -> dict[str, object]:
        return {"class": list(self.coordinates), "group": str(self.group), "zero": self.is_zero()}


def h2_presentation(complex_: SimplicialComplex, coefficients: AbelianGroup) -> H2Presentation:
    """Present ``H^2(X, A)`` for a finite abelian ``A``.

    Raises:
        ValidationError: If ``A`` has a free part.
    """

    if not coefficients.is_finite:
        raise ValidationError(f"Coefficient group {coefficients} must be finite")
    n2 = len(complex_.triangles)
    d1 = complex_.coboundary_matrix(1)
    d2 = complex_.coboundary_matrix(2)
    snf = smith_decomposition(d2, ncols=n2)
    right_inv = snf.right_inv

    # V^-1 d1, one row per coordinate z_i and one column per edge
    transformed = [[sum(a * row[e] for a, row in zip(right_inv[i], d1) if a) for e in range(len(complex_.edges))]
                   for i in range(n2)]

    factors = []
    relations: list[list[int]] = []
    block = len(coefficients.invariant_factors)
    for f, m in enumerate(coefficients.invariant_factors):
        diag = snf.diagonal
        steps = tuple(m // gcd(diag[i], m) if i < len(diag) and diag[i] else 1 for i in range(n2))
        factors.append(_FactorData(m, steps))
        offset = f * n2

        def embed(vec: list[int], offset: int = offset) -> list[int]:
            row = [0] * (n2 * block)
            row[offset : offset + n2] = vec
            return row

        for e in range(len(complex_.edges)):
            relations.append(embed([transformed[i][e] // steps[i] for i in range(n2)]))
        for k in range(n2):
            relations.append(embed([m * right_inv[i][k] // steps[i] for i in range(n2)]))

    quotient = Quotient(n2 * block, relations)
    logger.debug("H2 with coefficients %s has class group %s", coefficients, quotient.group)
    return H2Presentation(
        complex=complex_,
        coefficients=coefficients,
        coboundary=snf,
        class_group=quotient.group,
        _factors=tuple(factors),
        _quotient=quotient,
    )
