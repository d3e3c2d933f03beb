"""
The connecting map ``delta_ab : H^1(X, Q_ab) -> H^2(X, G_ab)`` and the
Dixmier-Douady class ``delta(q) = delta_ab(pi_Q* q)``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping
from functools import lru_cache
from typing import Optional

from twistk.cohomology.cocycles import pushforward
from twistk.complexes.cochains import ACochain2, Cocycle1, GCochain1
from twistk.complexes.complex import SimplicialComplex
from twistk.complexes.h2 import CohomologyClass2, H2Presentation, h2_presentation
from twistk.core.errors import InvariantViolation, ValidationError
from twistk.groups.abelian import AbelianGroup, Element
from twistk.groups.extension import AbelianizedExtension, Extension, abelianized_row
from twistk.groups.table import GroupHom

__all__ = [
    "connecting_delta_ab",
    "dixmier_douady",
    "quotient_projection",
    "homomorphic_section",
    "section_split_cocycle",
    "cached_h2_presentation",
]

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def cached_h2_presentation(complex_: SimplicialComplex, coefficients: AbelianGroup) -> H2Presentation:
    return h2_presentation(complex_, coefficients)


def quotient_projection(row: AbelianizedExtension) -> GroupHom:
    """``pi_Q : Q -> Q_ab`` as a homomorphism into the table of ``Q_ab``."""

    qab = row.Qab
    return GroupHom(row.extension.Q, qab.table, tuple(qab.index_of(row.Q_ab(x)) for x in row.extension.Q.elements))


def connecting_delta_ab(
    row: AbelianizedExtension,
    cocycle: GCochain1,
    *,
    section: Optional[Mapping[Element, Element]] = None,
) -> CohomologyClass2:
    """Bockstein-type connecting map of the exact abelianized row.

    Every ``z_ij`` is lifted through a fixed section of ``pab`` to ``b_ij`` in
    ``N_ab``; on each triangle ``b_ij + b_jk - b_ik`` lies in the image of
    ``iab`` and its preimage defines a 2-cocycle with values in ``G_ab``.

    Args:
        row: A verified abelianized extension.
        cocycle: A cocycle with values in the table of ``Q_ab``.
        section: Set-theoretic section of ``pab``; defaults to the first
            ``N_ab`` element over each class.
    """

    if cocycle.group is not row.Qab.table:
        raise ValidationError("Cocycle must take values in the abelianized quotient")
    nab, qab = row.Nab, row.Qab
    section = row.pab_section if section is None else section
    if any(a not in section or row.pab(section[a]) != a for a in qab.elements()):
        raise ValidationError("Section is not a right inverse of pab")
    lifted = {edge: section[qab.element_at(z)] for edge, z in cocycle.items()}
    complex_ = cocycle.complex
    values = []
    for i, j, k in complex_.triangles:
        w = nab.sub(nab.add(lifted[(i, j)], lifted[(j, k)]), lifted[(i, k)])
        try:
            values.append(row.iab_inverse[w])
        except KeyError as exc:
            raise InvariantViolation("triangle defect lies in the image of iab", f"triangle {[i, j, k]}") from exc
    defect = ACochain2(complex_, row.Gab, tuple(values))
    if not defect.is_cocycle():
        raise InvariantViolation("connecting 2-cochain is a cocycle", "some tetrahedron")
    result = cached_h2_presentation(complex_, row.Gab).project(defect)
    logger.debug("delta_ab = %s in %s", list(result.coordinates), result.group)
    return result


def dixmier_douady(
    extension: Extension,
    cocycle: GCochain1,
    *,
    row: Optional[AbelianizedExtension] = None,
) -> CohomologyClass2:
    """``delta(q) = delta_ab(pi_Q* q)`` in ``H^2(X, G_ab)``.

    Raises:
        ExactnessFailure: If the abelianized row of ``extension`` is not exact.
    """

    if cocycle.group is not extension.Q:
        raise ValidationError("Cocycle must take values in the quotient of the extension")
    row = abelianized_row(extension) if row is None else row
    return connecting_delta_ab(row, pushforward(quotient_projection(row), Cocycle1.of(cocycle)))


def homomorphic_section(row: AbelianizedExtension) -> Optional[GroupHom]:
    """A homomorphism ``S : Q_ab -> Q`` with ``pi_Q o S = id``, if one exists."""

    Q, qab = row.extension.Q, row.Qab
    rank = qab.rank
    choices = []
    for k, m in enumerate(qab.invariant_factors):
        target = qab.generator(k)
        choices.append([x for x in Q.elements if row.Q_ab(x) == target and Q.power(x, m) == Q.identity])
    for images in itertools.product(*choices):
        if any(Q.mult[a][b] != Q.mult[b][a] for a in images for b in images):
            continue
        mapping = []
        for element in qab.elements():
            mapping.append(Q.product(Q.power(images[k], element[k]) for k in range(rank)))
        try:
            return GroupHom(qab.table, Q, tuple(mapping))
        except ValidationError:
            continue
    return None


def section_split_cocycle(row: AbelianizedExtension, cocycle: GCochain1) -> Cocycle1:
    """``S_* z`` for a homomorphic section ``S``; its class satisfies ``delta(S_* z) = delta_ab(z)``.

    Raises:
        ValidationError: If ``Q -> Q_ab`` has no homomorphic section.
    """

    section = homomorphic_section(row)
    if section is None:
        raise ValidationError("The projection Q -> Q_ab admits no homomorphic section")
    return pushforward(section, cocycle)
