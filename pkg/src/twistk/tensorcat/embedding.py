"""Whether ``T(q)`` embeds in a vector bundle category: lifts of ``q`` through ``N -> Q``."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from twistk.cohomology.cocycles import pushforward
from twistk.cohomology.lifting import LiftSearch
from twistk.complexes.cochains import Cocycle1
from twistk.complexes.h2 import CohomologyClass2
from twistk.core.errors import ExactnessFailure, InvariantViolation
from twistk.core.matrices import Matrix
from twistk.groups.builders import permutation_group
from twistk.groups.extension import Extension
from twistk.groups.table import GroupTable
from twistk.tensorcat.special import SpecialCategory, delta_of_category

__all__ = ["EmbeddingKind", "EmbeddingStatus", "embedding_status", "adjoint_cocycle"]

logger = logging.getLogger(__name__)


class EmbeddingKind(str, Enum):
    EMBEDDABLE = "embeddable"
    OBSTRUCTED = "obstructed"
    NO_LIFT_FOUND = "no-lift-found"


@dataclass(frozen=True, eq=False)
class EmbeddingStatus:
    """Outcome of the embedding decision.

    Attributes:
        kind: Embeddable, obstructed (``delta != 0``) or no lift with ``delta = 0``.
        nodes: Search nodes visited.
        delta: ``delta(q)``; ``None`` only when the abelianized row is not exact.
        special_unitary: Whether ``G`` lies in ``SU(d)``.
        lift: The ``N``-cocycle ``n`` with ``p_* n = q``.
        vector_bundle: Ambient matrices of ``n``, one per edge.
        adjoint: ``ad_* n``, the conjugation action of ``n`` on ``G``.
    """

    kind: EmbeddingKind
    nodes: int
    delta: Optional[CohomologyClass2]
    special_unitary: bool
    lift: Optional[Cocycle1] = None
    vector_bundle: tuple[Matrix, ...] = ()
    adjoint: Optional[Cocycle1] = None

    def to_json(self) -> dict[str, object]:
        report: dict[str, object] = {
            "status": self.kind.value,
            "nodes": self.nodes,
            "exhaustive": self.lift is None,
            "special_unitary": self.special_unitary,
            "delta": None if self.delta is None else self.delta.to_json(),
        }
        if self.lift is not None:
            report["lift"] = self.lift.to_json()
            edges = self.lift.complex.edges
            report["vector_bundle"] = {f"{i}-{j}": m.to_json() for (i, j), m in zip(edges, self.vector_bundle)}
        if self.adjoint is not None:
            labels = self.adjoint.group.labels
            report["adjoint"] = {key: labels[g] for key, g in self.adjoint.to_json().items()}
        return report


def _conjugation_group(extension: Extension) -> tuple[GroupTable, list[tuple[int, ...]], list[int]]:
    """Image of ``N -> Aut(G)`` as a permutation group, plus the index of each ``n``."""

    N, G = extension.N, extension.G
    local = {x: g for g, x in enumerate(extension.i.images)}
    perms = [tuple(local[N.conj(n, extension.i(g))] for g in G.elements) for n in N.elements]
    table, elements = permutation_group(sorted(set(perms)))
    position = {perm: k for k, perm in enumerate(elements)}
    return table, elements, [position[perm] for perm in perms]


def adjoint_cocycle(extension: Extension, lift: Cocycle1) -> Cocycle1:
    """``ad_* n`` with values in the image of ``N`` in ``Aut(G)``."""

    table, _, index = _conjugation_group(extension)
    return Cocycle1(lift.complex, table, tuple(index[n] for n in lift.values))


def embedding_status(category: SpecialCategory, *, budget: Optional[int] = None) -> EmbeddingStatus:
    """Search for a lift of ``q`` and classify the result.

    Raises:
        SearchBudgetExceeded: If the search is inconclusive.
        ExactnessFailure: If no lift exists and ``delta`` is undefined.
        InvariantViolation: If an embeddable category has ``delta != 0`` or the
            derived cocycles are inconsistent.
    """

    extension, ambient = category.extension, category.ambient
    limit = category.dual.settings.search_budget if budget is None else budget
    outcome = LiftSearch(extension, category.cocycle, budget=limit).run()
    special_unitary = category.dual.restricted.in_special_unitary()

    if outcome.lift is None:
        delta = delta_of_category(category)
        kind = EmbeddingKind.NO_LIFT_FOUND if delta.is_zero() else EmbeddingKind.OBSTRUCTED
        logger.info("no lift after %d nodes: %s", outcome.nodes, kind.value)
        return EmbeddingStatus(kind=kind, nodes=outcome.nodes, delta=delta, special_unitary=special_unitary)

    lift = outcome.lift
    if pushforward(extension.p, lift).values != category.cocycle.values:
        raise InvariantViolation("lift projects to q", "some edge")
    matrices = tuple(ambient.matrices[n] for n in lift.values)
    index = category.complex.edge_index
    for i, j, k in category.complex.triangles:
        if matrices[index[(i, j)]] @ matrices[index[(j, k)]] != matrices[index[(i, k)]]:
            raise InvariantViolation("vector bundle cocycle identity", f"triangle {[i, j, k]}")
    adjoint = adjoint_cocycle(extension, lift)

    if (1, 1) in category.transitions:
        arrows = category.dual.arrows(1, 1)
        for edge, n, t in zip(category.complex.edges, lift.values, category.transitions[(1, 1)]):
            for k, b in enumerate(arrows.basis):
                if arrows.coordinates(category.dual.hat(n, b, 1, 1)) != list(t.column(k)):
                    raise InvariantViolation("adjoint action matches y^{1,1}", f"edge {list(edge)}")

    try:
        delta: Optional[CohomologyClass2] = delta_of_category(category)
    except ExactnessFailure:
        delta = None
    if delta is not None and not delta.is_zero():
        raise InvariantViolation("embeddable implies delta = 0", f"class {list(delta.coordinates)}")
    logger.info("lift found after %d nodes", outcome.nodes)
    return EmbeddingStatus(
        kind=EmbeddingKind.EMBEDDABLE,
        nodes=outcome.nodes,
        delta=delta,
        special_unitary=special_unitary,
        lift=lift,
        vector_bundle=matrices,
        adjoint=adjoint,
    )
