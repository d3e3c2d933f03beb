"""The special category ``T(q)`` attached to a ``Q``-cocycle.

For every pair ``(r, s)`` with ``r + s <= rs_bound`` the arrow bundle with fibre
``(H^r, H^s)_G`` is glued by the ``Q``-action: the transition on edge ``(i, j)``
is the coordinate matrix of ``q_ij``. The symmetry ``theta_{r,s}`` is carried as
its coordinates in ``(H^{r+s}, H^{r+s})_G`` at every vertex.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional

from typing_extensions import TypeAlias

from twistk.cohomology.cocycles import are_equivalent
from twistk.cohomology.delta import dixmier_douady
from twistk.complexes.cochains import Cocycle1, GCochain1, first_cocycle_failure
from twistk.complexes.complex import SimplicialComplex
from twistk.complexes.h2 import CohomologyClass2
from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import InvalidCochain, InvariantViolation, ValidationError
from twistk.core.matrices import Matrix
from twistk.core.settings import DEFAULT_SETTINGS, Settings
from twistk.groups.extension import Extension
from twistk.repcat.actions import DualCategory
from twistk.repcat.intertwiners import flip
from twistk.repcat.reps import UnitaryRep

__all__ = [
    "SpecialCategory",
    "CategoryIsomorphism",
    "build_special_category",
    "category_isomorphism",
    "delta_of_category",
    "degree_pairs",
]

logger = logging.getLogger(__name__)

Degree: TypeAlias = tuple[int, int]


def degree_pairs(rs_bound: int) -> list[Degree]:
    """All ``(r, s)`` with ``r + s <= rs_bound``, ordered by total degree."""

    return [(r, total - r) for total in range(rs_bound + 1) for r in range(total + 1)]


@dataclass(frozen=True, eq=False)
class SpecialCategory:
    """Transition data of ``T(q)`` over a simplicial complex.

    Attributes:
        complex: The base complex.
        dual: Arrow spaces of ``G`` and the ``Q``-action on them.
        cocycle: The ``Q``-valued cocycle ``q``.
        rs_bound: Largest ``r + s`` with arrow bundles.
        transitions: Per ``(r, s)``, one coordinate matrix per edge of ``complex.edges``.
        symmetry: Per ``(r, s)`` with ``r, s >= 1`` and ``2(r + s) <= rs_bound``,
            the coordinates of ``theta_{r,s}``.
    """

    complex: SimplicialComplex
    dual: DualCategory
    cocycle: Cocycle1
    rs_bound: int
    transitions: Mapping[Degree, tuple[Matrix, ...]]
    symmetry: Mapping[Degree, tuple[Cyclotomic, ...]]

    @property
    def extension(self) -> Extension:
        return self.dual.extension

    @property
    def ambient(self) -> UnitaryRep:
        return self.dual.ambient

    def transition(self, r: int, s: int, i: int, j: int) -> Matrix:
        """``y^{r,s}_ij`` for an oriented edge; reversed edges give the inverse."""

        return self.dual.action(r, s)[self.cocycle(i, j)]

    def is_trivial(self) -> bool:
        return all(m.is_identity() for family in self.transitions.values() for m in family)

    # -- invariants -------------------------------------------------------

    def check_cocycle_identity(self) -> None:
        for (r, s), family in self.transitions.items():
            index = self.complex.edge_index
            for i, j, k in self.complex.triangles:
                if family[index[(i, j)]] @ family[index[(j, k)]] != family[index[(i, k)]]:
                    raise InvariantViolation("transition cocycle identity", f"triangle {[i, j, k]}, (H^{r}, H^{s})")

    def check_unitarity(self) -> None:
        for r, s in self.transitions:
            gram = self.dual.arrows(r, s).gram()
            for edge, m in zip(self.complex.edges, self.transitions[(r, s)]):
                if m.adjoint() @ gram @ m != gram:
                    raise InvariantViolation("unitary transitions", f"edge {list(edge)}, (H^{r}, H^{s})")

    def check_tensor_compatibility(self) -> None:
        """``y^{r+r',s+s'}(t (x) t') = y^{r,s}(t) (x) y^{r',s'}(t')`` on basis operators."""

        dual = self.dual
        used = sorted(set(self.cocycle.values))
        pairs = list(self.transitions)
        for r, s in pairs:
            for r2, s2 in pairs:
                if (r + r2, s + s2) not in self.transitions or (r + r2) + (s + s2) == 0:
                    continue
                first, second = dual.arrows(r, s), dual.arrows(r2, s2)
                target = dual.arrows(r + r2, s + s2)
                big = dual.action(r + r2, s + s2)
                small, small2 = dual.action(r, s), dual.action(r2, s2)
                for q in used:
                    for k, a in enumerate(first.basis):
                        image_a = first.combine(small[q].column(k))
                        for k2, b in enumerate(second.basis):
                            image_b = second.combine(small2[q].column(k2))
                            coords = target.coordinates(a.kron(b))
                            lhs = big[q] @ Matrix([[c] for c in coords], ncols=1)
                            rhs = target.coordinates(image_a.kron(image_b))
                            if [x for (x,) in lhs.rows] != rhs:
                                raise InvariantViolation(
                                    "tensor compatibility",
                                    f"(H^{r}, H^{s}) x (H^{r2}, H^{s2}), q = {self.extension.Q.labels[q]}",
                                )

    def check_symmetry_gluing(self) -> None:
        for (r, s), theta in self.symmetry.items():
            n = r + s
            for edge, m in zip(self.complex.edges, self.transitions[(n, n)]):
                moved = m @ Matrix([[c] for c in theta], ncols=1)
                if [x for (x,) in moved.rows] != list(theta):
                    raise InvariantViolation("symmetry gluing", f"edge {list(edge)}, theta_({r},{s})")

    def validate(self) -> None:
        self.check_cocycle_identity()
        self.check_unitarity()
        self.check_tensor_compatibility()
        self.check_symmetry_gluing()

    def to_json(self) -> dict[str, object]:
        return {
            "rs_bound": self.rs_bound,
            "trivial": self.is_trivial(),
            "dimensions": {f"{r},{s}": self.dual.arrows(r, s).dimension for r, s in self.transitions},
            "transitions": {
                f"{r},{s}": {f"{i}-{j}": m.to_json() for (i, j), m in zip(self.complex.edges, family)}
                for (r, s), family in self.transitions.items()
            },
            "symmetry": {f"{r},{s}": [c.to_json() for c in theta] for (r, s), theta in self.symmetry.items()},
        }


def build_special_category(  # noqa: PLR0913
    complex_: SimplicialComplex,
    extension: Extension,
    ambient: UnitaryRep,
    cocycle: GCochain1,
    *,
    rs_bound: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> SpecialCategory:
    """Build and verify ``T(q)``.

    Raises:
        InvalidCochain: If ``cocycle`` is not a ``Q``-cocycle on ``complex_``.
        NotNormalizing: If the ambient representation does not normalize ``G``.
        BoundExceeded: If some arrow space exceeds the operator bound.
        InvariantViolation: With the failing triangle or edge.
    """

    cfg = settings or DEFAULT_SETTINGS
    bound = cfg.rs_bound if rs_bound is None else rs_bound
    if bound < 0:
        raise ValidationError(f"rs_bound must be non-negative, got {bound}")
    if cocycle.complex is not complex_:
        raise ValidationError("Cocycle lives on a different complex")
    if cocycle.group is not extension.Q:
        raise ValidationError("Cocycle must take values in the quotient of the extension")
    failure = first_cocycle_failure(cocycle)
    if failure is not None:
        raise InvalidCochain(f"Not a cocycle on triangle {list(failure)}")

    dual = DualCategory(extension, ambient, cfg)
    transitions: dict[Degree, tuple[Matrix, ...]] = {}
    for r, s in degree_pairs(bound):
        action = dual.action(r, s)
        transitions[(r, s)] = tuple(action[q] for q in cocycle.values)

    symmetry: dict[Degree, tuple[Cyclotomic, ...]] = {}
    for r, s in degree_pairs(bound // 2):
        if r and s:
            theta = flip(ambient.d, r, s, ambient.conductor)
            symmetry[(r, s)] = tuple(dual.arrows(r + s, r + s).coordinates(theta))

    category = SpecialCategory(
        complex=complex_,
        dual=dual,
        cocycle=Cocycle1.of(cocycle),
        rs_bound=bound,
        transitions=transitions,
        symmetry=symmetry,
    )
    category.validate()
    logger.info("built special category with %d arrow bundles over %d edges", len(transitions), len(complex_.edges))
    return category


def delta_of_category(category: SpecialCategory) -> CohomologyClass2:
    """``delta(T(q)) := delta(q)``."""

    return dixmier_douady(category.extension, category.cocycle)


@dataclass(frozen=True)
class CategoryIsomorphism:
    """Vertex data ``u`` with ``q_ij = u_i q'_ij u_j^-1`` and the induced matrices per ``(r, s)``."""

    vertex_values: tuple[int, ...]
    vertex_matrices: Mapping[Degree, tuple[Matrix, ...]]


def category_isomorphism(first: SpecialCategory, second: SpecialCategory) -> Optional[CategoryIsomorphism]:
    """Isomorphism ``T(q') -> T(q)`` induced by a cocycle equivalence, or ``None``.

    Raises:
        InvariantViolation: If the vertex matrices do not intertwine the transitions.
    """

    if first.dual.ambient is not second.dual.ambient or first.extension is not second.extension:
        raise ValidationError("Categories must share the extension and the ambient representation")
    u = are_equivalent(first.cocycle, second.cocycle)
    if u is None:
        return None
    matrices: dict[Degree, tuple[Matrix, ...]] = {}
    for key in first.transitions.keys() & second.transitions.keys():
        action = first.dual.action(*key)
        vertex = tuple(action[x] for x in u)
        for (i, j), t, t2 in zip(first.complex.edges, first.transitions[key], second.transitions[key]):
            if t @ vertex[j] != vertex[i] @ t2:
                raise InvariantViolation("category isomorphism", f"edge {[i, j]}, (H^{key[0]}, H^{key[1]})")
        matrices[key] = vertex
    return CategoryIsomorphism(vertex_values=u, vertex_matrices=matrices)
