"""The action of the normalizer on intertwiner spaces and the induced ``Q``-action."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from twistk.core.errors import InvalidRepresentation, InvariantViolation, NotNormalizing, ValidationError
from twistk.core.matrices import Matrix
from twistk.core.settings import DEFAULT_SETTINGS, Settings
from twistk.groups.extension import Extension
from twistk.repcat.intertwiners import IntertwinerBasis, intertwiners, tensor_power
from twistk.repcat.reps import UnitaryRep

__all__ = ["hat_action", "qg_action_matrices", "DualCategory"]

logger = logging.getLogger(__name__)


def hat_action(  # noqa: PLR0913
    ambient: UnitaryRep,
    u: int,
    t: Matrix,
    r: int,
    s: int,
    *,
    subgroup: Iterable[int],
) -> Matrix:
    """``u_s t u_r*`` for ``u`` in the normalizer of ``subgroup``.

    Raises:
        NotNormalizing: If ``u`` does not normalize ``subgroup``.
    """

    if not ambient.normalizes(u, list(subgroup)):
        raise NotNormalizing(f"Element {ambient.group.labels[u]!r} does not normalize the subgroup")
    if t.shape != (ambient.d**s, ambient.d**r):
        raise ValidationError(f"Expected a {ambient.d**s} x {ambient.d**r} operator, got {t.shape}")
    return tensor_power(ambient, u, s) @ t @ tensor_power(ambient, u, r).adjoint()


@dataclass(eq=False)
class DualCategory:
    """Objects ``H^r``, arrows ``(H^r, H^s)_G`` and the action of ``Q = N/G`` on them.

    Attributes:
        extension: The row ``G -> N -> Q`` with its chosen section.
        ambient: Unitary representation of ``N``; ``G`` acts through ``extension.i``.
        settings: Operator-size bound used for every arrow space.
    """

    extension: Extension
    ambient: UnitaryRep
    settings: Settings = DEFAULT_SETTINGS
    _actions: dict[tuple[int, int], tuple[Matrix, ...]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.ambient.group is not self.extension.N:
            raise InvalidRepresentation("Ambient representation must be defined on the middle group N")

    @cached_property
    def restricted(self) -> UnitaryRep:
        return self.ambient.pullback(self.extension.i)

    @property
    def d(self) -> int:
        return self.ambient.d

    def arrows(self, r: int, s: int) -> IntertwinerBasis:
        return intertwiners(self.restricted, r, s, settings=self.settings)

    def hat(self, u: int, t: Matrix, r: int, s: int) -> Matrix:
        return hat_action(self.ambient, u, t, r, s, subgroup=self.extension.kernel_elements)

    def action(self, r: int, s: int) -> tuple[Matrix, ...]:
        """Matrices of ``q -> hat(s(q))`` on the coordinates of ``(H^r, H^s)_G``, indexed by ``q``.

        Column ``k`` of the matrix for ``q`` holds the coordinates of the image
        of the ``k``-th basis operator.

        Raises:
            InvariantViolation: If the action depends on the coset representative
                or is not a homomorphism.
        """

        key = (r, s)
        if key not in self._actions:
            self._actions[key] = qg_action_matrices(self.extension, self.ambient, r, s, basis=self.arrows(r, s))
        return self._actions[key]

    def act(self, q: int, t: Matrix, r: int, s: int) -> Matrix:
        return self.hat(self.extension.section[q], t, r, s)

    def check_unitary(self, r: int, s: int) -> None:
        """The ``Q``-action preserves the Hilbert-Schmidt form on ``(H^r, H^s)_G``."""

        gram = self.arrows(r, s).gram()
        for q, m in enumerate(self.action(r, s)):
            if m.adjoint() @ gram @ m != gram:
                label = self.extension.Q.labels[q]
                raise InvariantViolation("unitarity of the Q-action", f"q = {label}, (H^{r}, H^{s})")


def qg_action_matrices(  # noqa: PLR0913
    extension: Extension,
    ambient: UnitaryRep,
    r: int,
    s: int,
    *,
    basis: Optional[IntertwinerBasis] = None,
    settings: Optional[Settings] = None,
) -> tuple[Matrix, ...]:
    """Matrices of the ``Q``-action on ``(H^r, H^s)_G``, one per element of ``Q``."""

    if basis is None:
        basis = intertwiners(ambient.pullback(extension.i), r, s, settings=settings)
    subgroup = extension.kernel_elements
    dim = basis.dimension
    matrices = []
    for q in extension.Q.elements:
        u = extension.section[q]
        images = [hat_action(ambient, u, b, r, s, subgroup=subgroup) for b in basis.basis]
        for other in extension.fiber(q):
            if other != u and any(
                hat_action(ambient, other, b, r, s, subgroup=subgroup) != image
                for b, image in zip(basis.basis, images)
            ):
                raise InvariantViolation(
                    "independence of the coset representative",
                    f"q = {extension.Q.labels[q]}, (H^{r}, H^{s})",
                )
        try:
            columns = [basis.coordinates(image) for image in images]
        except ValidationError as exc:
            raise InvariantViolation("closure of the arrow space", f"q = {extension.Q.labels[q]}") from exc
        matrices.append(Matrix([[columns[k][j] for k in range(dim)] for j in range(dim)], ambient.conductor, ncols=dim))

    for a in extension.Q.elements:
        for b in extension.Q.elements:
            if matrices[a] @ matrices[b] != matrices[extension.Q.mul(a, b)]:
                raise InvariantViolation("Q-action homomorphism", f"({extension.Q.labels[a]}, {extension.Q.labels[b]})")
    logger.debug("Q-action on (H^%d, H^%d): %d matrices of size %d", r, s, len(matrices), dim)
    return tuple(matrices)
