"""
Extensions ``1 -> G -> N -> Q -> 1`` and their abelianized bottom row.

The abelianized row ``0 -> G_ab -> N_ab -> Q_ab -> 0`` is exact for the
normalizer extensions of unitary groups, but not for arbitrary finite
extensions, so :func:`abelianized_row` verifies exactness and raises
:class:`~twistk.core.errors.ExactnessFailure` otherwise.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional

from twistk.core.errors import ExactnessFailure, InvariantViolation, ValidationError
from twistk.groups.abelian import AbelianGroup, AbelianHom, Element
from twistk.groups.abelianize import Abelianization, abelianize
from twistk.groups.table import GroupHom, GroupTable

__all__ = ["Extension", "AbelianizedExtension", "make_extension", "abelianized_row", "induced_hom"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Extension:
    """A short exact sequence with a set-theoretic section ``s : Q -> N``."""

    G: GroupTable
    N: GroupTable
    Q: GroupTable
    i: GroupHom
    p: GroupHom
    section: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.i.source is not self.G or self.i.target is not self.N:
            raise ValidationError("Inclusion must map G into N")
        if self.p.source is not self.N or self.p.target is not self.Q:
            raise ValidationError("Projection must map N onto Q")
        if not self.i.is_injective():
            raise ValidationError("Inclusion G -> N is not injective")
        if not self.p.is_surjective():
            raise ValidationError("Projection N -> Q is not surjective")
        if set(self.i.image()) != set(self.p.kernel()):
            raise ValidationError("Image of G differs from the kernel of the projection")
        self._check_section(self.section)

    def _check_section(self, section: Sequence[int]) -> None:
        if len(section) != self.Q.order:
            raise ValidationError(f"Section needs {self.Q.order} entries, got {len(section)}")
        if any(self.p(section[q]) != q for q in self.Q.elements):
            raise ValidationError("Section is not a right inverse of the projection")
        if section[self.Q.identity] != self.N.identity:
            raise ValidationError("Section must send the identity to the identity")

    @classmethod
    def from_parts(  # noqa: PLR0913
        cls,
        G: GroupTable,
        N: GroupTable,
        Q: GroupTable,
        inclusion: Sequence[int],
        projection: Sequence[int],
        section: Optional[Sequence[int]] = None,
    ) -> Extension:
        """Validate an extension given by image lists.

        Without ``section`` each ``q`` maps to the smallest element of its fibre
        and the identity to the identity.
        """

        i = GroupHom(G, N, tuple(inclusion))
        p = GroupHom(N, Q, tuple(projection))
        if section is None:
            chosen = [-1] * Q.order
            for x in N.elements:
                if chosen[p(x)] < 0:
                    chosen[p(x)] = x
            if min(chosen) < 0:
                raise ValidationError("Projection N -> Q is not surjective")
            chosen[Q.identity] = N.identity
            section = chosen
        return cls(G=G, N=N, Q=Q, i=i, p=p, section=tuple(section))

    def with_section(self, section: Iterable[int]) -> Extension:
        """Same extension, different coset representatives."""

        return replace(self, section=tuple(section))

    @cached_property
    def kernel_elements(self) -> tuple[int, ...]:
        """Image of ``G`` in ``N``."""

        return self.i.image()

    def fiber(self, q: int) -> tuple[int, ...]:
        """``p^-1(q)`` in increasing index order."""

        return self._fibers[q]

    @cached_property
    def _fibers(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in self.Q.elements]
        for n in self.N.elements:
            buckets[self.p(n)].append(n)
        return tuple(tuple(b) for b in buckets)

    def describe(self) -> dict[str, object]:
        return {
            "orders": {"G": self.G.order, "N": self.N.order, "Q": self.Q.order},
            "inclusion": list(self.i.images),
            "projection": list(self.p.images),
            "section": list(self.section),
            "quotient_labels": list(self.Q.labels),
        }


def make_extension(N: GroupTable, subgroup: Iterable[int]) -> Extension:
    """Build ``1 -> G -> N -> N/G -> 1`` for a normal subgroup ``G``.

    Cosets are numbered by their smallest element index and the section picks
    that smallest element, except that the identity coset maps to the identity.

    Raises:
        NotASubgroup: If ``subgroup`` is not a subgroup.
        NotNormal: If it is not normal in ``N``.
    """

    members = N.check_normal(subgroup)
    G, embedding = N.subgroup_table(members)
    coset_of = [-1] * N.order
    reps: list[int] = []
    for x in N.elements:
        if coset_of[x] >= 0:
            continue
        for g in members:
            coset_of[N.mult[x][g]] = len(reps)
        reps.append(x)

    mult = tuple(tuple(coset_of[N.mult[a][b]] for b in reps) for a in reps)
    Q = GroupTable(
        mult=mult,
        identity=coset_of[N.identity],
        inverses=tuple(coset_of[N.inverses[a]] for a in reps),
        labels=tuple(f"[{N.labels[a]}]" for a in reps),
    )
    section = list(reps)
    section[Q.identity] = N.identity
    extension = Extension(
        G=G,
        N=N,
        Q=Q,
        i=GroupHom(G, N, embedding),
        p=GroupHom(N, Q, tuple(coset_of)),
        section=tuple(section),
    )
    logger.debug("built extension %d -> %d -> %d", G.order, N.order, Q.order)
    return extension


def induced_hom(source: Abelianization, target: Abelianization, hom: GroupHom) -> AbelianHom:
    """The map ``L_ab -> L'_ab`` induced by ``hom : L -> L'``, checked on every element."""

    rows = []
    for k in range(source.group.rank):
        preimage = source.preimage(source.group.generator(k))
        rows.append(target(hom(preimage)))
    induced = AbelianHom(source.group, target.group, tuple(rows))
    for x in source.source.elements:
        if induced(source(x)) != target(hom(x)):
            raise InvariantViolation("induced map on abelianizations", f"element {x}")
    return induced


@dataclass(frozen=True, eq=False)
class AbelianizedExtension:
    """Bottom row ``0 -> G_ab -> N_ab -> Q_ab -> 0``, verified exact."""

    extension: Extension
    G_ab: Abelianization
    N_ab: Abelianization
    Q_ab: Abelianization
    iab: AbelianHom
    pab: AbelianHom

    @property
    def Gab(self) -> AbelianGroup:
        return self.G_ab.group

    @property
    def Nab(self) -> AbelianGroup:
        return self.N_ab.group

    @property
    def Qab(self) -> AbelianGroup:
        return self.Q_ab.group

    @cached_property
    def pab_section(self) -> dict[Element, Element]:
        """For each ``Q_ab`` element, the first ``N_ab`` element (in enumeration order) over it."""

        section: dict[Element, Element] = {}
        for b in self.Nab.elements():
            section.setdefault(self.pab(b), b)
        return section

    @cached_property
    def iab_inverse(self) -> dict[Element, Element]:
        return {self.iab(a): a for a in self.Gab.elements()}


def abelianized_row(extension: Extension) -> AbelianizedExtension:
    """Abelianize all three groups, induce ``iab`` and ``pab``, and verify exactness.

    Raises:
        ExactnessFailure: With diagnosis ``"iab not injective"``,
            ``"pab not surjective"`` or ``"image(iab) != kernel(pab)"``.
    """

    G_ab = abelianize(extension.G)
    N_ab = abelianize(extension.N)
    Q_ab = abelianize(extension.Q)
    iab = induced_hom(G_ab, N_ab, extension.i)
    pab = induced_hom(N_ab, Q_ab, extension.p)

    if not iab.is_injective():
        raise ExactnessFailure("iab not injective", f"{G_ab.group} -> {N_ab.group} has kernel {list(iab.kernel())}")
    if not pab.is_surjective():
        raise ExactnessFailure("pab not surjective", f"{N_ab.group} -> {Q_ab.group}")
    if iab.image() != frozenset(pab.kernel()):
        raise ExactnessFailure("image(iab) != kernel(pab)", f"{G_ab.group} -> {N_ab.group} -> {Q_ab.group}")
    logger.debug("abelianized row %s -> %s -> %s is exact", G_ab.group, N_ab.group, Q_ab.group)
    return AbelianizedExtension(extension, G_ab, N_ab, Q_ab, iab, pab)
