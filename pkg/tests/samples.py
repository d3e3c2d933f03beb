"""Small groups, complexes and cocycles used by several test modules."""

from __future__ import annotations

from typing import Optional

from twistk.complexes.cochains import Cocycle1, GCochain1
from twistk.complexes.complex import SimplicialComplex
from twistk.complexes.fixtures import circle, projective_plane
from twistk.groups.builders import cyclic, quaternion
from twistk.groups.extension import Extension, make_extension
from twistk.groups.table import GroupTable

RP2_GENERATOR_EDGES = ((1, 3), (1, 4), (2, 4), (2, 5), (3, 5))


def z2_in_z4() -> Extension:
    return make_extension(cyclic(4), [0, 2])


def q8_center() -> Extension:
    q8 = quaternion()
    return make_extension(q8, [q8.index_of("1"), q8.index_of("-1")])


def rp2_generator(group: GroupTable, complex_: Optional[SimplicialComplex] = None) -> Cocycle1:
    """The cocycle with value ``1`` on the edges of an orientation-reversing band of ``RP^2``."""

    base = projective_plane() if complex_ is None else complex_
    return Cocycle1.of(GCochain1.from_mapping(base, group, {edge: 1 for edge in RP2_GENERATOR_EDGES}, default=group.identity))


def circle_cocycle(group: GroupTable, value: int, complex_: Optional[SimplicialComplex] = None) -> Cocycle1:
    """Monodromy ``value`` carried by the edge ``0-1`` of the triangle."""

    base = circle() if complex_ is None else complex_
    return Cocycle1.of(GCochain1.from_mapping(base, group, {(0, 1): value}, default=group.identity))
