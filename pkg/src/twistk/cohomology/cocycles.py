"""Operations on nonabelian 1-cocycles: equivalence, pushforward, gauge, holonomy."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Optional

from twistk.complexes.cochains import Cocycle1, GCochain1, is_cocycle
from twistk.core.errors import InvalidCochain, ValidationError
from twistk.groups.table import GroupHom

__all__ = ["is_cocycle", "are_equivalent", "pushforward", "gauge", "holonomy"]

logger = logging.getLogger(__name__)


def are_equivalent(first: GCochain1, second: GCochain1) -> Optional[tuple[int, ...]]:
    """Find vertex data ``u`` with ``g_ij = u_i g'_ij u_j^-1`` on every edge.

    Each connected component has one free choice, the value at its smallest
    vertex; the rest propagates along edges via ``u_w = g_vw^-1 u_v g'_vw``.
    Root values are tried in element-index order.

    Returns:
        The vertex cochain ``u`` (one element per vertex), or ``None``.
    """

    if first.complex is not second.complex:
        raise ValidationError("Cocycles must live on the same complex")
    if first.group is not second.group:
        raise ValidationError("Cocycles must take values in the same group")
    complex_, group = first.complex, first.group
    mult, inv = group.mult, group.inverses
    u = [group.identity] * complex_.vertex_count

    for component in complex_.components:
        root = component[0]
        found = False
        for start in group.elements:
            assigned = {root: start}
            order = [root]
            head = 0
            while head < len(order):
                v = order[head]
                head += 1
                for w in complex_.neighbours[v]:
                    if w not in assigned:
                        assigned[w] = mult[mult[inv[first(v, w)]][assigned[v]]][second(v, w)]
                        order.append(w)
            if all(
                first(i, j) == mult[mult[assigned[i]][second(i, j)]][inv[assigned[j]]]
                for i, j in complex_.edges
                if i in assigned
            ):
                for v, value in assigned.items():
                    u[v] = value
                found = True
                break
        if not found:
            return None
    return tuple(u)


def pushforward(hom: GroupHom, cochain: GCochain1) -> Cocycle1:
    """Apply ``hom`` edgewise; the result is again a cocycle."""

    if cochain.group is not hom.source:
        raise ValidationError("Cochain values are not in the source of the homomorphism")
    return Cocycle1(cochain.complex, hom.target, tuple(hom.images[g] for g in cochain.values))


def gauge(cochain: GCochain1, vertex_values: Sequence[int]) -> Cocycle1:
    """The equivalent cocycle ``u_i g_ij u_j^-1``."""

    complex_, group = cochain.complex, cochain.group
    if len(vertex_values) != complex_.vertex_count:
        raise InvalidCochain(f"Need {complex_.vertex_count} vertex values, got {len(vertex_values)}")
    mult, inv = group.mult, group.inverses
    return Cocycle1(
        complex_,
        group,
        tuple(mult[mult[vertex_values[i]][g]][inv[vertex_values[j]]] for (i, j), g in cochain.items()),
    )


def holonomy(cochain: GCochain1, loop: Sequence[int]) -> int:
    """Product ``g_(v0 v1) g_(v1 v2) ... g_(vk v0)`` along a closed vertex path."""

    if len(loop) <= 1:
        return cochain.group.identity
    result = cochain.group.identity
    for a, b in zip(loop, [*loop[1:], loop[0]]):
        result = cochain.group.mult[result][cochain(a, b)]
    return result
