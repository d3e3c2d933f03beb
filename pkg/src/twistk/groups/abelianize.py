from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from twistk.groups.abelian import AbelianGroup, Element, Quotient
from twistk.groups.table import GroupTable

__all__ = ["Abelianization", "abelianize"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Abelianization:
    """``L_ab = L / [L, L]`` with the projection ``pi_L``.

    Attributes:
        source: The group ``L``.
        group: ``L_ab`` in invariant-factor form.
        images: ``images[x]`` is ``pi_L(x)``.
        commutator_subgroup: Sorted indices of ``[L, L]``.
    """

    source: GroupTable
    group: AbelianGroup
    images: tuple[Element, ...]
    commutator_subgroup: tuple[int, ...]

    def __call__(self, x: int) -> Element:
        return self.images[x]

    def kernel(self) -> tuple[int, ...]:
        zero = self.group.zero()
        return tuple(x for x in self.source.elements if self.images[x] == zero)

    def preimage(self, a: Element) -> int:
        """Smallest element index mapping to ``a``."""

        target = self.group.reduce(a)
        return next(x for x in self.source.elements if self.images[x] == target)


def abelianize(group: GroupTable) -> Abelianization:
    """Compute ``L_ab`` and ``pi_L : L -> L_ab``.

    The commutator subgroup is closed by brute force, the quotient is
    presented on a greedy generating set of cosets, and the presentation is
    put in invariant-factor form by Smith normal form.
    """

    commutators = group.commutator_subgroup
    coset_of, reps = _cosets(group, commutators)

    def coset_mul(a: int, b: int) -> int:
        return coset_of[group.mult[reps[a]][reps[b]]]

    identity = coset_of[group.identity]
    gens = _coset_generators(len(reps), identity, coset_mul)
    words = _coset_words(gens, identity, coset_mul)

    relations = []
    for c, word in words.items():
        for s, g in enumerate(gens):
            rel = list(word)
            rel[s] += 1
            relations.append([a - b for a, b in zip(rel, words[coset_mul(c, g)])])

    quotient = Quotient(len(gens), relations)
    images = tuple(quotient.project(words[coset_of[x]]) for x in group.elements)
    logger.debug("abelianized group of order %d to %s", group.order, quotient.group)
    return Abelianization(source=group, group=quotient.group, images=images, commutator_subgroup=commutators)


def _cosets(group: GroupTable, subgroup: Sequence[int]) -> tuple[list[int], list[int]]:
    """Coset index of every element and the first representative of each coset."""

    coset_of = [-1] * group.order
    reps: list[int] = []
    for x in group.elements:
        if coset_of[x] >= 0:
            continue
        for c in subgroup:
            coset_of[group.mult[x][c]] = len(reps)
        reps.append(x)
    return coset_of, reps


def _coset_generators(size: int, identity: int, mul: Callable[[int, int], int]) -> list[int]:
    gens: list[int] = []
    span = {identity}
    for c in range(size):
        if c in span:
            continue
        gens.append(c)
        frontier = list(span)
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = mul(y, g)
                    if z not in span:
                        span.add(z)
                        nxt.append(z)
            frontier = nxt
    return gens


def _coset_words(gens: Sequence[int], identity: int, mul: Callable[[int, int], int]) -> dict[int, list[int]]:
    """Exponent vector over ``gens`` of a breadth-first word for every coset."""

    words: dict[int, list[int]] = {identity: [0] * len(gens)}
    queue = [identity]
    head = 0
    while head < len(queue):
        c = queue[head]
        head += 1
        for s, g in enumerate(gens):
            d = mul(c, g)
            if d not in words:
                word = list(words[c])
                word[s] += 1
                words[d] = word
                queue.append(d)
    return words
