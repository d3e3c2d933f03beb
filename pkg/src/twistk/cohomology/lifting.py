"""
Backtracking search for lifts of ``Q``-cocycles through ``p : N -> Q``.

Edges are assigned in lexicographic order; each edge ``(i, j)`` ranges over
the fibre ``p^-1(q_ij)`` in element-index order, and a triangle ``(i, j, k)``
is checked as soon as its last edge ``(j, k)`` is assigned. The first complete
assignment is therefore the lexicographically first lift.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Optional

from twistk.complexes.cochains import Cocycle1, GCochain1
from twistk.complexes.complex import SimplicialComplex
from twistk.core.errors import SearchBudgetExceeded, ValidationError
from twistk.core.settings import DEFAULT_SETTINGS
from twistk.groups.extension import Extension, make_extension
from twistk.groups.table import GroupTable

__all__ = ["LiftSearch", "LiftOutcome", "lift_search", "random_cocycle"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftOutcome:
    """Result of a finished search: a lift or an exhaustive absence."""

    lift: Optional[Cocycle1]
    nodes: int

    @property
    def exhaustive(self) -> bool:
        return self.lift is None


class LiftSearch:
    """Depth-first search for an ``N``-cocycle ``n`` with ``p_* n = q``."""

    def __init__(
        self,
        extension: Extension,
        cocycle: GCochain1,
        *,
        budget: Optional[int] = None,
        rng: Optional[random.Random] = None,
    ):
        """Prepare a search.

        Args:
            extension: The extension ``1 -> G -> N -> Q -> 1``.
            cocycle: A ``Q``-valued cocycle.
            budget: Maximum number of visited nodes; defaults to the configured budget.
            rng: When given, fibre candidates are shuffled instead of ordered.
        """

        if cocycle.group is not extension.Q:
            raise ValidationError("Cocycle must take values in the quotient of the extension")
        self.extension = extension
        self.cocycle = cocycle
        self.budget = DEFAULT_SETTINGS.search_budget if budget is None else budget
        self.nodes = 0

        complex_: SimplicialComplex = cocycle.complex
        self._candidates: list[list[int]] = []
        for q in cocycle.values:
            fibre = list(extension.fiber(q))
            if rng is not None:
                rng.shuffle(fibre)
            self._candidates.append(fibre)

        index = complex_.edge_index
        self._closing: list[list[tuple[int, int, int]]] = [[] for _ in complex_.edges]
        for i, j, k in complex_.triangles:
            e_ij, e_jk, e_ik = index[(i, j)], index[(j, k)], index[(i, k)]
            self._closing[max(e_ij, e_jk, e_ik)].append((e_ij, e_jk, e_ik))

    def run(self) -> LiftOutcome:
        """Search to completion.

        Raises:
            SearchBudgetExceeded: If the node budget runs out first.
        """

        mult = self.extension.N.mult
        candidates, closing = self._candidates, self._closing
        count = len(candidates)
        values = [0] * count
        choice = [0] * count
        pos = 0
        while pos >= 0:
            if pos == count:
                lift = Cocycle1(self.cocycle.complex, self.extension.N, tuple(values))
                logger.debug("lift found after %d nodes", self.nodes)
                return LiftOutcome(lift, self.nodes)
            options = candidates[pos]
            if choice[pos] >= len(options):
                choice[pos] = 0
                pos -= 1
                if pos >= 0:
                    choice[pos] += 1
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.nodes - 1)
            values[pos] = options[choice[pos]]
            if all(mult[values[a]][values[b]] == values[c] for a, b, c in closing[pos]):
                pos += 1
            else:
                choice[pos] += 1
        logger.debug("no lift exists; search exhausted after %d nodes", self.nodes)
        return LiftOutcome(None, self.nodes)


def lift_search(extension: Extension, cocycle: GCochain1, *, budget: Optional[int] = None) -> Optional[Cocycle1]:
    """Return the lexicographically first lift of ``cocycle`` to ``N``, or ``None``.

    Raises:
        SearchBudgetExceeded: If more than ``budget`` nodes are visited.
    """

    return LiftSearch(extension, cocycle, budget=budget).run().lift


def random_cocycle(
    complex_: SimplicialComplex,
    group: GroupTable,
    rng: random.Random,
    *,
    budget: Optional[int] = None,
) -> Cocycle1:
    """Sample a ``group``-valued cocycle by randomized backtracking."""

    trivial_quotient = make_extension(group, group.elements)
    target = GCochain1.constant(complex_, trivial_quotient.Q)
    outcome = LiftSearch(trivial_quotient, target, budget=budget, rng=rng).run()
    if outcome.lift is None:
        raise ValidationError("No cocycle found")
    return outcome.lift
