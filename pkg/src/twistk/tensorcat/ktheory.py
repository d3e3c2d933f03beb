"""
K-theory of special categories over a point and over graphs.

Projections of ``A_r = (H^r, H^r)_G`` are classified by multiplicity vectors
over the irreducibles ``sigma`` of ``G`` occurring in ``H^r``. Over a graph the
monodromy of every independent cycle permutes those irreducibles through the
conjugation action of ``N``, and a projection extends to a global section only
when its multiplicity vector is constant on monodromy orbits.

Blocks ``(r, O)`` and ``(s, O)`` over the same orbit are joined when the
compressed section space ``P_O^s (H^r, H^s)_M P_O^r`` is nonzero, where ``M`` is
the subgroup of ``N`` generated by ``G`` and lifts of the cycle holonomies of the
component. Its dimension is ``sum_tau m_tau(r) m_tau(s)`` over the irreducibles
``tau`` of ``M`` lying over ``O``. For small degrees the same number is recomputed
as the monodromy-fixed part of the compressed ``G``-intertwiners. A block that
carries several ``tau`` is coarser than the minimal projections below it. Such
blocks, and joins between blocks carrying different ``tau``, are reported, and
the rank is then a lower bound.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from typing_extensions import TypeAlias

from twistk.cohomology.cocycles import holonomy
from twistk.complexes.cochains import Cocycle1
from twistk.complexes.complex import SimplicialComplex
from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import DimensionMismatch, InvariantViolation, NotOneDimensional, ValidationError
from twistk.core.linalg import nullspace, rank
from twistk.core.matrices import Matrix
from twistk.groups.abelian import AbelianGroup, Element, Quotient
from twistk.groups.extension import Extension
from twistk.repcat.characters import CharacterTable, character_table
from twistk.repcat.intertwiners import central_idempotent
from twistk.repcat.reps import UnitaryRep
from twistk.tensorcat.special import SpecialCategory

__all__ = [
    "BlockLabel",
    "ProjectionObject",
    "CycleMonodromy",
    "MonodromyGroup",
    "KGroupResult",
    "TrivialInclusion",
    "block_labels",
    "irreducible_permutation",
    "k0_point",
    "k0_graph",
    "k0_trivial_inclusion",
]

logger = logging.getLogger(__name__)

Orbit: TypeAlias = tuple[int, ...]
Node: TypeAlias = tuple[int, int, Orbit]
Cycle: TypeAlias = tuple[tuple[int, int], tuple[int, ...], int]
Join: TypeAlias = tuple[int, int, int, Orbit]


@dataclass(frozen=True)
class BlockLabel:
    """Wedderburn block of ``A_r`` for the irreducible ``sigma``."""

    r: int
    sigma: int
    multiplicity: int

    def to_json(self) -> dict[str, int]:
        return {"r": self.r, "sigma": self.sigma, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class ProjectionObject:
    """A projection of ``A_r`` given by its multiplicity in each block.

    ``multiplicities[sigma]`` counts copies of ``sigma`` inside ``H^r``; the
    vector must not exceed the block multiplicities and, over a graph, must be
    constant on monodromy orbits of its component.
    """

    r: int
    multiplicities: tuple[int, ...]
    component: int = 0

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValidationError(f"Projection level {self.r} is negative")
        if any(m < 0 for m in self.multiplicities):
            raise ValidationError(f"Projection multiplicities {list(self.multiplicities)} must be non-negative")


@dataclass(frozen=True)
class CycleMonodromy:
    """Holonomy of one independent cycle and its permutation of irreducibles."""

    component: int
    edge: tuple[int, int]
    loop: tuple[int, ...]
    holonomy: int
    permutation: tuple[int, ...]

    def to_json(self) -> dict[str, object]:
        return {
            "component": self.component,
            "edge": list(self.edge),
            "loop": list(self.loop),
            "holonomy": self.holonomy,
            "permutation": list(self.permutation),
        }


@dataclass(frozen=True, eq=False)
class MonodromyGroup:
    """The subgroup ``M`` of ``N`` generated by ``G`` and the section lifts of one component's holonomies.

    Attributes:
        members: Elements of the ambient group, sorted.
        holonomies: Holonomies in ``Q`` of the component's independent cycles.
        table: Character table of ``M``.
        restrictions: For each irreducible ``tau`` of ``M``, the irreducibles of
            ``G`` occurring in its restriction.
        multiplicities: ``m_tau(r)`` for ``r = 0 .. r_max``.
    """

    members: tuple[int, ...]
    holonomies: tuple[int, ...]
    table: CharacterTable
    restrictions: tuple[frozenset[int], ...]
    multiplicities: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def over(self, orbit: Orbit) -> tuple[int, ...]:
        """Irreducibles of ``M`` whose restriction lies in ``orbit``."""

        return tuple(tau for tau, below in enumerate(self.restrictions) if below <= set(orbit))

    def support(self, r: int, orbit: Orbit) -> frozenset[int]:
        return frozenset(tau for tau in self.over(orbit) if self.multiplicities[r][tau])

    def fixed_dimension(self, orbit: Orbit, r: int, s: int) -> int:
        """Dimension of ``P_O^s (H^r, H^s)_M P_O^r``."""

        return sum(self.multiplicities[r][tau] * self.multiplicities[s][tau] for tau in self.over(orbit))

    def check_orbits(self, orbits: Sequence[Orbit]) -> None:
        """Every restriction lies inside a single orbit.

        Raises:
            InvariantViolation: If some irreducible of ``M`` meets two orbits.
        """

        for tau, below in enumerate(self.restrictions):
            if sum(1 for orbit in orbits if below & set(orbit)) != 1:
                raise InvariantViolation("restriction lies over one orbit", f"irreducible {tau} of the monodromy group")

    def reached(self) -> bool:
        return all(any(row[tau] for row in self.multiplicities) for tau in range(len(self.table)))

    def to_json(self) -> dict[str, object]:
        return {
            "order": self.order,
            "holonomies": list(self.holonomies),
            "degrees": list(self.table.degrees),
            "restrictions": [sorted(below) for below in self.restrictions],
        }


@dataclass(frozen=True, eq=False)
class KGroupResult:
    """``K_0`` of the projections up to level ``r_max`` with its generators.

    Attributes:
        group: The Grothendieck group, free of rank :attr:`rank`.
        generators: One description per generator.
        classes: For each generator, the blocks ``(component, r, orbit)`` in its class.
        blocks: ``m_sigma(r)`` for every level and irreducible occurring.
        orbits: Monodromy orbits of irreducibles, per component.
        monodromy: Cycle holonomies used to build the orbits.
        groups: Monodromy group of each component.
        units: Class of ``iota_r`` per component and level.
        semigroup: Generators of the positive cone, as multiplicity vectors over :attr:`generators`.
        stabilized_at: First level after which no new class appears, or ``None``
            when some irreducible of a monodromy group is unreached by ``r_max`` (lower bound).
        verified: Degree pairs whose compressed dimensions were also computed from matrices.
        unresolved: Joins ``(component, r, s, orbit)`` whose blocks carry different
            irreducibles of the monodromy group.
        split: Blocks ``(component, r, orbit)`` carrying more than one such irreducible.
    """

    group: AbelianGroup
    generators: tuple[str, ...]
    classes: tuple[tuple[Node, ...], ...]
    blocks: tuple[BlockLabel, ...]
    orbits: tuple[tuple[Orbit, ...], ...]
    monodromy: tuple[CycleMonodromy, ...]
    groups: tuple[MonodromyGroup, ...]
    units: tuple[tuple[Element, ...], ...]
    semigroup: tuple[Element, ...]
    r_max: int
    stabilized_at: Optional[int]
    verified: tuple[tuple[int, int], ...]
    unresolved: tuple[Join, ...]
    split: tuple[Node, ...]
    _class_of: Mapping[Node, int] = field(repr=False)
    _multiplicities: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    @property
    def exact(self) -> bool:
        """Every class is a single minimal projection class of the monodromy group."""

        return not self.unresolved and not self.split

    def multiplicity(self, r: int, sigma: int) -> int:
        return self._multiplicities[r][sigma]

    def unit_class(self, r: int, component: int = 0) -> Element:
        """Class of the unit projection of ``A_r`` on one component."""

        return self.units[component][r]

    def class_of(self, component: int, r: int, orbit: Orbit) -> Element:
        node = (component, r, tuple(sorted(orbit)))
        if node not in self._class_of:
            raise ValidationError(f"No block for orbit {list(orbit)} at level {r} on component {component}")
        return self.group.generator(self._class_of[node])

    def evaluate(self, projection: ProjectionObject) -> Element:
        """K-class of a projection.

        Raises:
            ValidationError: If the level exceeds ``r_max``, the vector exceeds a
                block multiplicity, or it is not constant on an orbit.
        """

        r, component = projection.r, projection.component
        if r > self.r_max:
            raise ValidationError(f"Projection level {r} exceeds computed range {self.r_max}")
        if not 0 <= component < len(self.orbits):
            raise ValidationError(f"No component {component}")
        m = projection.multiplicities
        if len(m) != len(self._multiplicities[r]):
            raise ValidationError(f"Projection needs {len(self._multiplicities[r])} multiplicities, got {len(m)}")
        vector = [0] * self.rank
        for orbit in self.orbits[component]:
            values = {m[sigma] for sigma in orbit}
            if len(values) > 1:
                raise ValidationError(f"Projection is not constant on orbit {list(orbit)}: {sorted(values)}")
            count = values.pop()
            if count > self._multiplicities[r][orbit[0]]:
                raise ValidationError(
                    f"Multiplicity {count} exceeds block size {self._multiplicities[r][orbit[0]]} "
                    f"for orbit {list(orbit)} at level {r}"
                )
            if count:
                vector[self._class_of[(component, r, orbit)]] += count
        return tuple(vector)

    def check_semigroup(self, samples: int = 200, seed: int = 0) -> int:
        """Check the positive cone on random orthogonal sums; return the number of sums checked.

        For projections ``p``, ``q`` and ``e`` at one level with ``p + e`` and
        ``q + e`` fitting in the blocks: classes add, a nonzero projection has a
        nonzero class inside the cone spanned by :attr:`semigroup`, and equal
        classes of ``p + e`` and ``q + e`` force equal classes of ``p`` and ``q``.

        Raises:
            InvariantViolation: If one of these relations fails.
        """

        basis = {tuple(int(j == k) for j in range(self.rank)) for k in range(self.rank)}
        if set(self.semigroup) != basis:
            raise InvariantViolation("positive cone basis", f"generators {[list(v) for v in self.semigroup]}")
        rng = random.Random(seed)
        for _ in range(samples):
            component = rng.randrange(len(self.orbits))
            r = rng.randrange(self.r_max + 1)
            p, q, e = self._sample(rng, component, r)
            cp, cq, ce = (self.evaluate(ProjectionObject(r, v, component)) for v in (p, q, e))
            cpe = self.evaluate(ProjectionObject(r, _add(p, e), component))
            cqe = self.evaluate(ProjectionObject(r, _add(q, e), component))
            where = f"level {r}, component {component}, p = {list(p)}, e = {list(e)}"
            if cpe != _add(cp, ce) or cqe != _add(cq, ce):
                raise InvariantViolation("additivity of orthogonal sums", where)
            for vector, cls_ in ((p, cp), (q, cq), (e, ce)):
                if min(cls_, default=0) < 0 or (any(vector) and not any(cls_)):
                    raise InvariantViolation("positivity of classes", f"{where}, class {list(cls_)}")
            if cpe == cqe and cp != cq:
                raise InvariantViolation("cancellation", f"{where}, q = {list(q)}")
        logger.debug("positive cone checked on %d sampled sums", samples)
        return samples

    def _sample(self, rng: random.Random, component: int, r: int) -> tuple[tuple[int, ...], ...]:
        size = len(self._multiplicities[r])
        p, q, e = [0] * size, [0] * size, [0] * size
        for orbit in self.orbits[component]:
            block = self._multiplicities[r][orbit[0]]
            shared = rng.randint(0, block)
            first, second = rng.randint(0, block - shared), rng.randint(0, block - shared)
            for sigma in orbit:
                p[sigma], q[sigma], e[sigma] = first, second, shared
        return tuple(p), tuple(q), tuple(e)

    def to_json(self) -> dict[str, object]:
        return {
            "rank": self.rank,
            "group": str(self.group),
            "generators": list(self.generators),
            "stabilizedAt": self.stabilized_at,
            "rMax": self.r_max,
            "orbits": [[list(o) for o in comp] for comp in self.orbits],
            "monodromy": [m.to_json() for m in self.monodromy],
            "monodromyGroups": [{"component": c, **g.to_json()} for c, g in enumerate(self.groups)],
            "blocks": [b.to_json() for b in self.blocks],
            "units": [[list(u) for u in comp] for comp in self.units],
            "semigroup": [list(v) for v in self.semigroup],
            "verified": [list(p) for p in self.verified],
            "exact": self.exact,
            "unresolved": [
                {"component": c, "levels": [r, s], "orbit": list(orbit)} for c, r, s, orbit in self.unresolved
            ],
            "splitBlocks": [{"component": c, "r": r, "orbit": list(orbit)} for c, r, orbit in self.split],
        }


def _add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class TrivialInclusion:
    """The map ``K^0(X) = Z^components -> K`` sending a component to ``[iota_0]``."""

    result: KGroupResult
    images: tuple[Element, ...]
    generated: AbelianGroup
    cokernel: AbelianGroup

    @property
    def injective(self) -> bool:
        return rank([list(v) for v in self.images], one=Fraction(1)) == len(self.images) if self.images else True

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.cokernel.is_trivial

    def to_json(self) -> dict[str, object]:
        return {
            "source": str(AbelianGroup.free(len(self.images))),
            "target": str(self.result.group),
            "inclusionMap": [list(v) for v in self.images],
            "generatedByUnits": str(self.generated),
            "cokernel": str(self.cokernel),
            "injective": self.injective,
            "isomorphism": self.isomorphism,
        }


def block_labels(table: CharacterTable, rep: UnitaryRep, r_max: int) -> list[tuple[int, ...]]:
    """``m_sigma(r)`` for ``r = 0 .. r_max`` from character inner products.

    Raises:
        InvariantViolation: If ``sum m_sigma(r) dim(sigma) != d^r``.
    """

    chi = rep.character
    degrees = table.degrees
    power = [Cyclotomic.one() for _ in chi]
    result = []
    for r in range(r_max + 1):
        multiplicities = table.decompose(power)
        if sum(m * deg for m, deg in zip(multiplicities, degrees)) != rep.d**r:
            raise InvariantViolation("block multiplicities", f"level {r}")
        result.append(multiplicities)
        power = [x * y for x, y in zip(power, chi)]
    return result


def irreducible_permutation(extension: Extension, table: CharacterTable, u: int) -> tuple[int, ...]:
    """Permutation of irreducibles of ``G`` by ``(u . sigma)(g) = sigma(u^-1 g u)``.

    Raises:
        InvariantViolation: If a conjugated character is not in the table.
    """

    N, G = extension.N, extension.G
    local = {n: g for g, n in enumerate(extension.i.images)}
    u_inv = N.inv(u)
    shifted = [local[N.conj(u_inv, extension.i(g))] for g in G.elements]
    index = {table.character(k): k for k in range(len(table))}
    perm = []
    for k in range(len(table)):
        chi = table.character(k)
        moved = tuple(chi[shifted[g]] for g in G.elements)
        if moved not in index:
            raise InvariantViolation("conjugation permutes irreducibles", f"character {k} under element {u}")
        perm.append(index[moved])
    return tuple(perm)


def _partition(size: int, pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Blocks of the equivalence generated by ``pairs``, each sorted, ordered by least member."""

    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    buckets: dict[int, list[int]] = {}
    for x in range(size):
        buckets.setdefault(find(x), []).append(x)
    return [b for _, b in sorted(buckets.items())]


def _orbits(size: int, permutations: Sequence[Sequence[int]]) -> tuple[Orbit, ...]:
    pairs = [(a, b) for perm in permutations for a, b in enumerate(perm)]
    return tuple(tuple(b) for b in _partition(size, pairs))


def _cycles(complex_: SimplicialComplex, cocycle: Cocycle1, component: int) -> list[Cycle]:
    """Spanning-tree cycles of one component with their holonomies."""

    vertices = complex_.components[component]
    root = vertices[0]
    parent = {root: root}
    order = [root]
    for v in order:
        for w in complex_.neighbours[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)

    def path(v: int) -> list[int]:
        out = [v]
        while out[-1] != root:
            out.append(parent[out[-1]])
        return out[::-1]

    cycles = []
    for a, b in complex_.edges:
        if a not in parent or parent.get(b) == a or parent.get(a) == b:
            continue
        loop = path(a) + path(b)[::-1][:-1]
        cycles.append(((a, b), tuple(loop), holonomy(cocycle, loop)))
    return cycles


def _monodromy_group(
    ambient: UnitaryRep,
    embedding: Sequence[int],
    lifts: Sequence[tuple[int, int]],
    table: CharacterTable,
    r_max: int,
) -> MonodromyGroup:
    """Build ``M`` inside ``ambient.group`` from ``G`` and the lifts of the holonomies.

    Args:
        ambient: Representation of the group containing ``M``.
        embedding: ``embedding[g]`` is the image in ``ambient.group`` of ``g`` in ``G``.
        lifts: Pairs ``(q, u)`` of a holonomy and its section lift.
        table: Character table of ``G``.
        r_max: Last tensor level.
    """

    members = ambient.group.closure([*embedding, *(u for _, u in lifts)])
    if len(members) == ambient.group.order:
        rep, members = ambient, tuple(ambient.group.elements)
    else:
        rep, members = ambient.restrict(members)
    position = {x: k for k, x in enumerate(members)}
    inside = [position[x] for x in embedding]
    m_table = character_table(rep.group)
    restrictions = []
    for tau in range(len(m_table)):
        chi = m_table.character(tau)
        restricted = table.decompose([chi[x] for x in inside])
        restrictions.append(frozenset(sigma for sigma, m in enumerate(restricted) if m))
    logger.debug("monodromy group of order %d with %d irreducibles", len(members), len(m_table))
    return MonodromyGroup(
        members=members,
        holonomies=tuple(q for q, _ in lifts),
        table=m_table,
        restrictions=tuple(restrictions),
        multiplicities=tuple(block_labels(m_table, rep, r_max)),
    )


def _orbit_projector(rep: UnitaryRep, table: CharacterTable, orbit: Orbit, level: int) -> Matrix:
    size = rep.d**level
    total = Matrix.zeros(size, size, rep.conductor)
    for sigma in orbit:
        total = total + central_idempotent(rep, table.character(sigma), table.degrees[sigma], level)
    return total


def _fixed_section_dimension(
    category: SpecialCategory,
    table: CharacterTable,
    orbit: Orbit,
    degree: tuple[int, int],
    holonomies: Sequence[int],
) -> int:
    """Rank of the compressed ``G``-intertwiners ``H^r -> H^s`` fixed by every holonomy."""

    r, s = degree
    rep = category.dual.restricted
    arrows = category.dual.arrows(r, s)
    if not arrows.dimension:
        return 0
    one = Cyclotomic.one(rep.conductor)
    identity = Matrix.identity(arrows.dimension, rep.conductor)
    action = category.dual.action(r, s)
    equations = [list(row) for h in holonomies for row in (action[h] - identity).rows]
    fixed = nullspace(equations, arrows.dimension, one=one) if equations else [list(row) for row in identity.rows]
    p_r, p_s = _orbit_projector(rep, table, orbit, r), _orbit_projector(rep, table, orbit, s)
    compressed = [(p_s @ arrows.combine(v) @ p_r).flatten() for v in fixed]
    return rank(compressed, one=one) if compressed else 0


def _nodes(multiplicities: Sequence[Sequence[int]], orbits: Sequence[tuple[Orbit, ...]]) -> list[Node]:
    nodes: list[Node] = []
    for c, comp_orbits in enumerate(orbits):
        for orbit in comp_orbits:
            for r, row in enumerate(multiplicities):
                present = {row[sigma] > 0 for sigma in orbit}
                if len(present) > 1:
                    raise InvariantViolation("orbit-constant blocks", f"orbit {list(orbit)} at level {r}")
                if present.pop():
                    nodes.append((c, r, orbit))
    return nodes


@dataclass
class _Joins:
    pairs: list[Join] = field(default_factory=list)
    verified: set[tuple[int, int]] = field(default_factory=set)
    unresolved: list[Join] = field(default_factory=list)


def _joins(
    nodes: Sequence[Node],
    groups: Sequence[MonodromyGroup],
    table: CharacterTable,
    category: Optional[SpecialCategory],
) -> _Joins:
    """Pairs of blocks over one orbit with a nonzero monodromy-fixed compressed section space.

    Raises:
        DimensionMismatch: If the matrix computation disagrees with the character count.
    """

    levels: dict[tuple[int, Orbit], list[int]] = {}
    for c, r, orbit in nodes:
        levels.setdefault((c, orbit), []).append(r)
    joins = _Joins()
    for (c, orbit), present in levels.items():
        group = groups[c]
        for r, s in combinations(present, 2):
            dimension = group.fixed_dimension(orbit, r, s)
            if category is not None and r + s <= category.rs_bound:
                computed = _fixed_section_dimension(category, table, orbit, (r, s), group.holonomies)
                if computed != dimension:
                    raise DimensionMismatch(computed, dimension, f"fixed compressed sections for orbit {list(orbit)}")
                joins.verified.add((r, s))
            if not dimension:
                continue
            joins.pairs.append((c, r, s, orbit))
            if group.support(r, orbit) != group.support(s, orbit):
                joins.unresolved.append((c, r, s, orbit))
    return joins


def _grothendieck(nodes: Sequence[Node], pairs: Sequence[Join]) -> tuple[AbelianGroup, list[list[int]]]:
    """Free abelian group on the nodes modulo the joins, with its classes.

    Raises:
        InvariantViolation: If the quotient is not free on the classes.
    """

    node_index = {node: k for k, node in enumerate(nodes)}
    joined = [(node_index[(c, r, orbit)], node_index[(c, s, orbit)]) for c, r, s, orbit in pairs]
    partition = _partition(len(nodes), joined)
    relations = []
    for a, b in joined:
        row = [0] * len(nodes)
        row[a], row[b] = 1, -1
        relations.append(row)
    group = Quotient(len(nodes), relations).group
    if group != AbelianGroup.free(len(partition)):
        raise InvariantViolation("free Grothendieck group", f"{group} with {len(partition)} classes")
    return group, partition


def _units(
    multiplicities: Sequence[Sequence[int]],
    orbits: Sequence[tuple[Orbit, ...]],
    class_of: Mapping[Node, int],
    size: int,
) -> tuple[tuple[Element, ...], ...]:
    units = []
    for c, comp_orbits in enumerate(orbits):
        per_level = []
        for r, row in enumerate(multiplicities):
            vector = [0] * size
            for orbit in comp_orbits:
                if row[orbit[0]]:
                    vector[class_of[(c, r, orbit)]] += row[orbit[0]]
            per_level.append(tuple(vector))
        units.append(tuple(per_level))
    return tuple(units)


def _k0(
    rep: UnitaryRep,
    orbits: Sequence[tuple[Orbit, ...]],
    monodromy: Sequence[CycleMonodromy],
    groups: Sequence[MonodromyGroup],
    category: Optional[SpecialCategory] = None,
) -> KGroupResult:
    r_max = len(groups[0].multiplicities) - 1
    table = character_table(rep.group)
    multiplicities = block_labels(table, rep, r_max)
    for monodromy_group, comp_orbits in zip(groups, orbits):
        monodromy_group.check_orbits(comp_orbits)
    nodes = _nodes(multiplicities, orbits)
    joins = _joins(nodes, groups, table, category)
    group, partition = _grothendieck(nodes, joins.pairs)
    class_of = {nodes[k]: idx for idx, members in enumerate(partition) for k in members}

    classes = tuple(tuple(nodes[k] for k in members) for members in partition)
    stabilized_at: Optional[int] = None
    if all(g.reached() for g in groups):
        stabilized_at = max((cls[0][1] for cls in classes), default=0)
    result = KGroupResult(
        group=group,
        generators=tuple(_describe(table, cls, len(orbits) > 1) for cls in classes),
        classes=classes,
        blocks=tuple(
            BlockLabel(r, sigma, m) for r, row in enumerate(multiplicities) for sigma, m in enumerate(row) if m
        ),
        orbits=tuple(orbits),
        monodromy=tuple(monodromy),
        groups=tuple(groups),
        units=_units(multiplicities, orbits, class_of, len(partition)),
        semigroup=tuple(sorted({group.generator(class_of[node]) for node in nodes}, reverse=True)),
        r_max=r_max,
        stabilized_at=stabilized_at,
        verified=tuple(sorted(joins.verified)),
        unresolved=tuple(joins.unresolved),
        split=tuple((c, r, orbit) for c, r, orbit in nodes if len(groups[c].support(r, orbit)) > 1),
        _class_of=class_of,
        _multiplicities=tuple(multiplicities),
    )
    result.check_semigroup(samples=32)
    if not result.exact:
        logger.warning("K0 classes are coarser than the monodromy group's irreducibles; rank is a lower bound")
    logger.info("K0 = %s (r_max %d, stabilized at %s)", group, r_max, stabilized_at)
    return result


def _describe(table: CharacterTable, nodes: Sequence[Node], with_component: bool) -> str:
    c, _, orbit = nodes[0]
    levels = ",".join(str(n[1]) for n in nodes)
    names = "+".join(f"chi{sigma}(deg {table.degrees[sigma]})" for sigma in orbit)
    prefix = f"component {c}: " if with_component else ""
    return f"{prefix}{names} @ r={levels}"


def k0_point(rep: UnitaryRep, r_max: Optional[int] = None) -> KGroupResult:
    """``K_0`` over a point: free on the irreducibles met in ``H^r`` for ``r <= r_max``.

    ``r_max`` defaults to ``|G|``.
    """

    r_max = rep.group.order if r_max is None else r_max
    if r_max < 0:
        raise ValidationError(f"r_max must be non-negative, got {r_max}")
    table = character_table(rep.group)
    group = _monodromy_group(rep, tuple(rep.group.elements), (), table, r_max)
    return _k0(rep, [tuple((k,) for k in range(len(table)))], [], [group])


def k0_graph(category: SpecialCategory, r_max: Optional[int] = None) -> KGroupResult:
    """``K_0`` of the special category over a graph, summed over components.

    ``r_max`` defaults to the largest order of a component's monodromy group.

    Raises:
        NotOneDimensional: If the base complex has triangles.
    """

    complex_ = category.complex
    if complex_.triangles:
        raise NotOneDimensional(f"K-theory needs a graph, base has {len(complex_.triangles)} triangles")
    if r_max is not None and r_max < 0:
        raise ValidationError(f"r_max must be non-negative, got {r_max}")
    rep = category.dual.restricted
    extension = category.extension
    table = character_table(rep.group)
    embedding = tuple(extension.i(g) for g in rep.group.elements)

    orbits = []
    monodromy = []
    lifts: list[list[tuple[int, int]]] = []
    for c in range(len(complex_.components)):
        perms = []
        lifts.append([])
        for edge, loop, h in _cycles(complex_, category.cocycle, c):
            perm = irreducible_permutation(extension, table, extension.section[h])
            perms.append(perm)
            lifts[c].append((h, extension.section[h]))
            monodromy.append(CycleMonodromy(c, edge, loop, h, perm))
        orbits.append(_orbits(len(table), perms))
    logger.debug("monodromy orbits per component: %s", orbits)

    ambient = category.dual.ambient
    if r_max is None:
        orders = (len(ambient.group.closure([*embedding, *(u for _, u in comp)])) for comp in lifts)
        r_max = max(orders, default=rep.group.order)
    groups = [_monodromy_group(ambient, embedding, comp, table, r_max) for comp in lifts]
    return _k0(rep, orbits, monodromy, groups, category)


def k0_trivial_inclusion(
    source: Union[SpecialCategory, UnitaryRep, KGroupResult], r_max: Optional[int] = None
) -> TrivialInclusion:
    """The morphism ``K^0(X) -> K`` and the subgroup generated by the units ``iota_r``."""

    if isinstance(source, KGroupResult):
        result = source
    elif isinstance(source, UnitaryRep):
        result = k0_point(source, r_max)
    else:
        result = k0_graph(source, r_max)
    images = tuple(units[0] for units in result.units)
    vectors = [list(u) for units in result.units for u in units]
    return TrivialInclusion(
        result=result,
        images=images,
        generated=AbelianGroup.free(rank(vectors, one=Fraction(1))),
        cokernel=Quotient(result.rank, vectors).group,
    )
