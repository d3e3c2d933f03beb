"""
Finite simplicial complexes of dimension at most three.

A complex stands for the base space: its vertex stars form the open cover,
edges the pairwise overlaps and triangles the triple overlaps. Simplices are
sorted vertex tuples.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from typing_extensions import TypeAlias

from twistk.core.errors import MissingFace, ValidationError
from twistk.core.smith import smith_decomposition
from twistk.groups.abelian import AbelianGroup

__all__ = ["Simplex", "SimplicialComplex", "ComplexReport", "validate_complex", "MAX_DIMENSION"]

logger = logging.getLogger(__name__)

Simplex: TypeAlias = tuple[int, ...]
MAX_DIMENSION = 3
EDGE_SIZE = 2


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Face-closed set of simplices on vertices ``0 .. vertex_count-1``.

    Attributes:
        vertex_count: Number of vertices; every vertex is a 0-simplex.
        simplices: Simplices of dimension one and up, sorted.
    """

    vertex_count: int
    simplices: tuple[Simplex, ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValidationError("A complex needs at least one vertex")
        normalized = set()
        for simplex in self.simplices:
            s = tuple(sorted(int(v) for v in simplex))
            if len(set(s)) != len(s):
                raise ValidationError(f"Simplex {list(simplex)} repeats a vertex")
            if any(not 0 <= v < self.vertex_count for v in s):
                raise ValidationError(f"Simplex {list(simplex)} uses a vertex outside 0..{self.vertex_count - 1}")
            if len(s) - 1 > MAX_DIMENSION:
                raise ValidationError(f"Simplex {list(simplex)} exceeds dimension {MAX_DIMENSION}")
            if len(s) >= EDGE_SIZE:
                normalized.add(s)
        ordered = tuple(sorted(normalized, key=lambda s: (len(s), s)))
        object.__setattr__(self, "simplices", ordered)
        for s in ordered:
            if len(s) <= EDGE_SIZE:
                continue
            for face in itertools.combinations(s, len(s) - 1):
                if face not in normalized:
                    raise MissingFace(s, face)

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
        """Build the complex generated by ``facets``, adding every face."""

        closed: set[Simplex] = set()
        for facet in facets:
            s = tuple(sorted(int(v) for v in facet))
            for k in range(2, len(s) + 1):
                closed.update(itertools.combinations(s, k))
        return cls(vertex_count, tuple(closed))

    # -- simplices by dimension ----------------------------------------------

    def of_dimension(self, k: int) -> tuple[Simplex, ...]:
        if k == 0:
            return tuple((v,) for v in range(self.vertex_count))
        return self._by_dimension.get(k, ())

    @cached_property
    def _by_dimension(self) -> dict[int, tuple[Simplex, ...]]:
        groups: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            groups.setdefault(len(s) - 1, []).append(s)
        return {k: tuple(v) for k, v in groups.items()}

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edges(self) -> tuple[Simplex, ...]:
        return self.of_dimension(1)

    @property
    def triangles(self) -> tuple[Simplex, ...]:
        return self.of_dimension(2)

    @property
    def tetrahedra(self) -> tuple[Simplex, ...]:
        return self.of_dimension(3)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=0)

    @cached_property
    def edge_index(self) -> dict[Simplex, int]:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def triangle_index(self) -> dict[Simplex, int]:
        return {t: k for k, t in enumerate(self.triangles)}

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.of_dimension(k)) for k in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets of connected components, ordered by smallest vertex."""

        seen = [False] * self.vertex_count
        comps = []
        for root in self.vertices:
            if seen[root]:
                continue
            seen[root] = True
            stack, comp = [root], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbours[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    # -- algebra -------------------------------------------------------------

    def coboundary_matrix(self, k: int) -> list[list[int]]:
        """Integer matrix of ``delta^k : C^k -> C^(k+1)``.

        Rows are indexed by ``(k+1)``-simplices and columns by ``k``-simplices;
        ``(delta f)(v_0..v_(k+1)) = sum_i (-1)^i f(v_0..^v_i..v_(k+1))``.
        """

        rows_simplices = self.of_dimension(k + 1)
        cols = {s: c for c, s in enumerate(self.of_dimension(k))}
        matrix = []
        for s in rows_simplices:
            row = [0] * len(cols)
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                row[cols[face]] += -1 if i % 2 else 1
            matrix.append(row)
        return matrix

    def homology(self) -> tuple[AbelianGroup, ...]:
        """Integral homology ``H_0 .. H_dim`` via Smith normal form."""

        dims = [len(self.of_dimension(k)) for k in range(self.dimension + 2)]
        snfs = [smith_decomposition(self.coboundary_matrix(k), ncols=dims[k]) for k in range(self.dimension + 1)]
        groups = []
        for k in range(self.dimension + 1):
            incoming = snfs[k - 1].rank if k > 0 else 0
            torsion = tuple(d for d in snfs[k].diagonal if d > 1)
            groups.append(AbelianGroup(torsion, dims[k] - incoming - snfs[k].rank))
        return tuple(groups)

    def relabel(self, permutation: Sequence[int]) -> SimplicialComplex:
        """Apply a vertex permutation ``v -> permutation[v]``."""

        if sorted(permutation) != list(self.vertices):
            raise ValidationError(f"{list(permutation)} is not a permutation of the vertices")
        return SimplicialComplex(self.vertex_count, tuple(tuple(permutation[v] for v in s) for s in self.simplices))

    def facets(self) -> tuple[Simplex, ...]:
        """Maximal simplices, isolated vertices included."""

        covered: set[Simplex] = set()
        for s in self.simplices:
            for k in range(1, len(s)):
                covered.update(itertools.combinations(s, k))
        facets = [s for s in self.simplices if s not in covered]
        facets.extend((v,) for v in self.vertices if (v,) not in covered)
        return tuple(sorted(facets))

    def to_json(self) -> dict[str, object]:
        return {"vertices": self.vertex_count, "facets": [list(s) for s in self.facets()]}


@dataclass(frozen=True)
class ComplexReport:
    """Outcome of :func:`validate_complex`."""

    f_vector: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    euler_characteristic: int
    homology: tuple[AbelianGroup, ...]

    def to_json(self) -> dict[str, object]:
        return {
            "ok": True,
            "f_vector": list(self.f_vector),
            "components": [list(c) for c in self.components],
            "euler_characteristic": self.euler_characteristic,
            "homology": [str(h) for h in self.homology],
        }


def validate_complex(complex_: SimplicialComplex) -> ComplexReport:
    """Re-check face closure and report components and homology.

    Raises:
        MissingFace: If some simplex lacks one of its faces.
    """

    present = set(complex_.simplices)
    for s in complex_.simplices:
        if len(s) > EDGE_SIZE:
            for face in itertools.combinations(s, len(s) - 1):
                if face not in present:
                    raise MissingFace(s, face)
    report = ComplexReport(
        f_vector=complex_.f_vector(),
        components=complex_.components,
        euler_characteristic=complex_.euler_characteristic(),
        homology=complex_.homology(),
    )
    logger.info("complex ok: f-vector %s, %d component(s)", list(report.f_vector), len(report.components))
    return report
