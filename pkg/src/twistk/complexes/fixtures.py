"""Standard triangulations shipped with twistk."""

from __future__ import annotations

from typing import Callable

from twistk.complexes.complex import SimplicialComplex
from twistk.core.errors import ValidationError

__all__ = ["point", "circle", "sphere", "projective_plane", "torus", "BUILTIN_COMPLEXES", "builtin_complex"]

_MIN_POLYGON = 3

RP2_TRIANGLES = (
    (0, 1, 2),
    (0, 2, 3),
    (0, 3, 4),
    (0, 4, 5),
    (0, 1, 5),
    (1, 2, 4),
    (2, 3, 5),
    (1, 3, 4),
    (2, 4, 5),
    (1, 3, 5),
)


def point() -> SimplicialComplex:
    return SimplicialComplex(1, ())


def circle(n: int = 3) -> SimplicialComplex:
    """Boundary of an ``n``-gon."""

    if n < _MIN_POLYGON:
        raise ValidationError(f"A triangulated circle needs at least 3 vertices, got {n}")
    return SimplicialComplex.from_facets(n, [(i, (i + 1) % n) for i in range(n)])


def sphere() -> SimplicialComplex:
    """Boundary of the tetrahedron."""

    return SimplicialComplex.from_facets(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def projective_plane() -> SimplicialComplex:
    """Minimal six-vertex triangulation of the real projective plane."""

    return SimplicialComplex.from_facets(6, RP2_TRIANGLES)


def torus() -> SimplicialComplex:
    """Seven-vertex (Moebius-Csaszar) torus."""

    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_facets(7, facets)


BUILTIN_COMPLEXES: dict[str, Callable[[], SimplicialComplex]] = {
    "point": point,
    "circle": circle,
    "sphere": sphere,
    "rp2": projective_plane,
    "torus": torus,
}


def builtin_complex(name: str) -> SimplicialComplex:
    try:
        return BUILTIN_COMPLEXES[name]()
    except KeyError as exc:
        raise ValidationError(f"Unknown builtin complex {name!r}; choose from {sorted(BUILTIN_COMPLEXES)}") from exc
