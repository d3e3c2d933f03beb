"""Built-in representations used by fixtures and tests."""

from __future__ import annotations

import re
from collections.abc import Callable

from typing_extensions import TypeAlias

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import ValidationError
from twistk.core.matrices import Matrix
from twistk.groups.builders import (
    QUATERNION_MATRICES,
    closure,
    cycle_notation,
    cyclic,
    direct_product,
    quaternion,
    trivial,
)
from twistk.repcat.reps import UnitaryRep

__all__ = [
    "cyclic_u1",
    "trivial_ud",
    "quaternion_u2",
    "symmetric3_u2",
    "product_rep",
    "builtin_rep",
    "BUILTIN_REPS",
]

Pair: TypeAlias = tuple[tuple[int, ...], Matrix]


def cyclic_u1(n: int) -> UnitaryRep:
    """``Z/n`` acting on ``C`` by ``k -> zeta_n^k``."""

    return UnitaryRep.from_matrices(
        cyclic(n),
        [Matrix([[Cyclotomic.root_of_unity(n, k)]], n) for k in range(n)],
        conductor=n,
    )


def trivial_ud(d: int) -> UnitaryRep:
    return UnitaryRep.from_matrices(trivial(), [Matrix.identity(d)])


def quaternion_u2() -> UnitaryRep:
    """``Q8`` as unit quaternions in ``SU(2)``."""

    table = quaternion()
    return UnitaryRep.from_matrices(table, [QUATERNION_MATRICES[label] for label in table.labels], conductor=4)


def symmetric3_u2() -> UnitaryRep:
    """The two-dimensional irreducible of ``S3`` with ``(0 1 2) -> diag(w, w^2)`` and ``(0 1) -> swap``."""

    omega = Cyclotomic.root_of_unity(3)
    swap: Pair = ((1, 0, 2), Matrix([[0, 1], [1, 0]], 3))
    rotate: Pair = ((1, 2, 0), Matrix([[omega, 0], [0, omega * omega]], 3))

    def mul(x: Pair, y: Pair) -> Pair:
        return tuple(x[0][k] for k in y[0]), x[1] @ y[1]

    table, elements = closure(
        [swap, rotate],
        mul,
        ((0, 1, 2), Matrix.identity(2, 3)),
        label=lambda pair, _word: cycle_notation(pair[0]),
    )
    return UnitaryRep.from_matrices(table, [m for _, m in elements], conductor=3)


def product_rep(first: UnitaryRep, second: UnitaryRep) -> UnitaryRep:
    """Outer tensor product on the direct product group, ``(x, y) -> M(x) (x) M'(y)``."""

    table = direct_product(first.group, second.group)
    matrices = [a.kron(b) for a in first.matrices for b in second.matrices]
    return UnitaryRep.from_matrices(table, matrices)


BUILTIN_REPS: dict[str, Callable[[], UnitaryRep]] = {
    "q8-u2": quaternion_u2,
    "s3-u2": symmetric3_u2,
    "z2xs3-u2": lambda: product_rep(cyclic_u1(2), symmetric3_u2()),
}

_CYCLIC = re.compile(r"z(\d+)-u1")
_TRIVIAL = re.compile(r"trivial-u(\d+)")


def builtin_rep(name: str) -> UnitaryRep:
    """Look up ``q8-u2``, ``s3-u2``, ``z2xs3-u2``, ``z<n>-u1`` or ``trivial-u<d>``."""

    if name in BUILTIN_REPS:
        return BUILTIN_REPS[name]()
    if match := _CYCLIC.fullmatch(name):
        return cyclic_u1(int(match.group(1)))
    if match := _TRIVIAL.fullmatch(name):
        return trivial_ud(int(match.group(1)))
    raise ValidationError(
        f"Unknown builtin representation {name!r}; choose from {sorted(BUILTIN_REPS)}, z<n>-u1 or trivial-u<d>",
    )
