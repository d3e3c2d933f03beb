"""Constructors for standard finite groups and closures of generating sets."""

from __future__ import annotations

import re
from collections.abc import Hashable, Sequence
from typing import Callable, Optional, TypeVar

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import GroupTooLarge, InvalidGroupTable, ValidationError
from twistk.core.matrices import Matrix
from twistk.core.settings import DEFAULT_SETTINGS
from twistk.groups.table import GroupTable

__all__ = [
    "closure",
    "cyclic",
    "trivial",
    "symmetric",
    "dihedral",
    "quaternion",
    "direct_product",
    "permutation_group",
    "cycle_notation",
    "QUATERNION_MATRICES",
    "builtin_group",
]

E = TypeVar("E", bound=Hashable)

_MIN_POLYGON = 3


def closure(  # noqa: PLR0913
    generators: Sequence[E],
    mul: Callable[[E, E], E],
    identity: E,
    *,
    label: Optional[Callable[[E, str], str]] = None,
    names: Optional[Sequence[str]] = None,
    max_order: Optional[int] = None,
) -> tuple[GroupTable, list[E]]:
    """Breadth-first closure of ``generators`` under right multiplication.

    Elements are numbered in discovery order starting from ``identity``; each
    element is expanded by the generators in the given order.

    Args:
        generators: Group generators.
        mul: Group law.
        identity: Identity element.
        label: Optional ``(element, word) -> label`` callable. The default
            label is the generator word, ``"e"`` for the identity.
        names: Generator names used in words; defaults to ``g0, g1, ...``.
        max_order: Abort once more elements than this are found.

    Returns:
        The group table and the list of elements in index order.
    """

    cap = DEFAULT_SETTINGS.max_group_order if max_order is None else max_order
    gen_names = list(names) if names is not None else [f"g{i}" for i in range(len(generators))]
    elements: list[E] = [identity]
    words = [""]
    index: dict[E, int] = {identity: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        for g, name in zip(generators, gen_names):
            y = mul(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                words.append(words[head] + name)
                if len(elements) > cap:
                    raise GroupTooLarge(f"Closure exceeds the order cap {cap}")
        head += 1

    try:
        mult = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    except KeyError as exc:
        raise InvalidGroupTable("Generators do not close under multiplication") from exc
    inverses = tuple(row.index(0) for row in mult)
    if label is None:
        labels = tuple(w or "e" for w in words)
    else:
        labels = tuple(label(x, w) for x, w in zip(elements, words))
    return GroupTable(mult=mult, identity=0, inverses=inverses, labels=labels), elements


def cycle_notation(perm: Sequence[int]) -> str:
    seen: set[int] = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(cycles) or "()"


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """``(a b)(x) = a(b(x))``."""

    return tuple(a[x] for x in b)


def permutation_group(
    generators: Sequence[Sequence[int]],
    *,
    max_order: Optional[int] = None,
) -> tuple[GroupTable, list[tuple[int, ...]]]:
    """Group generated by permutations given as image lists on ``0..n-1``."""

    if not generators:
        return trivial(), [()]
    size = len(generators[0])
    gens = []
    for g in generators:
        perm = tuple(int(x) for x in g)
        if len(perm) != size or sorted(perm) != list(range(size)):
            raise InvalidGroupTable(f"{list(g)} is not a permutation of 0..{size - 1}")
        gens.append(perm)
    return closure(
        gens,
        _compose,
        tuple(range(size)),
        label=lambda perm, _word: cycle_notation(perm),
        max_order=max_order,
    )


def trivial() -> GroupTable:
    return GroupTable(mult=((0,),), identity=0, inverses=(0,), labels=("e",))


def cyclic(n: int) -> GroupTable:
    """``Z/n`` with element ``k`` at index ``k``."""

    if n < 1:
        raise InvalidGroupTable(f"Cyclic group order must be positive, got {n}")
    return GroupTable(
        mult=tuple(tuple((i + j) % n for j in range(n)) for i in range(n)),
        identity=0,
        inverses=tuple((-i) % n for i in range(n)),
        labels=tuple(str(i) for i in range(n)),
    )


def symmetric(n: int) -> GroupTable:
    """``S_n`` on ``0..n-1`` generated by ``(0 1)`` and ``(0 1 ... n-1)``."""

    if n <= 1:
        return trivial()
    transposition = [1, 0, *range(2, n)]
    rotation = [(i + 1) % n for i in range(n)]
    return permutation_group([transposition, rotation] if n >= _MIN_POLYGON else [transposition])[0]


def dihedral(n: int) -> GroupTable:
    """Symmetries of the ``n``-gon, order ``2n``, as permutations of the vertices."""

    if n < _MIN_POLYGON:
        raise InvalidGroupTable(f"Dihedral groups need n >= 3, got {n}")
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return permutation_group([rotation, reflection])[0]


def _quaternion_matrices() -> dict[str, Matrix]:
    i = Cyclotomic.root_of_unity(4)
    unit_i = Matrix([[i, 0], [0, -i]], 4)
    unit_j = Matrix([[0, 1], [-1, 0]], 4)
    unit_k = unit_i @ unit_j
    one = Matrix.identity(2, 4)
    named = {"1": one, "i": unit_i, "j": unit_j, "k": unit_k}
    named.update({f"-{name}": -m for name, m in list(named.items())})
    return named


QUATERNION_MATRICES = _quaternion_matrices()


def quaternion() -> GroupTable:
    """``Q8`` generated by ``i`` and ``j``; elements ``1, i, j, -1, k, -k, -i, -j``."""

    names = {m: name for name, m in QUATERNION_MATRICES.items()}
    table, _ = closure(
        [QUATERNION_MATRICES["i"], QUATERNION_MATRICES["j"]],
        Matrix.__matmul__,
        QUATERNION_MATRICES["1"],
        label=lambda m, _word: names[m],
    )
    return table


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    """``A x B`` with ``(x, y)`` at index ``x * |B| + y``."""

    nb = b.order

    def split(k: int) -> tuple[int, int]:
        return divmod(k, nb)

    size = a.order * nb
    mult = []
    for k in range(size):
        x1, y1 = split(k)
        mult.append(tuple(a.mult[x1][x2] * nb + b.mult[y1][y2] for x2 in a.elements for y2 in b.elements))
    return GroupTable(
        mult=tuple(mult),
        identity=a.identity * nb + b.identity,
        inverses=tuple(a.inverses[split(k)[0]] * nb + b.inverses[split(k)[1]] for k in range(size)),
        labels=tuple(f"({a.labels[split(k)[0]]},{b.labels[split(k)[1]]})" for k in range(size)),
    )


_FAMILIES: dict[str, Callable[[int], GroupTable]] = {"z": cyclic, "s": symmetric, "d": dihedral}
_FAMILY = re.compile(r"([zsd])(\d+)")


def builtin_group(name: str) -> GroupTable:
    """Look up ``trivial``, ``q8``, ``z<n>``, ``s<n>`` or ``d<n>``."""

    if name == "trivial":
        return trivial()
    if name == "q8":
        return quaternion()
    if match := _FAMILY.fullmatch(name):
        return _FAMILIES[match.group(1)](int(match.group(2)))
    raise ValidationError(f"Unknown builtin group {name!r}; choose from trivial, q8, z<n>, s<n>, d<n>")
