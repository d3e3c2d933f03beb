"""
JSON codecs for groups, complexes, cochains, extensions and representations.

Decoders take plain JSON data and objects that the document references, already
resolved by :class:`~twistk.io.workspace.Workspace`. Elements may be written as
indices or as labels; exact scalars are ``"p/q"`` strings or coefficient lists.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from functools import partial
from typing import Any, Callable, Optional, TypeVar

from twistk.complexes.cochains import GCochain1
from twistk.complexes.complex import SimplicialComplex
from twistk.complexes.fixtures import builtin_complex
from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import FormatError, TwistkError
from twistk.core.matrices import Matrix
from twistk.groups.builders import builtin_group, permutation_group
from twistk.groups.extension import Extension, make_extension
from twistk.groups.table import GroupTable
from twistk.repcat.catalog import builtin_rep
from twistk.repcat.characters import CharacterTable, register_character_table
from twistk.repcat.reps import UnitaryRep

__all__ = [
    "group_from_json",
    "group_to_json",
    "elements_from_json",
    "complex_from_json",
    "cochain_from_json",
    "extension_from_json",
    "rep_from_json",
    "element_labels",
    "require",
]

T = TypeVar("T")


def require(data: Any, key: str, kind: str) -> Any:
    """``data[key]`` or a :class:`FormatError` naming the document kind."""

    if not isinstance(data, Mapping):
        raise FormatError(f"{kind} document must be a JSON object, got {type(data).__name__}")
    if key not in data:
        raise FormatError(f"{kind} document is missing {key!r}")
    return data[key]


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise FormatError(f"{what} must be a list of integers, got {value!r}")
    return list(value)


def group_from_json(data: Mapping[str, Any], *, max_order: Optional[int] = None) -> GroupTable:
    """Read ``{"builtin": name}``, ``{"mult": ..., "labels": ...}`` or ``{"generators": [perm, ...]}``.

    An optional ``"characters"`` table (rows of scalars, classes in the order of
    :attr:`GroupTable.conjugacy_classes`) is validated and used instead of a
    computed one.
    """

    if not isinstance(data, Mapping):
        raise FormatError(f"Group document must be a JSON object, got {type(data).__name__}")
    if "builtin" in data:
        group = builtin_group(str(data["builtin"]))
    elif "mult" in data:
        mult = data["mult"]
        if not isinstance(mult, list):
            raise FormatError("Group 'mult' must be a list of rows")
        rows = [_int_list(row, "Group table row") for row in mult]
        group = GroupTable.from_table(rows, data.get("labels"), max_order=max_order)
        if "order" in data and data["order"] != group.order:
            raise FormatError(f"Declared order {data['order']} differs from table size {group.order}")
    elif "generators" in data:
        generators = data["generators"]
        if not isinstance(generators, list):
            raise FormatError("Group 'generators' must be a list of permutations")
        group, _ = permutation_group([_int_list(g, "Permutation") for g in generators], max_order=max_order)
    else:
        raise FormatError("Group document needs one of 'builtin', 'mult' or 'generators'")

    if "characters" in data:
        conductor = _conductor(data, group.exponent)
        rows = data["characters"]
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise FormatError("Group 'characters' must be a list of rows")
        values = _decoded(
            lambda: [[Cyclotomic.from_json(x, conductor) for x in row] for row in rows], "Character table"
        )
        register_character_table(CharacterTable.from_values(group, values))
    return group


def group_to_json(group: GroupTable) -> dict[str, object]:
    return {"order": group.order, "mult": [list(row) for row in group.mult], "labels": list(group.labels)}


def elements_from_json(group: GroupTable, items: Any) -> list[int]:
    """Element indices from a list of indices and/or labels."""

    if isinstance(items, str):
        items = [s.strip() for s in items.split(",") if s.strip()]
    if not isinstance(items, list):
        raise FormatError(f"Elements must be a list, got {items!r}")
    by_label = {label: k for k, label in enumerate(group.labels)}
    result = []
    for item in items:
        if isinstance(item, int) and not isinstance(item, bool):
            index = item
        elif isinstance(item, str) and item in by_label:
            index = by_label[item]
        elif isinstance(item, str) and item.lstrip("-").isdigit():
            index = int(item)
        else:
            raise FormatError(f"Unknown group element {item!r}")
        if not 0 <= index < group.order:
            raise FormatError(f"Element index {index} is outside a group of order {group.order}")
        result.append(index)
    return result


def complex_from_json(data: Mapping[str, Any]) -> SimplicialComplex:
    """Read ``{"builtin": name}`` or ``{"vertices": n, "facets": [...]}`` (faces are added)."""

    if isinstance(data, Mapping) and "builtin" in data:
        return builtin_complex(str(data["builtin"]))
    vertices = require(data, "vertices", "Complex")
    facets = require(data, "facets", "Complex")
    if not isinstance(vertices, int) or not isinstance(facets, list):
        raise FormatError("Complex needs an integer 'vertices' and a list of 'facets'")
    return SimplicialComplex.from_facets(vertices, [_int_list(f, "Facet") for f in facets])


def _edge_key(key: str) -> tuple[int, int]:
    first, sep, second = key.replace(",", "-").partition("-")
    if not sep or not (first.strip().isdigit() and second.strip().isdigit()):
        raise FormatError(f"Edge key {key!r} must look like 'i-j'")
    return int(first), int(second)


def cochain_from_json(data: Mapping[str, Any], complex_: SimplicialComplex, group: GroupTable) -> GCochain1:
    """Read ``{"edges": {"i-j": element, ...}, "default": element}``.

    Without ``"default"`` every edge must be listed.
    """

    edges = require(data, "edges", "Cocycle")
    if not isinstance(edges, Mapping):
        raise FormatError("Cocycle 'edges' must be an object keyed by 'i-j'")
    mapping = {_edge_key(k): elements_from_json(group, [v])[0] for k, v in edges.items()}
    default = data.get("default")
    default_index = None if default is None else elements_from_json(group, [default])[0]
    return GCochain1.from_mapping(complex_, group, mapping, default=default_index)


def extension_from_json(
    data: Mapping[str, Any],
    N: GroupTable,
    *,
    G: Optional[GroupTable] = None,
    Q: Optional[GroupTable] = None,
) -> Extension:
    """Read ``{"N": ..., "G": [elements]}`` or explicit ``inclusion``/``projection`` maps.

    With a subgroup list the quotient is built by coset enumeration; with
    explicit maps ``G`` and ``Q`` must be the resolved groups of the document.
    """

    if "inclusion" in data or "projection" in data:
        if G is None or Q is None:
            raise FormatError("An extension with explicit maps needs 'G' and 'Q' groups")
        inclusion = _int_list(require(data, "inclusion", "Extension"), "Inclusion")
        projection = _int_list(require(data, "projection", "Extension"), "Projection")
        section = data.get("section")
        return Extension.from_parts(
            G, N, Q, inclusion, projection, None if section is None else _int_list(section, "Section")
        )
    extension = make_extension(N, elements_from_json(N, require(data, "G", "Extension")))
    if "section" in data:
        extension = extension.with_section(elements_from_json(N, data["section"]))
    return extension


def _conductor(data: Mapping[str, Any], default: int) -> int:
    value = data.get("conductor", default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise FormatError(f"Conductor must be a positive integer, got {value!r}")
    return value


def _decoded(decode: Callable[[], T], what: str) -> T:
    """Run a scalar decoder, reporting malformed numbers as :class:`FormatError`."""

    try:
        return decode()
    except TwistkError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{what}: {exc}") from exc


def _matrices(items: Any, conductor: int) -> list[Matrix]:
    if not isinstance(items, list):
        raise FormatError("Representation matrices must be a list")
    return [_decoded(partial(Matrix.from_json, m, conductor), f"Representation matrix {k}") for k, m in enumerate(items)]


def rep_from_json(
    data: Mapping[str, Any],
    *,
    group: Optional[GroupTable] = None,
    max_order: Optional[int] = None,
) -> UnitaryRep:
    """Read ``{"builtin": name}``, ``{"generators": [...]}`` or ``{"group": ..., "matrices": [...]}``."""

    if not isinstance(data, Mapping):
        raise FormatError(f"Representation document must be a JSON object, got {type(data).__name__}")
    if "builtin" in data:
        return builtin_rep(str(data["builtin"]))
    conductor = _conductor(data, 1)
    if "generators" in data:
        return UnitaryRep.from_generators(
            _matrices(data["generators"], conductor),
            names=data.get("names"),
            conductor=conductor,
            max_order=max_order,
        )
    matrices = _matrices(require(data, "matrices", "Representation"), conductor)
    if group is None:
        raise FormatError("A representation given by matrices needs a 'group'")
    rep = UnitaryRep.from_matrices(group, matrices, conductor=conductor)
    if "d" in data and data["d"] != rep.d:
        raise FormatError(f"Declared dimension {data['d']} differs from matrix size {rep.d}")
    return rep


def element_labels(group: GroupTable, elements: Sequence[int]) -> list[str]:
    return [group.labels[x] for x in elements]
