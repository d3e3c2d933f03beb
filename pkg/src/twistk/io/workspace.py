"""
Registry of loaded documents, content-addressed by SHA-256.

A reference is an inline JSON object (or its text) or a file name. File names are
resolved against the directory of the referring document, then against the
fixtures bundled with the package. Loading the same content twice in the same
context returns the same object, so groups shared between an extension, its
cocycles and a representation stay identical.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar, Union

from typing_extensions import TypeAlias

from twistk.complexes.cochains import GCochain1
from twistk.complexes.complex import SimplicialComplex
from twistk.core.errors import FormatError, ValidationError
from twistk.core.settings import DEFAULT_SETTINGS, Settings
from twistk.groups.extension import Extension, make_extension
from twistk.groups.table import GroupTable
from twistk.io.codecs import (
    cochain_from_json,
    complex_from_json,
    elements_from_json,
    extension_from_json,
    group_from_json,
    rep_from_json,
    require,
)
from twistk.repcat.reps import UnitaryRep
from twistk.tensorcat.special import SpecialCategory, build_special_category

__all__ = ["Workspace", "Document", "Ref", "fixture_names", "read_fixture"]

logger = logging.getLogger(__name__)

Ref: TypeAlias = Union[str, Mapping[str, Any]]
T = TypeVar("T")


def fixture_names() -> list[str]:
    """Names of the JSON fixtures bundled with twistk."""

    root = resources.files("twistk") / "fixtures"
    return sorted(entry.name for entry in root.iterdir() if entry.name.endswith(".json"))


def read_fixture(name: str) -> str:
    """Text of a bundled fixture; ``.json`` may be omitted.

    Raises:
        ValidationError: If no such fixture exists.
    """

    root = resources.files("twistk") / "fixtures"
    for candidate in (name, f"{name}.json"):
        entry = root / candidate
        if entry.is_file():
            return entry.read_text(encoding="utf-8")
    raise ValidationError(f"No file or bundled fixture named {name!r}")


@dataclass(frozen=True)
class Document:
    """Parsed JSON with its digest and the directory nested references resolve against."""

    data: Any
    digest: str
    directory: Optional[Path]
    source: str


def _digest(data: Any) -> str:
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class Workspace:
    """Named registry of loaded groups, extensions, complexes, cocycles and representations.

    Args:
        base: Directory for top-level relative file names; defaults to the
            current directory.
        settings: Limits applied while loading.
    """

    def __init__(self, base: Optional[Path] = None, *, settings: Optional[Settings] = None):
        self.base = Path.cwd() if base is None else Path(base)
        self.settings = settings or DEFAULT_SETTINGS
        self._objects: dict[tuple[Any, ...], Any] = {}
        self.loaded: dict[str, str] = {}

    # -- documents --------------------------------------------------------

    def read(self, ref: Ref, directory: Optional[Path] = None) -> Document:
        """Parse a reference.

        Raises:
            FormatError: If the file is not valid JSON.
            ValidationError: If neither a file nor a bundled fixture matches.
        """

        if isinstance(ref, Mapping):
            return Document(dict(ref), _digest(ref), directory, "<inline>")
        if not isinstance(ref, str):
            raise FormatError(f"A reference must be a file name or an object, got {ref!r}")
        if ref.lstrip().startswith("{"):
            try:
                return self.read(json.loads(ref), directory)
            except json.JSONDecodeError as exc:
                raise FormatError(f"Inline document is not valid JSON: {exc}") from exc
        search = self.base if directory is None else directory
        path = Path(ref) if Path(ref).is_absolute() else search / ref
        if path.is_file():
            text, found_in, source = path.read_text(encoding="utf-8"), path.parent, str(path)
        else:
            text, found_in, source = read_fixture(ref), None, f"fixture:{ref}"
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{source} is not valid JSON: {exc}") from exc
        digest = _digest(data)
        self.loaded[source] = digest
        return Document(data, digest, found_in, source)

    def _cached(self, key: tuple[Any, ...], build: Callable[[], T]) -> T:
        if key not in self._objects:
            self._objects[key] = build()
        return self._objects[key]  # type: ignore[no-any-return]

    def _nested(self, doc: Document, key: str) -> Ref:
        return require(doc.data, key, "Document")  # type: ignore[no-any-return]

    # -- loaders ----------------------------------------------------------

    def group(self, ref: Ref, directory: Optional[Path] = None) -> GroupTable:
        doc = self.read(ref, directory)
        return self._cached(
            ("group", doc.digest),
            lambda: group_from_json(doc.data, max_order=self.settings.max_group_order),
        )

    def complex(self, ref: Ref, directory: Optional[Path] = None) -> SimplicialComplex:
        doc = self.read(ref, directory)
        return self._cached(("complex", doc.digest), lambda: complex_from_json(doc.data))

    def rep(self, ref: Ref, directory: Optional[Path] = None) -> UnitaryRep:
        doc = self.read(ref, directory)

        def build() -> UnitaryRep:
            group = None
            if isinstance(doc.data, Mapping) and "group" in doc.data:
                group = self.group(doc.data["group"], doc.directory)
            return rep_from_json(doc.data, group=group, max_order=self.settings.max_group_order)

        return self._cached(("rep", doc.digest, doc.directory), build)

    def extension(self, ref: Ref, directory: Optional[Path] = None) -> Extension:
        """Load ``{"N": group, "G": [elements]}`` or ``{"N", "G", "Q", "inclusion", "projection"}``."""

        doc = self.read(ref, directory)

        def build() -> Extension:
            N = self.group(self._nested(doc, "N"), doc.directory)
            if "inclusion" in doc.data:
                G = self.group(self._nested(doc, "G"), doc.directory)
                Q = self.group(self._nested(doc, "Q"), doc.directory)
                return extension_from_json(doc.data, N, G=G, Q=Q)
            return extension_from_json(doc.data, N)

        return self._cached(("extension", doc.digest, doc.directory), build)

    def cochain(
        self,
        ref: Ref,
        directory: Optional[Path] = None,
        *,
        group: Optional[GroupTable] = None,
        complex_: Optional[SimplicialComplex] = None,
    ) -> GCochain1:
        """Load ``{"complex": ..., "group": ..., "edges": {...}}``.

        ``group`` and ``complex_`` override the document's references, which
        must then describe the same table and the same simplices.

        Raises:
            ValidationError: If an override disagrees with the document.
        """

        doc = self.read(ref, directory)
        data = doc.data
        if complex_ is None:
            complex_ = self.complex(self._nested(doc, "complex"), doc.directory)
        elif isinstance(data, Mapping) and "complex" in data:
            declared = self.complex(data["complex"], doc.directory)
            if declared.simplices != complex_.simplices or declared.vertex_count != complex_.vertex_count:
                raise ValidationError(f"Cocycle {doc.source} lives on a different complex")
        if group is None:
            group = self.group(self._nested(doc, "group"), doc.directory)
        elif isinstance(data, Mapping) and "group" in data:
            declared_group = self.group(data["group"], doc.directory)
            if declared_group.mult != group.mult:
                raise ValidationError(f"Cocycle {doc.source} takes values in a different group")
        target_group, target_complex = group, complex_
        return self._cached(
            ("cochain", doc.digest, id(target_group), id(target_complex)),
            lambda: cochain_from_json(data, target_complex, target_group),
        )

    def category(
        self, ref: Ref, directory: Optional[Path] = None, *, rs_bound: Optional[int] = None
    ) -> SpecialCategory:
        """Build a special category from ``{"complex", "rep", "G", "cocycle", "rsBound"}``.

        The extension is ``G -> rep.group -> rep.group / G``; the cocycle takes
        values in that quotient, by index or by coset label.
        """

        doc = self.read(ref, directory)
        data = doc.data
        complex_ = self.complex(self._nested(doc, "complex"), doc.directory)
        ambient = self.rep(self._nested(doc, "rep"), doc.directory)
        subgroup = elements_from_json(ambient.group, require(data, "G", "Category"))
        extension = self._cached(
            ("category-extension", id(ambient), tuple(sorted(subgroup))),
            lambda: make_extension(ambient.group, subgroup),
        )
        cocycle_ref = data.get("cocycle", {"edges": {}, "default": extension.Q.identity})
        cocycle = self.cochain(cocycle_ref, doc.directory, group=extension.Q, complex_=complex_)
        bound = rs_bound if rs_bound is not None else data.get("rsBound")
        logger.debug("building category from %s", doc.source)
        return build_special_category(complex_, extension, ambient, cocycle, rs_bound=bound, settings=self.settings)
