"""
Exception hierarchy shared by every twistk module.

Input problems derive from both :class:`TwistkError` and :class:`ValueError`
so that callers validating user data can keep catching ``ValueError``.
Outcomes that are mathematically meaningful (an inexact abelianized row, an
exhausted search budget) get their own types because the command line maps
them to distinct exit codes.
"""

from __future__ import annotations

from typing import Optional

__all__ = [
    "TwistkError",
    "ValidationError",
    "InvalidGroupTable",
    "GroupTooLarge",
    "NotASubgroup",
    "NotNormal",
    "MissingFace",
    "InvalidCochain",
    "InvalidRepresentation",
    "NotUnitary",
    "NotNormalizing",
    "MixedDegree",
    "NotOneDimensional",
    "BoundExceeded",
    "ParseError",
    "FormatError",
    "ExactnessFailure",
    "SearchBudgetExceeded",
    "DimensionMismatch",
    "InvariantViolation",
]


class TwistkError(Exception):
    """Base class for all errors raised by twistk."""


class ValidationError(TwistkError, ValueError):
    """Input data does not describe a valid object."""


class InvalidGroupTable(ValidationError):
    """A multiplication table is not a group."""


class GroupTooLarge(ValidationError):
    """A group exceeds the configured order cap."""


class NotASubgroup(ValidationError):
    """A subset is not closed under multiplication and inverses."""


class NotNormal(ValidationError):
    """A subgroup is not normal in the ambient group."""


class MissingFace(ValidationError):
    """A simplicial complex is not closed under taking faces."""

    def __init__(self, simplex: tuple[int, ...], face: tuple[int, ...]):
        super().__init__(f"Simplex {list(simplex)} is missing its face {list(face)}")
        self.simplex = simplex
        self.face = face


class InvalidCochain(ValidationError):
    """A cochain is not defined on the required simplices or is not a cocycle."""


class InvalidRepresentation(ValidationError):
    """Matrices do not form a representation of the declared group."""


class NotUnitary(InvalidRepresentation):
    """A matrix fails ``M M* = 1``."""


class NotNormalizing(ValidationError):
    """An ambient element does not normalize the subgroup."""


class MixedDegree(ValidationError):
    """A Cuntz element has monomials of different degrees."""


class NotOneDimensional(ValidationError):
    """The base complex has simplices of dimension two or more."""


class BoundExceeded(ValidationError):
    """A requested operator space is larger than the configured bound."""


class ParseError(ValidationError):
    """A textual expression could not be parsed."""


class FormatError(ValidationError):
    """A JSON document does not follow the expected layout."""


class ExactnessFailure(TwistkError):
    """The abelianized bottom row of an extension is not exact.

    Attributes:
        diagnosis: Short machine-readable reason, e.g. ``"iab not injective"``.
    """

    def __init__(self, diagnosis: str, detail: Optional[str] = None):
        message = diagnosis if detail is None else f"{diagnosis}: {detail}"
        super().__init__(message)
        self.diagnosis = diagnosis
        self.detail = detail


class SearchBudgetExceeded(TwistkError):
    """A backtracking search visited more nodes than allowed."""

    def __init__(self, nodes: int):
        super().__init__(f"Search budget exhausted after {nodes} nodes")
        self.nodes = nodes


class DimensionMismatch(TwistkError):
    """Two independent dimension computations disagree."""

    def __init__(self, computed: int, expected: int, where: str):
        super().__init__(f"{where}: basis has {computed} elements, character sum predicts {expected}")
        self.computed = computed
        self.expected = expected


class InvariantViolation(TwistkError):
    """A structural invariant failed during construction.

    Attributes:
        location: Description of the triangle, edge or level where it failed.
    """

    def __init__(self, invariant: str, location: str):
        super().__init__(f"{invariant} fails at {location}")
        self.invariant = invariant
        self.location = location
