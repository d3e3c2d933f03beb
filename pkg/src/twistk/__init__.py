from twistk.cohomology.cocycles import are_equivalent, pushforward
from twistk.cohomology.delta import connecting_delta_ab, dixmier_douady
from twistk.cohomology.lifting import LiftOutcome, LiftSearch, lift_search
from twistk.complexes.cochains import ACochain2, Cocycle1, GCochain1
from twistk.complexes.complex import SimplicialComplex, validate_complex
from twistk.complexes.fixtures import builtin_complex
from twistk.complexes.h2 import CohomologyClass2, H2Presentation, h2_presentation
from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import (
    DimensionMismatch,
    ExactnessFailure,
    InvariantViolation,
    SearchBudgetExceeded,
    TwistkError,
    ValidationError,
)
from twistk.core.matrices import Matrix
from twistk.core.settings import DEFAULT_SETTINGS, Settings
from twistk.cuntz.expr import format_element, parse_element
from twistk.cuntz.words import CuntzElement
from twistk.groups.abelian import AbelianGroup, AbelianHom
from twistk.groups.abelianize import Abelianization, abelianize
from twistk.groups.builders import builtin_group
from twistk.groups.extension import AbelianizedExtension, Extension, abelianized_row, make_extension
from twistk.groups.table import GroupHom, GroupTable
from twistk.io.workspace import Workspace
from twistk.repcat.actions import DualCategory
from twistk.repcat.catalog import builtin_rep
from twistk.repcat.characters import CharacterTable, character_table
from twistk.repcat.intertwiners import IntertwinerBasis, intertwiners
from twistk.repcat.reps import UnitaryRep
from twistk.tensorcat.embedding import EmbeddingKind, EmbeddingStatus, embedding_status
from twistk.tensorcat.ktheory import KGroupResult, ProjectionObject, k0_graph, k0_point, k0_trivial_inclusion
from twistk.tensorcat.special import SpecialCategory, build_special_category, delta_of_category

__all__ = [
    # Groups
    "GroupTable",
    "GroupHom",
    "AbelianGroup",
    "AbelianHom",
    "Abelianization",
    "abelianize",
    "builtin_group",
    # Extensions
    "Extension",
    "AbelianizedExtension",
    "make_extension",
    "abelianized_row",
    # Complexes and cohomology
    "SimplicialComplex",
    "validate_complex",
    "builtin_complex",
    "GCochain1",
    "Cocycle1",
    "ACochain2",
    "H2Presentation",
    "CohomologyClass2",
    "h2_presentation",
    "are_equivalent",
    "pushforward",
    "connecting_delta_ab",
    "dixmier_douady",
    # Lifting
    "LiftSearch",
    "LiftOutcome",
    "lift_search",
    # Exact scalars
    "Cyclotomic",
    "Matrix",
    # Representations
    "UnitaryRep",
    "builtin_rep",
    "CharacterTable",
    "character_table",
    "IntertwinerBasis",
    "intertwiners",
    "DualCategory",
    # Cuntz algebra
    "CuntzElement",
    "parse_element",
    "format_element",
    # Special categories
    "SpecialCategory",
    "build_special_category",
    "delta_of_category",
    "EmbeddingKind",
    "EmbeddingStatus",
    "embedding_status",
    # K-theory
    "KGroupResult",
    "ProjectionObject",
    "k0_point",
    "k0_graph",
    "k0_trivial_inclusion",
    # Loading and settings
    "Workspace",
    "Settings",
    "DEFAULT_SETTINGS",
    # Errors
    "TwistkError",
    "ValidationError",
    "ExactnessFailure",
    "SearchBudgetExceeded",
    "DimensionMismatch",
    "InvariantViolation",
]
