import pytest

from twistk.complexes.cochains import GCochain1
from twistk.complexes.fixtures import circle, projective_plane
from twistk.core.errors import NotOneDimensional, ValidationError
from twistk.groups.extension import make_extension
from twistk.repcat.catalog import builtin_rep
from twistk.tensorcat.embedding import EmbeddingKind, embedding_status
from twistk.tensorcat.ktheory import ProjectionObject, k0_graph, k0_point, k0_trivial_inclusion
from twistk.tensorcat.special import build_special_category, category_isomorphism, degree_pairs, delta_of_category

from .samples import circle_cocycle, rp2_generator


def _a3_in_s3():
    rep = builtin_rep("s3-u2")
    return rep, make_extension(rep.group, rep.group.commutator_subgroup)


def test_degree_pairs_are_ordered_by_total_degree() -> None:
    assert degree_pairs(2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_category_with_trivial_quotient_is_trivial(workspace) -> None:
    """When ``G`` is the whole group every transition is the identity."""

    category = workspace.category("s3-circle.json", rs_bound=2)

    assert category.is_trivial()
    assert delta_of_category(category).is_zero()
    assert category.to_json()["dimensions"]["1,1"] == 1


def test_twisted_category_has_nontrivial_transitions() -> None:
    rep, extension = _a3_in_s3()
    base = circle()

    category = build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base), rs_bound=2)

    assert not category.is_trivial()
    assert not category.transition(1, 1, 0, 1).is_identity()
    assert category.transition(1, 1, 1, 2).is_identity()
    assert (category.transition(1, 1, 0, 1) @ category.transition(1, 1, 1, 0)).is_identity()


def test_symmetry_is_carried_at_every_vertex() -> None:
    """``theta_{1,1}`` has coordinates in ``(H^2, H^2)_G`` fixed by every transition."""

    rep, extension = _a3_in_s3()
    base = circle()

    category = build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base))

    assert set(category.symmetry) == {(1, 1)}
    category.check_symmetry_gluing()


def test_category_rejects_foreign_cocycles() -> None:
    rep, extension = _a3_in_s3()

    with pytest.raises(ValidationError, match="different complex"):
        build_special_category(circle(), extension, rep, circle_cocycle(extension.Q, 1), rs_bound=1)
    with pytest.raises(ValidationError, match="rs_bound"):
        base = circle()
        build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base), rs_bound=-1)


def test_equivalent_cocycles_give_isomorphic_categories() -> None:
    """Moving the monodromy to another edge is a gauge transformation."""

    rep, extension = _a3_in_s3()
    base = circle()
    first = build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base), rs_bound=2)
    moved = GCochain1.from_mapping(base, extension.Q, {(1, 2): 1}, default=extension.Q.identity)
    second = build_special_category(base, extension, rep, moved, rs_bound=2)
    trivial = build_special_category(base, extension, rep, GCochain1.constant(base, extension.Q), rs_bound=2)

    iso = category_isomorphism(first, second)

    assert iso is not None
    assert set(iso.vertex_matrices) == set(first.transitions)
    assert category_isomorphism(first, trivial) is None


def test_twisted_circle_embeds_without_a_defined_obstruction() -> None:
    """``A3 -> S3`` has a non-exact abelianized row but the circle cocycle lifts anyway."""

    rep, extension = _a3_in_s3()
    base = circle()
    category = build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base), rs_bound=2)

    status = embedding_status(category)

    assert status.kind is EmbeddingKind.EMBEDDABLE
    assert status.delta is None
    assert status.special_unitary
    assert status.lift is not None
    assert len(status.vector_bundle) == 3
    assert status.to_json()["status"] == "embeddable"


def test_z4_circle_embeds_with_zero_obstruction(workspace) -> None:
    status = embedding_status(workspace.category("z2z4-circle.json", rs_bound=2))

    assert status.kind is EmbeddingKind.EMBEDDABLE
    assert status.delta is not None and status.delta.is_zero()
    assert not status.special_unitary
    assert status.adjoint is not None


def test_rp2_generator_is_obstructed() -> None:
    """The Bockstein class blocks every lift of the ``RP^2`` generator."""

    rep = builtin_rep("z4-u1")
    extension = make_extension(rep.group, [0, 2])
    base = projective_plane()
    category = build_special_category(base, extension, rep, rp2_generator(extension.Q, base), rs_bound=1)

    status = embedding_status(category)

    assert status.kind is EmbeddingKind.OBSTRUCTED
    assert status.to_json()["delta"] == {"class": [1], "group": "Z2", "zero": False}
    with pytest.raises(NotOneDimensional):
        k0_graph(category)


@pytest.mark.parametrize(
    ("name", "group", "stabilized_at"),
    [
        pytest.param("z3-u1", "Z^3", 2, id="z3"),
        pytest.param("s3-u2", "Z^3", 2, id="s3"),
        pytest.param("z2-u1", "Z^2", 1, id="z2"),
        pytest.param("trivial-u2", "Z", 0, id="trivial"),
    ],
)
def test_k0_over_a_point(name: str, group: str, stabilized_at: int) -> None:
    """One class per irreducible, identified across the levels where it recurs."""

    result = k0_point(builtin_rep(name))

    assert str(result.group) == group
    assert result.stabilized_at == stabilized_at


def test_k0_over_a_point_with_too_few_levels_is_a_lower_bound() -> None:
    result = k0_point(builtin_rep("z3-u1"), r_max=1)

    assert str(result.group) == "Z^2"
    assert not result.stabilized


@pytest.mark.parametrize(
    ("fixture", "group"),
    [
        pytest.param("z3-point.json", "Z^3", id="z3-point"),
        pytest.param("s3-circle.json", "Z^3", id="s3-untwisted"),
        pytest.param("z2z4-circle.json", "Z^4", id="z2-in-z4"),
        pytest.param("a3s3-circle.json", "Z^2", id="a3-in-s3"),
    ],
)
def test_k0_over_graphs(workspace, fixture: str, group: str) -> None:
    """Monodromy merges irreducibles permuted by the quotient and separates levels it twists."""

    result = k0_graph(workspace.category(fixture, rs_bound=2))

    assert str(result.group) == group
    assert result.stabilized


def test_k0_with_trivial_structure_group_is_untwisted_k_theory(workspace) -> None:
    category = workspace.category('{"complex": "circle.json", "rep": {"builtin": "s3-u2"}, "G": ["()"]}', rs_bound=2)

    result = k0_graph(category)

    assert str(result.group) == "Z"
    assert k0_trivial_inclusion(result).isomorphism


def test_monodromy_orbits_of_the_twisted_circle(workspace) -> None:
    result = k0_graph(workspace.category("a3s3-circle.json", rs_bound=2))

    assert sorted(len(orbit) for orbit in result.orbits[0]) == [1, 2]
    assert len(result.monodromy) == 1
    assert result.to_json()["rank"] == 2


def test_k0_keeps_levels_apart_when_monodromy_twists_their_sections() -> None:
    """With ``G`` trivial the loop acts by ``-1`` on ``(H^0, H^1)``, so only levels of equal parity meet."""

    rep = builtin_rep("z2-u1")
    extension = make_extension(rep.group, [0])
    base = circle()
    category = build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base), rs_bound=2)

    result = k0_graph(category)
    (orbit,) = result.orbits[0]

    assert str(result.group) == "Z^2"
    assert result.groups[0].order == 2
    assert result.class_of(0, 0, orbit) != result.class_of(0, 1, orbit)
    assert result.class_of(0, 0, orbit) == result.class_of(0, 2, orbit)
    assert (0, 1) in result.verified and (0, 2) in result.verified
    assert result.exact
    assert result.stabilized_at == 1


def test_unresolved_joins_are_reported() -> None:
    """Level 2 of the twisted circle carries both lifts of the trivial character of ``A_3``."""

    rep, extension = _a3_in_s3()
    base = circle()
    category = build_special_category(base, extension, rep, circle_cocycle(extension.Q, 1, base), rs_bound=2)

    result = k0_graph(category)
    report = result.to_json()

    assert not result.exact
    assert {"component": 0, "levels": [0, 2], "orbit": [0]} in report["unresolved"]
    assert {"component": 0, "r": 2, "orbit": [0]} in report["splitBlocks"]
    assert report["exact"] is False


def test_untwisted_circle_is_exact(workspace) -> None:
    result = k0_graph(workspace.category("s3-circle.json", rs_bound=2))

    assert result.exact
    assert result.to_json()["unresolved"] == []
    assert result.groups[0].order == 6


@pytest.mark.parametrize(
    "build",
    [
        pytest.param(lambda ws: k0_point(builtin_rep("s3-u2")), id="s3-point"),
        pytest.param(lambda ws: k0_point(builtin_rep("z3-u1")), id="z3-point"),
        pytest.param(lambda ws: k0_graph(ws.category("a3s3-circle.json", rs_bound=2)), id="a3-in-s3"),
        pytest.param(lambda ws: k0_graph(ws.category("z2z4-circle.json", rs_bound=2)), id="z2-in-z4"),
    ],
)
def test_positive_cone(workspace, build) -> None:
    """Generators of the cone are the minimal classes; sampled sums add and cancel."""

    result = build(workspace)

    assert sorted(result.semigroup) == sorted(result.group.generator(k) for k in range(result.rank))
    assert result.to_json()["semigroup"] == [list(v) for v in result.semigroup]
    assert result.check_semigroup(samples=200, seed=7) == 200


def test_trivial_inclusion_and_unit_classes() -> None:
    rep = builtin_rep("z3-u1")
    result = k0_point(rep)

    inclusion = k0_trivial_inclusion(result)

    assert inclusion.injective
    assert inclusion.to_json()["generatedByUnits"] == "Z^3"
    assert inclusion.to_json()["cokernel"] == "0"
    assert result.unit_class(0) == result.unit_class(3)
    assert result.unit_class(1) != result.unit_class(2)


def test_projection_classes() -> None:
    """A full block evaluates to the unit class; oversized vectors are rejected."""

    result = k0_point(builtin_rep("s3-u2"))
    full = tuple(result.multiplicity(2, sigma) for sigma in range(3))

    assert result.evaluate(ProjectionObject(2, full)) == result.unit_class(2)
    with pytest.raises(ValidationError, match="exceeds block size"):
        result.evaluate(ProjectionObject(1, tuple(result.multiplicity(1, sigma) + 1 for sigma in range(3))))
    with pytest.raises(ValidationError, match="exceeds computed range"):
        result.evaluate(ProjectionObject(result.r_max + 1, full))
    with pytest.raises(ValidationError):
        ProjectionObject(0, (-1, 0, 0))
