import pytest

from twistk.complexes.cochains import ACochain2, Cocycle1, GCochain1, first_cocycle_failure, is_cocycle
from twistk.complexes.complex import SimplicialComplex, validate_complex
from twistk.complexes.fixtures import builtin_complex, circle, point, projective_plane, sphere, torus
from twistk.complexes.h2 import h2_presentation
from twistk.core.errors import InvalidCochain, MissingFace, ValidationError
from twistk.groups.abelian import AbelianGroup
from twistk.groups.builders import cyclic, symmetric

Z2 = AbelianGroup.from_orders([2])


def test_triangle_boundary_is_a_circle() -> None:
    """Three edges, one component, no 2-simplices."""

    report = validate_complex(SimplicialComplex.from_facets(3, [(0, 1), (1, 2), (0, 2)]))

    assert report.f_vector == (3, 3)
    assert report.components == ((0, 1, 2),)
    assert [str(h) for h in report.homology] == ["Z", "Z"]


def test_projective_plane_homology() -> None:
    """The six-vertex ``RP^2`` has 15 edges, 10 triangles and ``H_1 = Z2``."""

    report = validate_complex(projective_plane())

    assert report.f_vector == (6, 15, 10)
    assert report.euler_characteristic == 1
    assert [str(h) for h in report.homology] == ["Z", "Z2", "0"]


@pytest.mark.parametrize(
    ("name", "homology"),
    [
        pytest.param("point", ["Z"], id="point"),
        pytest.param("sphere", ["Z", "0", "Z"], id="sphere"),
        pytest.param("torus", ["Z", "Z^2", "Z"], id="torus"),
    ],
)
def test_builtin_complex_homology(name: str, homology: list[str]) -> None:
    assert [str(h) for h in builtin_complex(name).homology()] == homology


def test_missing_face_is_reported() -> None:
    """A triangle without one of its edges is rejected with the missing face."""

    with pytest.raises(MissingFace) as info:
        SimplicialComplex(3, ((0, 1), (1, 2), (0, 1, 2)))

    assert info.value.face == (0, 2)


def test_simplices_must_use_known_vertices() -> None:
    with pytest.raises(ValidationError, match="outside"):
        SimplicialComplex(2, ((0, 2),))


def test_two_components() -> None:
    complex_ = SimplicialComplex.from_facets(5, [(0, 1), (2, 3), (3, 4)])

    assert complex_.components == ((0, 1), (2, 3, 4))
    assert complex_.facets() == ((0, 1), (2, 3), (3, 4))


@pytest.mark.parametrize(
    ("complex_", "coefficients", "expected"),
    [
        pytest.param(circle(), Z2, "0", id="circle"),
        pytest.param(point(), AbelianGroup.from_orders([4]), "0", id="point"),
        pytest.param(sphere(), Z2, "Z2", id="sphere"),
        pytest.param(projective_plane(), Z2, "Z2", id="rp2-z2"),
        pytest.param(projective_plane(), AbelianGroup.from_orders([3]), "0", id="rp2-z3"),
        pytest.param(projective_plane(), AbelianGroup.from_orders([4]), "Z2", id="rp2-z4"),
        pytest.param(torus(), AbelianGroup.from_orders([2, 4]), "Z2xZ4", id="torus"),
        pytest.param(sphere(), AbelianGroup.from_orders([6]), "Z6", id="sphere-z6"),
    ],
)
def test_second_cohomology(complex_: SimplicialComplex, coefficients: AbelianGroup, expected: str) -> None:
    """``H^2(X, A)`` through Smith normal form of the simplicial coboundaries."""

    assert str(h2_presentation(complex_, coefficients).class_group) == expected


def test_h2_requires_finite_coefficients() -> None:
    with pytest.raises(ValidationError):
        h2_presentation(sphere(), AbelianGroup.free(1))


def test_projection_detects_classes_on_the_sphere() -> None:
    """One marked triangle is the generator; two adjacent ones form a coboundary."""

    base = sphere()
    presentation = h2_presentation(base, Z2)
    one = ACochain2(base, Z2, tuple((1,) if t == (0, 1, 2) else (0,) for t in base.triangles))
    two = ACochain2(base, Z2, tuple((1,) if t in {(0, 1, 2), (0, 1, 3)} else (0,) for t in base.triangles))

    assert not presentation.project(one).is_zero()
    assert presentation.project(two).is_zero()
    assert presentation.project(ACochain2.zero(base, Z2)) == presentation.zero()


def test_cochain_orientation() -> None:
    """Reversed edges read the inverse value."""

    z4 = cyclic(4)
    cochain = GCochain1.from_mapping(circle(), z4, {(0, 1): 1, (2, 1): 1, (0, 2): 3})

    assert cochain(0, 1) == 1
    assert cochain(1, 0) == 3
    assert cochain(1, 2) == 3
    assert cochain.to_json() == {"0-1": 1, "0-2": 3, "1-2": 3}


def test_cochain_needs_every_edge_without_default() -> None:
    with pytest.raises(InvalidCochain, match="no value"):
        GCochain1.from_mapping(circle(), cyclic(2), {(0, 1): 1})


def test_cocycle_identity() -> None:
    """Constant identity is a cocycle; on a graph every cochain is; the tetrahedron catches a failure."""

    z2 = cyclic(2)
    bad = GCochain1.from_mapping(sphere(), z2, {(0, 1): 1, (1, 2): 1}, default=0)

    assert is_cocycle(GCochain1.constant(sphere(), symmetric(3)))
    assert is_cocycle(GCochain1.from_mapping(circle(), z2, {(0, 1): 1}, default=0))
    assert first_cocycle_failure(bad) == (0, 1, 3)
    with pytest.raises(InvalidCochain, match="Cocycle identity"):
        Cocycle1.of(bad)
