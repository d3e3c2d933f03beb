import pytest

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import BoundExceeded, InvalidRepresentation, NotNormalizing, NotUnitary, ValidationError
from twistk.core.matrices import Matrix
from twistk.core.settings import Settings
from twistk.groups.builders import cyclic, quaternion, symmetric
from twistk.groups.extension import make_extension
from twistk.repcat.actions import DualCategory, hat_action
from twistk.repcat.catalog import builtin_rep
from twistk.repcat.characters import CharacterTable, character_table
from twistk.repcat.intertwiners import (
    cross_check,
    expected_dimension,
    flip,
    intertwiners,
    intertwiners_by_equations,
    is_intertwiner,
    tensor_power,
)
from twistk.repcat.reps import UnitaryRep


@pytest.mark.parametrize(
    ("name", "r", "s", "dimension"),
    [
        pytest.param("s3-u2", 0, 0, 1, id="s3-scalars"),
        pytest.param("s3-u2", 1, 0, 0, id="s3-no-invariant-vector"),
        pytest.param("s3-u2", 1, 1, 1, id="s3-irreducible"),
        pytest.param("s3-u2", 2, 1, 1, id="s3-21"),
        pytest.param("s3-u2", 2, 2, 3, id="s3-22"),
        pytest.param("s3-u2", 3, 3, 11, id="s3-33"),
        pytest.param("q8-u2", 2, 0, 1, id="q8-determinant"),
        pytest.param("q8-u2", 1, 0, 0, id="q8-odd"),
        pytest.param("q8-u2", 2, 2, 4, id="q8-22"),
        pytest.param("z3-u1", 3, 0, 1, id="z3-cube"),
        pytest.param("z3-u1", 1, 0, 0, id="z3-linear"),
        pytest.param("trivial-u2", 2, 1, 8, id="trivial"),
    ],
)
def test_intertwiner_dimensions(name: str, r: int, s: int, dimension: int) -> None:
    """Basis sizes agree with the character inner product."""

    rep = builtin_rep(name)
    basis = intertwiners(rep, r, s)

    assert basis.dimension == dimension
    assert expected_dimension(rep, r, s) == dimension
    assert all(is_intertwiner(rep, t, r, s) for t in basis.basis)


@pytest.mark.parametrize(("r", "s"), [(0, 0), (1, 1), (2, 0), (1, 3), (2, 2)])
def test_parity_of_the_sign_representation(r: int, s: int) -> None:
    """``Z2`` acting by ``-1`` has intertwiners exactly in even total degree."""

    rep = builtin_rep("z2-u1")

    assert intertwiners(rep, r, s).dimension == (1 if (r + s) % 2 == 0 else 0)
    assert intertwiners(rep, r, s + 1).dimension == (1 if (r + s + 1) % 2 == 0 else 0)


def test_both_methods_give_the_same_reduced_basis() -> None:
    rep = builtin_rep("s3-u2")

    assert cross_check(rep, 2, 2).dimension == 3
    assert intertwiners_by_equations(rep, 1, 1).basis == intertwiners(rep, 1, 1).basis


def test_flip_is_an_intertwiner() -> None:
    """The symmetry ``theta_{1,1}`` commutes with the diagonal action."""

    rep = builtin_rep("s3-u2")
    theta = flip(2, 1, 1, rep.conductor)
    basis = intertwiners(rep, 2, 2)

    assert theta @ theta == Matrix.identity(4)
    assert is_intertwiner(rep, theta, 2, 2)
    assert basis.contains(theta)
    assert basis.combine(basis.coordinates(theta)) == theta
    assert flip(2, 2, 1) @ flip(2, 1, 2) == Matrix.identity(8)


def test_coordinates_reject_non_intertwiners() -> None:
    rep = builtin_rep("s3-u2")
    basis = intertwiners(rep, 1, 1)

    assert not basis.contains(Matrix([[1, 0], [0, 0]]))
    with pytest.raises(ValidationError):
        basis.coordinates(Matrix.identity(4))


def test_operator_bound_is_enforced() -> None:
    rep = builtin_rep("s3-u2")

    with pytest.raises(BoundExceeded):
        intertwiners(rep, 2, 2, settings=Settings(max_operator_entries=16))


def test_tensor_power_of_empty_degree() -> None:
    rep = builtin_rep("q8-u2")

    assert tensor_power(rep, rep.group.index_of("i"), 0) == Matrix.identity(1)
    assert tensor_power(rep, rep.group.index_of("-1"), 2) == Matrix.identity(4)


def test_representation_validation() -> None:
    """Non-unitary or non-multiplicative assignments are rejected."""

    z2 = cyclic(2)

    with pytest.raises(NotUnitary):
        UnitaryRep.from_matrices(z2, [Matrix.identity(1), Matrix([[2]])])
    with pytest.raises(InvalidRepresentation):
        UnitaryRep.from_matrices(z2, [Matrix.identity(1), Matrix([[Cyclotomic.root_of_unity(4)]], 4)])
    with pytest.raises(ValidationError, match="Unknown builtin representation"):
        builtin_rep("s4-u3")


def test_generated_matrix_group() -> None:
    """``i`` and ``j`` as ``SU(2)`` matrices generate ``Q8``."""

    i = Cyclotomic.root_of_unity(4)
    rep = UnitaryRep.from_generators([Matrix([[i, 0], [0, -i]], 4), Matrix([[0, 1], [-1, 0]], 4)])

    assert rep.group.order == 8
    assert rep.is_faithful()
    assert rep.in_special_unitary()
    assert not builtin_rep("z2-u1").in_special_unitary()


@pytest.mark.parametrize(
    ("group", "degrees"),
    [
        pytest.param(cyclic(4), [1, 1, 1, 1], id="z4"),
        pytest.param(symmetric(3), [1, 1, 2], id="s3"),
        pytest.param(quaternion(), [1, 1, 1, 1, 2], id="q8"),
    ],
)
def test_character_tables(group, degrees: list[int]) -> None:
    """Computed tables pass both orthogonality relations and start with the trivial character."""

    table = character_table(group)

    assert sorted(table.degrees) == degrees
    assert sum(d * d for d in table.degrees) == group.order
    assert all(x == 1 for x in table.character(0))
    table.validate()


def test_decomposition_of_the_two_dimensional_irreducible() -> None:
    rep = builtin_rep("s3-u2")
    table = character_table(rep.group)

    multiplicities = table.decompose(rep.character)

    assert sum(multiplicities) == 1
    assert table.degrees[multiplicities.index(1)] == 2


def test_supplied_character_table_is_checked() -> None:
    z2 = cyclic(2)
    one, minus = Cyclotomic.one(), Cyclotomic.rational(-1)

    table = CharacterTable.from_values(z2, [[one, one], [one, minus]])

    assert table.degrees == (1, 1)
    with pytest.raises(ValidationError, match="orthogonality"):
        CharacterTable.from_values(z2, [[one, one], [one, one]])


def test_quotient_action_swaps_the_rotation_characters() -> None:
    """Over ``A3 -> S3 -> Z2`` the transposition exchanges the two eigenlines."""

    rep = builtin_rep("s3-u2")
    extension = make_extension(rep.group, rep.group.commutator_subgroup)
    dual = DualCategory(extension, rep)

    identity, swap = dual.action(1, 1)

    assert dual.arrows(1, 1).dimension == 2
    assert identity.is_identity()
    assert not swap.is_identity()
    assert (swap @ swap).is_identity()
    dual.check_unitary(1, 1)
    dual.check_unitary(2, 2)


def test_dual_category_needs_the_middle_group() -> None:
    rep = builtin_rep("s3-u2")

    with pytest.raises(InvalidRepresentation):
        DualCategory(make_extension(symmetric(3), [0]), rep)


def test_hat_action_needs_a_normalizing_element() -> None:
    rep = builtin_rep("s3-u2")
    s3 = rep.group
    swap_subgroup = s3.closure([s3.index_of("(0 1)")])

    with pytest.raises(NotNormalizing):
        hat_action(rep, s3.index_of("(0 1 2)"), Matrix.identity(2), 1, 1, subgroup=swap_subgroup)


HAT_SAMPLES = [
    pytest.param("s3-u2", id="a3-in-s3"),
    pytest.param("z4-u1", id="z2-in-z4"),
    pytest.param("q8-u2", id="center-of-q8"),
]


def _sample_dual(name: str) -> DualCategory:
    rep = builtin_rep(name)
    group = rep.group
    subgroups = {
        "s3-u2": lambda: group.commutator_subgroup,
        "z4-u1": lambda: [0, 2],
        "q8-u2": lambda: [group.index_of("1"), group.index_of("-1")],
    }
    return DualCategory(make_extension(group, subgroups[name]()), rep)


def _degrees(bound: int) -> list[tuple[int, int]]:
    return [(r, total - r) for total in range(bound + 1) for r in range(total + 1)]


@pytest.mark.parametrize("name", HAT_SAMPLES)
def test_hat_action_fixes_the_symmetry(name: str) -> None:
    dual = _sample_dual(name)

    for r, s in _degrees(4):
        theta = flip(dual.d, r, s)
        for u in dual.extension.N.elements:
            assert dual.hat(u, theta, r + s, r + s) == theta


@pytest.mark.parametrize("name", HAT_SAMPLES)
def test_hat_action_preserves_composition_and_adjoints(name: str) -> None:
    dual = _sample_dual(name)
    degrees = [(r, s, p) for r in range(3) for s in range(3) for p in range(3)]

    for u in dual.extension.N.elements:
        for r, s, p in degrees:
            for t in dual.arrows(r, s).basis:
                image = dual.hat(u, t, r, s)
                assert dual.hat(u, t.adjoint(), s, r) == image.adjoint()
                for t2 in dual.arrows(s, p).basis:
                    assert dual.hat(u, t2 @ t, r, p) == dual.hat(u, t2, s, p) @ image


@pytest.mark.parametrize("name", HAT_SAMPLES)
def test_hat_action_preserves_tensor_products(name: str) -> None:
    dual = _sample_dual(name)
    pairs = [(a, b) for a in _degrees(4) for b in _degrees(4) if sum(a) + sum(b) <= 4]

    for u in dual.extension.N.elements:
        for (r, s), (r2, s2) in pairs:
            for t in dual.arrows(r, s).basis:
                for t2 in dual.arrows(r2, s2).basis:
                    expected = dual.hat(u, t, r, s).kron(dual.hat(u, t2, r2, s2))
                    assert dual.hat(u, t.kron(t2), r + r2, s + s2) == expected


@pytest.mark.parametrize("name", HAT_SAMPLES)
def test_hat_action_only_depends_on_the_coset(name: str) -> None:
    """``hat(u g) = hat(u)`` on intertwiners for every ``g`` in ``G``; ``hat(g)`` is the identity."""

    dual = _sample_dual(name)
    N = dual.extension.N

    for r, s in _degrees(4):
        for t in dual.arrows(r, s).basis:
            for g in dual.extension.kernel_elements:
                assert dual.hat(g, t, r, s) == t
                for u in N.elements:
                    assert dual.hat(N.mul(u, g), t, r, s) == dual.hat(u, t, r, s)
