import pytest

from twistk.core.errors import (
    ExactnessFailure,
    GroupTooLarge,
    InvalidGroupTable,
    NotASubgroup,
    NotNormal,
    ValidationError,
)
from twistk.groups.abelian import AbelianGroup, Quotient
from twistk.groups.abelianize import abelianize
from twistk.groups.builders import builtin_group, cyclic, dihedral, direct_product, quaternion, symmetric, trivial
from twistk.groups.extension import Extension, abelianized_row, make_extension
from twistk.groups.table import GroupHom, GroupTable, normalizer_in_ambient

from .samples import q8_center, z2_in_z4

NON_ASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_from_table_derives_identity_and_inverses() -> None:
    """A valid table with a non-zero identity index is accepted."""

    table = GroupTable.from_table([[1, 0], [0, 1]], ["a", "e"])

    assert table.identity == 1
    assert table.inverses == (0, 1)
    assert table.labels == ("a", "e")


@pytest.mark.parametrize(
    ("mult", "message"),
    [
        pytest.param([[0, 1], [1, 1]], "not a permutation", id="repeated-entry"),
        pytest.param(NON_ASSOCIATIVE_LOOP, "Associativity", id="loop"),
        pytest.param([], "at least one", id="empty"),
    ],
)
def test_from_table_rejects_non_groups(mult: list[list[int]], message: str) -> None:
    """Latin-square and associativity checks catch tables that are not groups."""

    with pytest.raises(InvalidGroupTable, match=message):
        GroupTable.from_table(mult)


def test_from_table_respects_order_cap() -> None:
    """Tables above the configured cap are refused before validation."""

    with pytest.raises(GroupTooLarge):
        GroupTable.from_table(cyclic(5).mult, max_order=4)


@pytest.mark.parametrize(
    ("name", "order", "abelian"),
    [
        pytest.param("trivial", 1, True, id="trivial"),
        pytest.param("z6", 6, True, id="cyclic"),
        pytest.param("s3", 6, False, id="symmetric"),
        pytest.param("d4", 8, False, id="dihedral"),
        pytest.param("q8", 8, False, id="quaternion"),
    ],
)
def test_builtin_groups(name: str, order: int, abelian: bool) -> None:
    """Named groups have the expected order and commutativity."""

    group = builtin_group(name)

    assert group.order == order
    assert group.is_abelian is abelian


def test_unknown_builtin_group() -> None:
    with pytest.raises(ValidationError, match="Unknown builtin group"):
        builtin_group("x7")


def test_quaternion_labels_and_center() -> None:
    """``Q8`` is labelled by unit quaternions and its center is ``{1, -1}``."""

    q8 = quaternion()

    assert set(q8.labels) == {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}
    assert {q8.labels[z] for z in q8.center()} == {"1", "-1"}
    assert q8.element_order(q8.index_of("i")) == 4
    assert len(q8.conjugacy_classes) == 5


def test_direct_product_orders_pairs() -> None:
    """``(x, y)`` sits at index ``x * |B| + y``."""

    product = direct_product(cyclic(2), cyclic(3))

    assert product.order == 6
    assert product.is_abelian
    assert product.labels[4] == "(1,1)"
    assert product.element_order(4) == 6


@pytest.mark.parametrize(
    ("group", "expected"),
    [
        pytest.param(cyclic(4), "Z4", id="z4"),
        pytest.param(symmetric(3), "Z2", id="s3"),
        pytest.param(quaternion(), "Z2xZ2", id="q8"),
        pytest.param(dihedral(4), "Z2xZ2", id="d4"),
        pytest.param(trivial(), "0", id="trivial"),
    ],
)
def test_abelianization(group: GroupTable, expected: str) -> None:
    """``L_ab`` is computed in invariant-factor form and ``pi_L`` is a homomorphism."""

    ab = abelianize(group)

    assert str(ab.group) == expected
    for a in group.elements:
        for b in group.elements:
            assert ab(group.mul(a, b)) == ab.group.add(ab(a), ab(b))
    assert set(ab.kernel()) == set(group.commutator_subgroup)


def test_abelianization_of_s3_kills_the_rotations() -> None:
    s3 = symmetric(3)

    assert {s3.labels[x] for x in abelianize(s3).commutator_subgroup} == {"()", "(0 1 2)", "(0 2 1)"}


def test_normalizer_in_ambient() -> None:
    """Normal subgroups are self-normalizing in the whole group; ``<(0 1)>`` in ``S3`` is not."""

    s3 = symmetric(3)
    q8 = quaternion()
    swap = s3.closure([s3.index_of("(0 1)")])

    assert normalizer_in_ambient(s3, [s3.identity]) == tuple(s3.elements)
    assert normalizer_in_ambient(q8, q8.center()) == tuple(q8.elements)
    assert normalizer_in_ambient(s3, swap) == swap
    with pytest.raises(NotASubgroup):
        normalizer_in_ambient(s3, [s3.index_of("(0 1)"), s3.index_of("(0 1 2)")])


def test_abelian_group_canonical_forms() -> None:
    """Products of cyclic groups are put in invariant-factor form."""

    assert str(AbelianGroup.from_orders([2, 3])) == "Z6"
    assert str(AbelianGroup.from_orders([4, 2])) == "Z2xZ4"
    assert str(AbelianGroup.from_orders([0, 2])) == "Z2xZ"
    assert AbelianGroup.from_orders([1]).is_trivial
    assert str(AbelianGroup.free(3)) == "Z^3"
    with pytest.raises(ValidationError):
        AbelianGroup((4, 6))


def test_quotient_projects_relations_to_zero() -> None:
    """Relations vanish in ``Z^n / R`` and lifts project back."""

    quotient = Quotient(2, [[2, 4]])

    assert str(quotient.group) == "Z2xZ"
    assert quotient.group.is_zero(quotient.project([2, 4]))
    element = quotient.project([1, 0])
    assert quotient.project(quotient.lift(element)) == element


def test_make_extension_builds_the_quotient() -> None:
    """``Z4 / {0, 2}`` is ``Z2`` with the identity coset first."""

    extension = z2_in_z4()

    assert (extension.G.order, extension.N.order, extension.Q.order) == (2, 4, 2)
    assert extension.Q.identity == 0
    assert extension.p.images == (0, 1, 0, 1)
    assert extension.section == (0, 1)
    assert extension.fiber(1) == (1, 3)


def test_make_extension_of_the_whole_group_has_trivial_quotient() -> None:
    s3 = symmetric(3)
    extension = make_extension(s3, s3.elements)

    assert extension.Q.order == 1
    assert str(abelianized_row(extension).Qab) == "0"


def test_make_extension_requires_a_normal_subgroup() -> None:
    s3 = symmetric(3)

    with pytest.raises(NotNormal):
        make_extension(s3, s3.closure([s3.index_of("(0 1)")]))


def test_explicit_extension_validates_its_maps() -> None:
    """Image lists are checked for exactness and the section for being a right inverse."""

    z2, z4 = cyclic(2), cyclic(4)

    extension = Extension.from_parts(z2, z4, z2, [0, 2], [0, 1, 0, 1])
    assert extension.section == (0, 1)
    assert extension.with_section([0, 3]).section == (0, 3)
    with pytest.raises(ValidationError, match="right inverse"):
        extension.with_section([0, 2])
    with pytest.raises(ValidationError, match="kernel"):
        Extension.from_parts(trivial(), z4, z2, [0], [0, 1, 0, 1])


def test_abelianized_row_is_exact_for_abelian_groups() -> None:
    row = abelianized_row(z2_in_z4())

    assert (str(row.Gab), str(row.Nab), str(row.Qab)) == ("Z2", "Z4", "Z2")
    assert row.iab.is_injective()
    assert row.pab.is_surjective()


def test_abelianized_row_of_q8_center_is_not_exact() -> None:
    """``{1, -1}`` lies in the commutator subgroup of ``Q8``, so ``iab`` is zero."""

    with pytest.raises(ExactnessFailure) as info:
        abelianized_row(q8_center())

    assert info.value.diagnosis == "iab not injective"


def test_homomorphisms_are_checked() -> None:
    z2, z4 = cyclic(2), cyclic(4)

    assert GroupHom(z4, z2, (0, 1, 0, 1)).kernel() == (0, 2)
    assert GroupHom.trivial(z4, z2).image() == (0,)
    with pytest.raises(ValidationError, match="multiplicative"):
        GroupHom(z2, z4, (0, 1))
