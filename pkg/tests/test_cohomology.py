import random

import pytest

from twistk.cohomology.cocycles import are_equivalent, gauge, holonomy, pushforward
from twistk.cohomology.delta import (
    connecting_delta_ab,
    dixmier_douady,
    homomorphic_section,
    quotient_projection,
    section_split_cocycle,
)
from twistk.cohomology.lifting import LiftSearch, lift_search, random_cocycle
from twistk.complexes.cochains import Cocycle1, GCochain1
from twistk.complexes.fixtures import circle, projective_plane, sphere, torus
from twistk.core.errors import SearchBudgetExceeded, ValidationError
from twistk.groups.builders import cyclic, symmetric
from twistk.groups.extension import abelianized_row, make_extension
from twistk.groups.table import GroupHom

from .samples import circle_cocycle, rp2_generator, z2_in_z4


@pytest.mark.parametrize(("g", "h"), [(g, h) for g in range(4) for h in range(4)])
def test_abelian_monodromies_are_equivalent_only_when_equal(g: int, h: int) -> None:
    """Over a circle with ``Z4`` values the holonomy is a complete invariant."""

    z4, base = cyclic(4), circle()

    gauge_data = are_equivalent(circle_cocycle(z4, g, base), circle_cocycle(z4, h, base))

    assert (gauge_data is not None) is (g == h)


def test_conjugate_transpositions_are_equivalent() -> None:
    """``(0 1)`` and ``(0 2)`` monodromies differ by a vertex gauge."""

    s3, base = symmetric(3), circle()
    first = circle_cocycle(s3, s3.index_of("(0 1)"), base)
    second = circle_cocycle(s3, s3.index_of("(0 2)"), base)

    u = are_equivalent(first, second)

    assert u is not None
    assert gauge(second, u).values == first.values
    assert are_equivalent(first, first) == (s3.identity,) * 3


def test_random_circle_cocycles_are_equivalent_exactly_when_holonomies_are_conjugate() -> None:
    s3, base = symmetric(3), circle()
    owner = {x: k for k, cls_ in enumerate(s3.conjugacy_classes) for x in cls_}
    rng = random.Random(3)

    for _ in range(100):
        first, second = (random_cocycle(base, s3, rng) for _ in range(2))
        same_class = owner[holonomy(first, [0, 1, 2])] == owner[holonomy(second, [0, 1, 2])]

        assert (are_equivalent(first, second) is not None) is same_class


def test_random_gauges_of_torus_cocycles_are_recovered() -> None:
    s3, base = symmetric(3), torus()
    rng = random.Random(5)

    for _ in range(100):
        cocycle = random_cocycle(base, s3, rng)
        moved = gauge(cocycle, [rng.randrange(s3.order) for _ in base.vertices])

        u = are_equivalent(cocycle, moved)

        assert u is not None
        assert gauge(moved, u).values == cocycle.values


def test_equivalence_needs_a_shared_complex() -> None:
    z2 = cyclic(2)

    with pytest.raises(ValidationError, match="same complex"):
        are_equivalent(circle_cocycle(z2, 1), circle_cocycle(z2, 1))


def test_holonomy_around_the_triangle() -> None:
    s3 = symmetric(3)
    rotation = s3.index_of("(0 1 2)")
    cocycle = circle_cocycle(s3, rotation)

    assert holonomy(cocycle, [0, 1, 2]) == rotation
    assert holonomy(cocycle, [0]) == s3.identity


def test_pushforward() -> None:
    """Identity keeps a cocycle, trivial maps flatten it and even permutations die in ``S3 -> Z2``."""

    s3, z2 = symmetric(3), cyclic(2)
    sign = make_extension(s3, s3.commutator_subgroup)
    rotation = circle_cocycle(s3, s3.index_of("(0 1 2)"))
    swap = circle_cocycle(s3, s3.index_of("(0 1)"))

    assert pushforward(GroupHom.identity(s3), rotation).values == rotation.values
    assert set(pushforward(GroupHom.trivial(s3, z2), swap).values) == {z2.identity}
    assert set(pushforward(sign.p, rotation).values) == {sign.Q.identity}
    assert set(pushforward(sign.p, swap).values) != {sign.Q.identity}


def test_bockstein_of_the_rp2_generator_is_nonzero(bockstein) -> None:
    """``Z2 -> Z4 -> Z2`` over ``RP^2``: the generator has a nonzero class in ``H^2(RP^2, Z2)``."""

    extension, cocycle = bockstein

    result = dixmier_douady(extension, cocycle)

    assert result.to_json() == {"class": [1], "group": "Z2", "zero": False}


def test_bockstein_has_no_lift(bockstein) -> None:
    """Exhaustive search over all fibre choices agrees with the nonzero class."""

    extension, cocycle = bockstein

    outcome = LiftSearch(extension, cocycle).run()

    assert outcome.lift is None
    assert outcome.exhaustive
    assert outcome.nodes > 0


def test_search_budget_is_enforced(bockstein) -> None:
    extension, cocycle = bockstein

    with pytest.raises(SearchBudgetExceeded) as info:
        LiftSearch(extension, cocycle, budget=1).run()

    assert info.value.nodes == 1


def test_trivial_cocycle_lifts_to_the_trivial_cocycle() -> None:
    extension = z2_in_z4()
    trivial = GCochain1.constant(projective_plane(), extension.Q)

    lift = lift_search(extension, trivial)

    assert lift is not None
    assert set(lift.values) == {extension.N.identity}
    assert dixmier_douady(extension, trivial).is_zero()


def test_circle_monodromy_lifts_to_a_generator() -> None:
    """Over a graph every cocycle lifts; the nontrivial class lifts to an odd element of ``Z4``."""

    extension = z2_in_z4()
    cocycle = circle_cocycle(extension.Q, 1)

    lift = lift_search(extension, cocycle)

    assert lift is not None
    assert holonomy(lift, [0, 1, 2]) in (1, 3)
    assert pushforward(extension.p, lift).values == cocycle.values
    assert dixmier_douady(extension, cocycle).is_zero()


@pytest.mark.parametrize(
    ("complex_factory", "n", "subgroup"),
    [
        pytest.param(projective_plane, 4, [0, 2], id="rp2-z2-z4"),
        pytest.param(sphere, 4, [0, 2], id="sphere-z2-z4"),
        pytest.param(torus, 6, [0, 2, 4], id="torus-z3-z6"),
        pytest.param(projective_plane, 8, [0, 4], id="rp2-z2-z8"),
    ],
)
def test_pushed_forward_cocycles_have_no_obstruction(complex_factory, n: int, subgroup: list[int]) -> None:
    """``delta(p_* n) = 0`` for randomly sampled ``N``-cocycles."""

    base = complex_factory()
    extension = make_extension(cyclic(n), subgroup)
    rng = random.Random(n)

    for _ in range(50):
        upstairs = random_cocycle(base, extension.N, rng)
        assert dixmier_douady(extension, pushforward(extension.p, upstairs)).is_zero()


def test_obstruction_is_a_class_invariant(bockstein) -> None:
    """Gauging the cocycle leaves its class unchanged."""

    extension, cocycle = bockstein
    rng = random.Random(7)

    for _ in range(100):
        u = [rng.randrange(extension.Q.order) for _ in cocycle.complex.vertices]
        moved = gauge(cocycle, u)
        assert are_equivalent(cocycle, moved) is not None
        assert dixmier_douady(extension, moved) == dixmier_douady(extension, cocycle)


def test_section_split_cocycle_has_the_abelian_class(bockstein) -> None:
    """When ``Q -> Q_ab`` splits, ``delta(S_* z) = delta_ab(z)``."""

    extension, cocycle = bockstein
    row = abelianized_row(extension)
    z = pushforward(quotient_projection(row), cocycle)

    assert homomorphic_section(row) is not None
    assert dixmier_douady(extension, section_split_cocycle(row, z)) == connecting_delta_ab(row, z)


def test_delta_requires_quotient_values(bockstein) -> None:
    extension, _ = bockstein

    with pytest.raises(ValidationError, match="quotient"):
        dixmier_douady(extension, Cocycle1.of(GCochain1.constant(circle(), extension.N)))


def test_lift_from_generator_on_another_rp2_copy_is_still_obstructed() -> None:
    """The verdict depends only on the data, not on object identity of the complex."""

    extension = z2_in_z4()
    cocycle = rp2_generator(extension.Q, projective_plane())

    assert lift_search(extension, cocycle) is None
