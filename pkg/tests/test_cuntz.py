import random

import pytest

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import MixedDegree, NotUnitary, ParseError, ValidationError
from twistk.core.matrices import Matrix
from twistk.cuntz.expr import format_element, parse_element
from twistk.cuntz.words import CuntzElement, fixed_elements, flip_element, index_word, word_index
from twistk.repcat.catalog import builtin_rep
from twistk.repcat.intertwiners import flip, intertwiners


def test_generators_are_isometries_with_orthogonal_ranges() -> None:
    """``psi_i* psi_j = delta_ij`` in normal form."""

    one = CuntzElement.scalar(2)
    s1, s2 = CuntzElement.generator(2, 1), CuntzElement.generator(2, 2)

    assert s1.adjoint() * s1 == one
    assert (s1.adjoint() * s2).is_zero()
    assert (s1 * s1.adjoint()).to_matrix() == Matrix([[1, 0], [0, 0]])


def test_range_projections_sum_to_the_identity_matrix() -> None:
    """``sum_i psi_i psi_i*`` is the identity on ``H``."""

    total = parse_element("s(1)s(1)* + s(2)s(2)* + s(3)s(3)*", d=3)

    assert total.degree() == (1, 1)
    assert total.to_matrix() == Matrix.identity(3)


def test_adjoint_reverses_words_and_conjugates() -> None:
    element = parse_element("i s(1)s(2)s(1)*", d=2)

    adjoint = element.adjoint()

    assert adjoint == CuntzElement.monomial(2, (1,), (1, 2), -Cyclotomic.root_of_unity(4))
    assert adjoint.adjoint() == element
    assert element.to_matrix().adjoint() == adjoint.to_matrix()


def test_word_indices_use_the_first_letter_as_most_significant() -> None:
    assert word_index((1, 1), 2) == 0
    assert word_index((2, 1), 2) == 2
    assert index_word(5, 3, 2) == (2, 1, 2)
    assert index_word(0, 0, 4) == ()


def test_matrix_round_trip() -> None:
    """Degree ``(1, 2)`` elements are ``4 x 2`` matrices."""

    matrix = Matrix([[1, 0], [0, 2], [3, 0], [0, 0]])

    element = CuntzElement.from_matrix(2, matrix, 1, 2)

    assert element.degree() == (1, 2)
    assert element.to_matrix() == matrix
    assert len(element.terms) == 3
    with pytest.raises(ValidationError):
        CuntzElement.from_matrix(2, matrix, 2, 1)


def test_products_compose_like_matrices() -> None:
    a = parse_element("s(1)s(2)* + 2 s(2)s(2)*", d=2)
    b = parse_element("s(2)s(1)* - s(1)s(1)*", d=2)

    assert (a * b).to_matrix() == a.to_matrix() @ b.to_matrix()


def _random_element(rng: random.Random, r: int, s: int, d: int = 2) -> CuntzElement:
    """A few monomials ``c psi_I psi_J*`` with ``|J| = r`` and ``|I| = s``."""

    coefficients = [1, -1, 2, Cyclotomic.root_of_unity(4), -Cyclotomic.root_of_unity(4)]
    terms = []
    for _ in range(rng.randint(1, 4)):
        i = tuple(rng.randint(1, d) for _ in range(s))
        j = tuple(rng.randint(1, d) for _ in range(r))
        terms.append((i, j, rng.choice(coefficients)))
    return CuntzElement.from_terms(d, terms)


def test_random_graded_products_match_matrix_products() -> None:
    """``psi_I psi_J*`` of degree ``(r, s)`` equals ``psi_Ik psi_Jk*`` summed over ``k``, i.e. ``A (x) 1``."""

    rng = random.Random(2024)

    for _ in range(500):
        r, s, t, u = (rng.randint(0, 3) for _ in range(4))
        a, b = _random_element(rng, r, s), _random_element(rng, t, u)
        left, right = a.to_matrix(r, s), b.to_matrix(t, u)
        if r >= u:
            expected = left @ right.kron(Matrix.identity(2 ** (r - u)))
            degree = (t + r - u, s)
        else:
            expected = left.kron(Matrix.identity(2 ** (u - r))) @ right
            degree = (t, s + u - r)

        assert (a * b).to_matrix(*degree) == expected


def test_random_triples_multiply_associatively() -> None:
    rng = random.Random(11)

    for _ in range(200):
        a, b, c = (_random_element(rng, rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3))

        assert (a * b) * c == a * (b * c)
        assert (a * b).adjoint() == b.adjoint() * a.adjoint()


def test_mixed_degrees_have_no_matrix() -> None:
    mixed = parse_element("s(1) + s(1)s(2)*", d=2)

    assert mixed.degrees() == frozenset({(0, 1), (1, 1)})
    with pytest.raises(MixedDegree):
        mixed.to_matrix()
    with pytest.raises(MixedDegree):
        CuntzElement.zero(2).to_matrix()
    assert CuntzElement.zero(2).to_matrix(1, 1) == Matrix([[0, 0], [0, 0]])


@pytest.mark.parametrize(("r", "s"), [(1, 1), (2, 1), (1, 2)])
def test_flip_element_matches_the_flip_matrix(r: int, s: int) -> None:
    assert flip_element(2, r, s).to_matrix() == flip(2, r, s)


def test_parse_example_flip_expression() -> None:
    theta = parse_element("s(1)s(2)s(1)*s(2)* + s(1)s(1)s(1)*s(1)*", d=2)

    assert theta.to_matrix().shape == (4, 4)
    assert theta.degree() == (2, 2)


@pytest.mark.parametrize(
    "text",
    [
        "s(1)s(2)*",
        "2 s(1)s(2)* - i s(2)s(2)*",
        "1/2 + z3^2 s(1)",
        "s(1)s(2)s(1)*s(2)* + s(1)s(1)s(1)*s(1)*",
    ],
)
def test_format_is_read_back_by_the_parser(text: str) -> None:
    element = parse_element(text, d=2)

    assert parse_element(format_element(element), d=2) == element


def test_format_output() -> None:
    assert format_element(parse_element("s(1)s(2)* - s(2)", d=2)) == "-s(2) + s(1)s(2)*"
    assert str(CuntzElement.zero(3)) == "0"


@pytest.mark.parametrize(
    ("text", "message"),
    [
        pytest.param("s(3)", "out of range", id="letter"),
        pytest.param("s(1) +", "end of expression", id="dangling-operator"),
        pytest.param("(s(1)", "Unclosed", id="parenthesis"),
        pytest.param("s(1) $", "Unexpected character", id="character"),
        pytest.param("", "Empty", id="empty"),
    ],
)
def test_parse_errors(text: str, message: str) -> None:
    with pytest.raises(ParseError, match=message):
        parse_element(text, d=2)


def test_json_round_trip_keeps_cyclotomic_coefficients() -> None:
    element = parse_element("z3 s(1)s(2)* + 1/3 s(2)", d=2)

    assert CuntzElement.from_json(element.to_json()) == element
    with pytest.raises(ValidationError, match="Malformed"):
        CuntzElement.from_json({"d": 2})


def test_unitary_action_fixed_points_are_the_intertwiners() -> None:
    """Elements fixed by every ``S3`` matrix correspond to ``(H^r, H^s)_G``."""

    rep = builtin_rep("s3-u2")

    for r, s in [(1, 1), (2, 2)]:
        fixed = fixed_elements(2, rep.matrices, r, s)
        basis = intertwiners(rep, r, s)
        assert len(fixed) == basis.dimension
        assert all(basis.contains(element.to_matrix(r, s)) for element in fixed)


def test_unitary_action_needs_a_unitary() -> None:
    with pytest.raises(NotUnitary):
        CuntzElement.generator(2, 1).ud_action(Matrix([[1, 1], [0, 1]]))
