from fractions import Fraction

import pytest
from sympy import eye
from sympy import Matrix as SymMatrix

from twistk.core import linalg
from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import ValidationError
from twistk.core.matrices import Matrix
from twistk.core.settings import Settings
from twistk.core.smith import smith_decomposition


def test_roots_of_unity_satisfy_their_relations() -> None:
    """Powers of primitive roots close up and sum to zero."""

    omega = Cyclotomic.root_of_unity(3)
    i = Cyclotomic.root_of_unity(4)

    assert omega**3 == Cyclotomic.one(3)
    assert (Cyclotomic.one(3) + omega + omega**2).is_zero()
    assert i * i == Cyclotomic.rational(-1, 4)
    assert omega.conjugate() == omega**2


def test_mixed_conductors_are_compared_in_a_common_field() -> None:
    """``zeta_6^2`` and ``zeta_3`` are the same number."""

    assert Cyclotomic.root_of_unity(6, 2) == Cyclotomic.root_of_unity(3)
    assert Cyclotomic.root_of_unity(4, 2) == -1


def test_inverse_and_norm() -> None:
    """Field inverses are exact and roots of unity have norm one."""

    x = Cyclotomic.one(3) + Cyclotomic.root_of_unity(3)

    assert x * x.inverse() == 1
    assert Cyclotomic.root_of_unity(4).norm() == 1
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(5).inverse()


def test_scalars_read_from_json_text() -> None:
    """Rational strings and coefficient lists are accepted."""

    assert Cyclotomic.from_json("-1/2") == Fraction(-1, 2)
    assert Cyclotomic.from_json(["0", "1"], 4) == Cyclotomic.root_of_unity(4)
    with pytest.raises(ValueError):
        Cyclotomic([1, 2, 3], 4)


def test_matrix_algebra_is_exact() -> None:
    """Products, adjoints and Kronecker products over ``Q(i)``."""

    i = Cyclotomic.root_of_unity(4)
    m = Matrix([[0, i], [i, 0]], 4)

    assert m.is_unitary()
    assert m @ m == Matrix.identity(2, 4).scale(-1)
    assert m.adjoint() == m.scale(-1)
    assert m.kron(Matrix.identity(3)).shape == (6, 6)
    assert m.determinant() == 1
    assert Matrix([[1, 2], [3, 4]]).inverse() @ Matrix([[1, 2], [3, 4]]) == Matrix.identity(2)


def test_tensor_power_of_empty_degree_is_scalar() -> None:
    """The zeroth tensor power is the ``1 x 1`` identity."""

    assert Matrix([[0, 1], [1, 0]]).tensor_power(0) == Matrix.identity(1)
    assert Matrix([[0, 1], [1, 0]]).tensor_power(2).shape == (4, 4)


def test_gaussian_elimination_over_rationals() -> None:
    """Rank, nullspace, determinant and inverse agree with hand computations."""

    one = Fraction(1)
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]

    assert linalg.rank(rows, one=one) == 1
    assert linalg.nullspace(rows, 2, one=one) == [[Fraction(-2), Fraction(1)]]
    assert linalg.determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]], one=one) == -2
    with pytest.raises(ZeroDivisionError):
        linalg.inverse(rows, one=one)


@pytest.mark.parametrize(
    ("matrix", "diagonal"),
    [
        pytest.param([[2, 4], [6, 8]], (2, 4), id="two-by-two"),
        pytest.param([[0, 0], [0, 0]], (0, 0), id="zero"),
        pytest.param([[1, 1, 0], [0, 1, 1], [1, 0, 1]], (1, 1, 2), id="triangle-boundary"),
        pytest.param([[4, 6]], (2,), id="single-row"),
        pytest.param([[0, -2]], (2,), id="negative-entry"),
    ],
)
def test_smith_form_is_diagonal_with_divisibility(matrix: list[list[int]], diagonal: tuple[int, ...]) -> None:
    """``U A V`` is the diagonal matrix of invariant factors and the transforms are unimodular."""

    snf = smith_decomposition(matrix)
    m, n = len(matrix), len(matrix[0])
    product = SymMatrix(snf.left) * SymMatrix(matrix) * SymMatrix(snf.right)

    assert snf.diagonal == diagonal
    assert product == SymMatrix(m, n, lambda i, j: diagonal[i] if i == j else 0)
    assert SymMatrix(snf.left) * SymMatrix(snf.left_inv) == eye(m)
    assert SymMatrix(snf.right) * SymMatrix(snf.right_inv) == eye(n)


def test_smith_form_of_a_matrix_without_rows() -> None:
    snf = smith_decomposition([], ncols=3)

    assert snf.diagonal == ()
    assert snf.rank == 0
    assert snf.right == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_settings_read_environment() -> None:
    """``TWISTK_*`` variables override defaults; blanks are ignored and garbage is rejected."""

    settings = Settings.from_env({"TWISTK_SEARCH_BUDGET": "5", "TWISTK_MAX_GROUP_ORDER": ""})

    assert settings.search_budget == 5
    assert settings.max_group_order == Settings().max_group_order
    with pytest.raises(ValidationError):
        Settings.from_env({"TWISTK_SEARCH_BUDGET": "many"})
    with pytest.raises(ValidationError):
        Settings.from_env({"TWISTK_MAX_OPERATOR_ENTRIES": "0"})
