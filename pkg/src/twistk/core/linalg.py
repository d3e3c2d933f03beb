"""Exact linear algebra over ``Q`` and ``Q(zeta_n)`` on sympy's ``DomainMatrix``.

Entries are ``Fraction`` or :class:`~twistk.core.cyclotomic.Cyclotomic`; ``one`` picks
the field. Cyclotomic entries are lifted to a common conductor and mapped into
``QQ.algebraic_field`` with ``zeta_n`` as primitive element, so power-basis
coordinates carry over unchanged.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Sequence, TypeVar

from sympy import QQ, AlgebraicNumber, I, Poly, Symbol, cyclotomic_poly, exp, pi
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from twistk.core.cyclotomic import Cyclotomic, lcm, phi

__all__ = ["rref", "nullspace", "rank", "determinant", "inverse", "solve_in_basis"]

T = TypeVar("T")

_X = Symbol("x")


@lru_cache(maxsize=None)
def _number_field(conductor: int) -> Any:
    minpoly = Poly(cyclotomic_poly(conductor, _X), _X, domain=QQ)
    root = AlgebraicNumber((minpoly, exp(2 * pi * I / conductor)))
    return QQ.algebraic_field(root)


def _rational(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class _Field:
    """Maps entries to a sympy domain and back."""

    def __init__(self, one: Any, rows: Sequence[Sequence[Any]]):
        self.conductor = 0
        if isinstance(one, Cyclotomic):
            conductors = (x.conductor for row in rows for x in row if isinstance(x, Cyclotomic))
            self.conductor = reduce(lcm, conductors, one.conductor)
        self.degree = phi(self.conductor) if self.conductor else 1
        self.domain = _number_field(self.conductor) if self.degree > 1 else QQ

    def to_domain(self, value: Any) -> Any:
        if not isinstance(value, Cyclotomic):
            q = Fraction(value)
            return self.domain.convert_from(QQ(q.numerator, q.denominator), QQ)
        coeffs = value.lift(self.conductor).coefficients
        if self.degree == 1:
            return QQ(coeffs[0].numerator, coeffs[0].denominator)
        high_first = [QQ(c.numerator, c.denominator) for c in reversed(coeffs)]
        while high_first and not high_first[0]:
            high_first.pop(0)
        return self.domain.new(high_first)

    def from_domain(self, element: Any) -> Any:
        if not self.conductor:
            return _rational(element)
        if self.degree == 1:
            return Cyclotomic.rational(_rational(element), self.conductor)
        high_first = [_rational(c) for c in element.to_list()]
        padded = [Fraction(0)] * (self.degree - len(high_first)) + high_first
        return Cyclotomic(reversed(padded), self.conductor)

    def matrix(self, rows: Sequence[Sequence[Any]], ncols: int) -> DomainMatrix:
        entries = [[self.to_domain(x) for x in row] for row in rows]
        return DomainMatrix(entries, (len(entries), ncols), self.domain)

    def rows(self, matrix: DomainMatrix) -> list[list[Any]]:
        return [[self.from_domain(x) for x in row] for row in matrix.to_list()]


def rref(rows: Sequence[Sequence[T]], *, one: T) -> tuple[list[list[T]], list[int]]:
    """Return the nonzero rows of the reduced row echelon form and the pivot columns."""

    if not rows:
        return [], []
    field = _Field(one, rows)
    reduced, pivots = field.matrix(rows, len(rows[0])).rref()
    return field.rows(reduced)[: len(pivots)], list(pivots)


def rank(rows: Sequence[Sequence[T]], *, one: T) -> int:
    if not rows:
        return 0
    return int(_Field(one, rows).matrix(rows, len(rows[0])).rank())


def nullspace(rows: Sequence[Sequence[T]], ncols: int, *, one: T) -> list[list[T]]:
    """Basis of ``{x : A x = 0}``, one vector per free column in increasing order."""

    zero = one - one  # type: ignore[operator]
    reduced, pivots = rref(rows, one=one)
    pivot_set = set(pivots)
    basis: list[list[T]] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for row, p in zip(reduced, pivots):
            if row[free]:
                vec[p] = -row[free]  # type: ignore[operator]
        basis.append(vec)
    return basis


def determinant(square: Sequence[Sequence[T]], *, one: T) -> T:
    if not square:
        return one
    field = _Field(one, square)
    return field.from_domain(field.matrix(square, len(square)).det())  # type: ignore[no-any-return]


def inverse(square: Sequence[Sequence[T]], *, one: T) -> list[list[T]]:
    if not square:
        return []
    field = _Field(one, square)
    try:
        inv = field.matrix(square, len(square)).inv()
    except DMNonInvertibleMatrixError:
        raise ZeroDivisionError("Matrix is singular") from None
    return field.rows(inv)


def solve_in_basis(
    reduced_basis: Sequence[Sequence[T]],
    pivots: Sequence[int],
    vector: Sequence[T],
) -> list[T]:
    """Coordinates of ``vector`` in a basis already in reduced row echelon form.

    Raises:
        ValueError: If ``vector`` is not in the span.
    """

    coords = [vector[p] for p in pivots]
    for j, value in enumerate(vector):
        combined = None
        for c, row in zip(coords, reduced_basis):
            if c and row[j]:
                term = c * row[j]  # type: ignore[operator]
                combined = term if combined is None else combined + term
        if (combined is None and value) or (combined is not None and combined != value):
            raise ValueError("Vector is not in the span of the basis")
    return coords
