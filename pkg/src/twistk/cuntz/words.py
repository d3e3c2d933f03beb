"""Finite sums of Cuntz words ``psi_I psi_J*`` in normal form.

Words use letters ``1..d``. A monomial ``psi_I psi_J*`` with ``|I| = s`` and
``|J| = r`` corresponds to the matrix unit ``|I><J|`` from ``H^r`` to ``H^s``,
where ``|I>`` is the base-``d`` index with the first letter most significant.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from math import lcm
from typing import Optional

from typing_extensions import TypeAlias

from twistk.core import linalg
from twistk.core.cyclotomic import Cyclotomic, ScalarLike
from twistk.core.errors import MixedDegree, NotUnitary, ValidationError
from twistk.core.matrices import Matrix

__all__ = ["Word", "CuntzElement", "word_index", "index_word", "flip_element", "fixed_elements"]

Word: TypeAlias = tuple[int, ...]
Key: TypeAlias = tuple[Word, Word]


def word_index(word: Word, d: int) -> int:
    index = 0
    for letter in word:
        index = index * d + letter - 1
    return index


def index_word(index: int, length: int, d: int) -> Word:
    letters = []
    for _ in range(length):
        index, rem = divmod(index, d)
        letters.append(rem + 1)
    return tuple(reversed(letters))


def _multiply_words(a: Key, b: Key) -> Optional[Key]:
    """``psi_I psi_J* . psi_K psi_L*`` by prefix cancellation of ``J`` against ``K``."""

    (i, j), (k, l) = a, b
    if k[: len(j)] == j:
        return i + k[len(j) :], l
    if j[: len(k)] == k:
        return i, l + j[len(k) :]
    return None


@dataclass(frozen=True, eq=False)
class CuntzElement:
    """A finite linear combination of words in the Cuntz generators of ``O_d``.

    Attributes:
        d: Number of generators.
        terms: Nonzero coefficient per ``(I, J)``.
    """

    d: int
    terms: Mapping[Key, Cyclotomic]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValidationError(f"Cuntz algebras need d >= 1, got {self.d}")
        for i, j in self.terms:
            for letter in i + j:
                if not 1 <= letter <= self.d:
                    raise ValidationError(f"Letter {letter} out of range 1..{self.d}")

    @classmethod
    def from_terms(cls, d: int, terms: Iterable[tuple[Word, Word, ScalarLike]]) -> CuntzElement:
        """Collect like monomials and drop zero coefficients."""

        acc: dict[Key, Cyclotomic] = {}
        for i, j, c in terms:
            key = (tuple(i), tuple(j))
            value = Cyclotomic.coerce(c)
            acc[key] = acc[key] + value if key in acc else value
        return cls(d, {key: c for key, c in sorted(acc.items(), key=_term_order) if c})

    @classmethod
    def zero(cls, d: int) -> CuntzElement:
        return cls(d, {})

    @classmethod
    def scalar(cls, d: int, value: ScalarLike = 1) -> CuntzElement:
        return cls.from_terms(d, [((), (), value)])

    @classmethod
    def monomial(cls, d: int, i: Sequence[int], j: Sequence[int], coefficient: ScalarLike = 1) -> CuntzElement:
        return cls.from_terms(d, [(tuple(i), tuple(j), coefficient)])

    @classmethod
    def generator(cls, d: int, letter: int) -> CuntzElement:
        """The isometry ``psi_letter``."""

        return cls.monomial(d, (letter,), ())

    @classmethod
    def from_matrix(cls, d: int, matrix: Matrix, r: int, s: int) -> CuntzElement:
        """Inverse of :meth:`to_matrix` for a ``d^s x d^r`` matrix."""

        if matrix.shape != (d**s, d**r):
            raise ValidationError(f"Expected a {d**s} x {d**r} matrix, got {matrix.shape}")
        terms = []
        for row, values in enumerate(matrix.rows):
            for col, c in enumerate(values):
                if c:
                    terms.append((index_word(row, s, d), index_word(col, r, d), c))
        return cls.from_terms(d, terms)

    # -- algebra ----------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Word, Word, Cyclotomic]]:
        for (i, j), c in self.terms.items():
            yield i, j, c

    def _check(self, other: CuntzElement) -> None:
        if self.d != other.d:
            raise ValidationError(f"Cannot combine elements of O_{self.d} and O_{other.d}")

    def __add__(self, other: CuntzElement) -> CuntzElement:
        self._check(other)
        return CuntzElement.from_terms(self.d, itertools.chain(self, other))

    def __neg__(self) -> CuntzElement:
        return CuntzElement(self.d, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: CuntzElement) -> CuntzElement:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> CuntzElement:
        return CuntzElement.from_terms(self.d, ((i, j, c * factor) for i, j, c in self))

    def __mul__(self, other: CuntzElement) -> CuntzElement:
        self._check(other)
        terms = []
        for key_a, a in self.terms.items():
            for key_b, b in other.terms.items():
                product = _multiply_words(key_a, key_b)
                if product is not None:
                    terms.append((product[0], product[1], a * b))
        return CuntzElement.from_terms(self.d, terms)

    def adjoint(self) -> CuntzElement:
        return CuntzElement.from_terms(self.d, ((j, i, c.conjugate()) for i, j, c in self))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CuntzElement):
            return NotImplemented
        return self.d == other.d and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.d, frozenset(self.terms.items())))

    # -- grading ----------------------------------------------------------

    def degrees(self) -> frozenset[tuple[int, int]]:
        """The set of ``(|J|, |I|) = (r, s)`` occurring among the monomials."""

        return frozenset((len(j), len(i)) for i, j in self.terms)

    def degree(self) -> tuple[int, int]:
        """``(r, s)`` of a nonzero graded element.

        Raises:
            MixedDegree: If monomials of different degrees occur or the element is zero.
        """

        found = self.degrees()
        if len(found) != 1:
            raise MixedDegree(f"Element has degrees {sorted(found)}, expected exactly one")
        return next(iter(found))

    def to_matrix(self, r: Optional[int] = None, s: Optional[int] = None) -> Matrix:
        """The ``d^s x d^r`` matrix of a graded element.

        Degrees are inferred when omitted; the zero element needs them.
        """

        if r is None or s is None:
            if self.is_zero():
                raise MixedDegree("The zero element has no degree; pass r and s")
            r, s = self.degree()
        elif self.degrees() - {(r, s)}:
            raise MixedDegree(f"Element has degrees {sorted(self.degrees())}, not ({r}, {s})")
        rows: list[list[ScalarLike]] = [[0] * self.d**r for _ in range(self.d**s)]
        for i, j, c in self:
            rows[word_index(i, self.d)][word_index(j, self.d)] = c
        return Matrix(rows, ncols=self.d**r)

    def ud_action(self, u: Matrix) -> CuntzElement:
        """Apply ``psi_i -> sum_j u[j][i] psi_j``, conjugated on starred legs.

        Raises:
            NotUnitary: If ``u`` is not a ``d x d`` unitary.
        """

        if u.shape != (self.d, self.d) or not u.is_unitary():
            raise NotUnitary(f"U(d) action needs a {self.d} x {self.d} unitary")
        terms = []
        letters = range(1, self.d + 1)
        for i, j, c in self:
            for k in itertools.product(letters, repeat=len(i)):
                left = c
                for a, b in zip(k, i):
                    left = left * u[a - 1, b - 1]
                if not left:
                    continue
                for l in itertools.product(letters, repeat=len(j)):
                    value = left
                    for a, b in zip(l, j):
                        value = value * u[a - 1, b - 1].conjugate()
                    if value:
                        terms.append((k, l, value))
        return CuntzElement.from_terms(self.d, terms)

    # -- presentation -----------------------------------------------------

    def __str__(self) -> str:
        from twistk.cuntz.expr import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"CuntzElement(d={self.d}, {self})"

    def to_json(self) -> dict[str, object]:
        return {
            "d": self.d,
            "terms": [
                {"I": list(i), "J": list(j), "conductor": c.conductor, "c": c.to_json()} for i, j, c in self
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> CuntzElement:
        try:
            d = int(data["d"])  # type: ignore[call-overload]
            raw_terms = data["terms"]
            if not isinstance(raw_terms, list):
                raise TypeError("terms must be a list")
            terms = [
                (
                    tuple(term["I"]),
                    tuple(term["J"]),
                    Cyclotomic.from_json(term["c"], int(term.get("conductor", 1))),
                )
                for term in raw_terms
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"Malformed Cuntz element: {exc}") from exc
        return cls.from_terms(d, terms)


def _term_order(item: tuple[Key, Cyclotomic]) -> tuple[int, int, Word, Word]:
    (i, j), _ = item
    return len(i), len(j), i, j


def flip_element(d: int, r: int, s: int) -> CuntzElement:
    """The flip ``theta_{r,s}`` from ``H^r (x) H^s`` to ``H^s (x) H^r`` as a word sum.

    The monomial for ``K`` of length ``r`` and ``L`` of length ``s`` is
    ``psi_{L K} psi_{K L}*``.
    """

    letters = range(1, d + 1)
    terms = []
    for k in itertools.product(letters, repeat=r):
        for l in itertools.product(letters, repeat=s):
            terms.append((l + k, k + l, 1))
    return CuntzElement.from_terms(d, terms)


def fixed_elements(d: int, unitaries: Sequence[Matrix], r: int, s: int) -> tuple[CuntzElement, ...]:
    """Basis of the degree ``(r, s)`` elements fixed by every unitary in ``unitaries``.

    The basis is in reduced echelon form on the monomial coordinates ordered
    like the row-major entries of :meth:`CuntzElement.to_matrix`.
    """

    size_r, size_s = d**r, d**s
    size = size_r * size_s
    conductor = lcm(*(u.conductor for u in unitaries))
    one = Cyclotomic.one(conductor)
    monomials = [
        CuntzElement.monomial(d, index_word(k // size_r, s, d), index_word(k % size_r, r, d)) for k in range(size)
    ]
    equations: list[list[Cyclotomic]] = []
    for u in unitaries:
        images = [m.ud_action(u).to_matrix(r, s).lift(conductor).flatten() for m in monomials]
        for row in range(size):
            equations.append([images[col][row] - (one if col == row else 0) for col in range(size)])
    basis, _ = linalg.rref(linalg.nullspace(equations, size, one=one), one=one)
    return tuple(CuntzElement.from_matrix(d, Matrix.from_flat(row, size_s, size_r, conductor), r, s) for row in basis)
