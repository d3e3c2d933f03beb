"""
Dense matrices with :class:`~twistk.core.cyclotomic.Cyclotomic` entries.

All entries of a matrix share one conductor; mixing matrices over different
fields lifts to the least common multiple.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Iterator, Sequence, Union

from twistk.core import linalg
from twistk.core.cyclotomic import Cyclotomic, ScalarLike, lcm

__all__ = ["Matrix", "kron_all"]


class Matrix:
    """Immutable exact matrix over a cyclotomic field."""

    __slots__ = ("_rows", "_shape", "_conductor", "_hash")

    def __init__(self, rows: Iterable[Iterable[ScalarLike]], conductor: int = 1, ncols: Union[int, None] = None):
        """Initialize from row-major entries.

        Args:
            rows: Rows of scalars; ints and Fractions are coerced.
            conductor: Minimal conductor; raised to fit every entry.
            ncols: Column count, required only for matrices without rows.
        """
        raw = [list(r) for r in rows]
        for value in (x for r in raw for x in r):
            if isinstance(value, Cyclotomic) and conductor % value.conductor:
                conductor = lcm(conductor, value.conductor)
        width = len(raw[0]) if raw else (ncols or 0)
        if any(len(r) != width for r in raw):
            raise ValueError("Matrix rows must have equal length")
        self._rows = tuple(tuple(Cyclotomic.coerce(x, conductor) for x in r) for r in raw)
        self._shape = (len(raw), width)
        self._conductor = conductor
        self._hash: Union[int, None] = None

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Cyclotomic, ...], ...], conductor: int, ncols: int) -> Matrix:
        obj = cls.__new__(cls)
        obj._rows = rows
        obj._shape = (len(rows), ncols)
        obj._conductor = conductor
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> Matrix:
        one, zero = Cyclotomic.one(conductor), Cyclotomic.zero(conductor)
        return cls._trusted(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            conductor,
            n,
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int, conductor: int = 1) -> Matrix:
        zero = Cyclotomic.zero(conductor)
        return cls._trusted(tuple((zero,) * ncols for _ in range(nrows)), conductor, ncols)

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike], conductor: int = 1) -> Matrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], conductor)

    @classmethod
    def from_flat(cls, values: Sequence[ScalarLike], nrows: int, ncols: int, conductor: int = 1) -> Matrix:
        """Inverse of :meth:`flatten` (row-major)."""

        if len(values) != nrows * ncols:
            raise ValueError(f"Expected {nrows * ncols} values, got {len(values)}")
        return cls([values[i * ncols : (i + 1) * ncols] for i in range(nrows)], conductor, ncols)

    # -- accessors --------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def conductor(self) -> int:
        return self._conductor

    @property
    def rows(self) -> tuple[tuple[Cyclotomic, ...], ...]:
        return self._rows

    def __getitem__(self, index: tuple[int, int]) -> Cyclotomic:
        i, j = index
        return self._rows[i][j]

    def __iter__(self) -> Iterator[tuple[Cyclotomic, ...]]:
        return iter(self._rows)

    def column(self, j: int) -> tuple[Cyclotomic, ...]:
        return tuple(row[j] for row in self._rows)

    def flatten(self) -> list[Cyclotomic]:
        return [x for row in self._rows for x in row]

    def lift(self, conductor: int) -> Matrix:
        if conductor == self._conductor:
            return self
        return Matrix._trusted(
            tuple(tuple(x.lift(conductor) for x in row) for row in self._rows),
            conductor,
            self.ncols,
        )

    # -- algebra ----------------------------------------------------------

    def _aligned(self, other: Matrix) -> tuple[Matrix, Matrix, int]:
        if self._conductor == other._conductor:
            return self, other, self._conductor
        n = lcm(self._conductor, other._conductor)
        return self.lift(n), other.lift(n), n

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        a, b, n = self._aligned(other)
        zero = Cyclotomic.zero(n)
        out = []
        for row in a._rows:
            acc = [zero] * b.ncols
            for k, x in enumerate(row):
                if not x:
                    continue
                for j, y in enumerate(b._rows[k]):
                    if y:
                        acc[j] = acc[j] + x * y
            out.append(tuple(acc))
        return Matrix._trusted(tuple(out), n, b.ncols)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"Cannot add {self.shape} and {other.shape}")
        a, b, n = self._aligned(other)
        return Matrix._trusted(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a._rows, b._rows)),
            n,
            self.ncols,
        )

    def __neg__(self) -> Matrix:
        return Matrix._trusted(tuple(tuple(-x for x in r) for r in self._rows), self._conductor, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> Matrix:
        factor = Cyclotomic.coerce(factor, self._conductor)
        return Matrix._trusted(
            tuple(tuple(x * factor for x in r) for r in self._rows),
            factor.conductor,
            self.ncols,
        )

    def kron(self, other: Matrix) -> Matrix:
        """Kronecker product ``self (x) other``."""

        a, b, n = self._aligned(other)
        zero = Cyclotomic.zero(n)
        zero_block = (zero,) * b.ncols
        out = []
        for row in a._rows:
            for brow in b._rows:
                line: list[Cyclotomic] = []
                for x in row:
                    line.extend(tuple(x * y for y in brow) if x else zero_block)
                out.append(tuple(line))
        return Matrix._trusted(tuple(out), n, a.ncols * b.ncols)

    def transpose(self) -> Matrix:
        if not self.nrows:
            return Matrix.zeros(self.ncols, 0, self._conductor)
        return Matrix._trusted(tuple(tuple(col) for col in zip(*self._rows)), self._conductor, self.nrows)

    def conjugate(self) -> Matrix:
        return Matrix._trusted(
            tuple(tuple(x.conjugate() for x in r) for r in self._rows),
            self._conductor,
            self.ncols,
        )

    def adjoint(self) -> Matrix:
        """Conjugate transpose."""

        return self.conjugate().transpose()

    def trace(self) -> Cyclotomic:
        total = Cyclotomic.zero(self._conductor)
        for i in range(min(self.shape)):
            total = total + self._rows[i][i]
        return total

    def determinant(self) -> Cyclotomic:
        if self.nrows != self.ncols:
            raise ValueError(f"Determinant of non-square matrix {self.shape}")
        if self.nrows == 0:
            return Cyclotomic.one(self._conductor)
        return linalg.determinant(self._rows, one=Cyclotomic.one(self._conductor))

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise ValueError(f"Inverse of non-square matrix {self.shape}")
        return Matrix(linalg.inverse(self._rows, one=Cyclotomic.one(self._conductor)), self._conductor, self.ncols)

    def hs_inner(self, other: Matrix) -> Cyclotomic:
        """Hilbert-Schmidt inner product ``tr(self* other)``."""

        a, b, n = self._aligned(other)
        total = Cyclotomic.zero(n)
        for r, s in zip(a._rows, b._rows):
            for x, y in zip(r, s):
                if x and y:
                    total = total + x.conjugate() * y
        return total

    def tensor_power(self, r: int) -> Matrix:
        """``r``-fold Kronecker power; the empty power is the ``1 x 1`` identity."""

        if r < 0:
            raise ValueError(f"Tensor power must be non-negative, got {r}")
        if r == 0:
            return Matrix.identity(1, self._conductor)
        return reduce(Matrix.kron, [self] * r)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(x for row in self._rows for x in row)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all((x == 1) if i == j else not x for i, row in enumerate(self._rows) for j, x in enumerate(row))

    def is_unitary(self) -> bool:
        return self.nrows == self.ncols and (self @ self.adjoint()).is_identity()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._shape, self._rows))
        return self._hash

    # -- presentation -----------------------------------------------------

    def to_json(self) -> list[list[list[str]]]:
        return [[x.to_json() for x in row] for row in self._rows]

    @classmethod
    def from_json(cls, data: object, conductor: int = 1) -> Matrix:
        if not isinstance(data, list):
            raise ValueError(f"Matrix must be a list of rows, got {type(data).__name__}")
        return cls([[Cyclotomic.from_json(x, conductor) for x in row] for row in data], conductor)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self._rows)
        return f"Matrix([{body}])"


def kron_all(factors: Sequence[Matrix], conductor: int = 1) -> Matrix:
    if not factors:
        return Matrix.identity(1, conductor)
    return reduce(Matrix.kron, factors)
