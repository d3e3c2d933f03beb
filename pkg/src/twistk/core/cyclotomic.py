"""
Exact arithmetic in cyclotomic fields ``Q(zeta_n)``.

Elements are stored as rational coefficient vectors in the power basis
``1, zeta, ..., zeta^(phi(n)-1)`` reduced modulo the ``n``-th cyclotomic
polynomial, so equality is coefficient equality. Operands with different
conductors are lifted to the least common multiple before combining.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from sympy import Symbol, cyclotomic_poly, factorint, totient
from typing_extensions import TypeAlias

__all__ = ["Cyclotomic", "ScalarLike", "phi", "lcm"]

ScalarLike: TypeAlias = Union["Cyclotomic", int, Fraction]

_X = Symbol("x")

# Q(zeta_1) = Q(zeta_2) = Q
_RATIONAL_CONDUCTORS = (1, 2)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    """Euler's totient, the degree of ``Q(zeta_n)`` over ``Q``."""

    return int(totient(n))


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of ``zeta_n^k`` for ``k = 0 .. n-1``."""

    degree = phi(n)
    coeffs = [int(c) for c in cyclotomic_poly(n, _X, polys=True).all_coeffs()]
    low = coeffs[::-1]
    vec = [0] * degree
    vec[0] = 1
    table: list[tuple[int, ...]] = []
    for _ in range(n):
        table.append(tuple(vec))
        carry = vec[-1]
        shifted = [0, *vec[:-1]]
        if carry:
            for i in range(degree):
                shifted[i] -= carry * low[i]
        vec = shifted
    return tuple(table)


def _mobius(m: int) -> int:
    exponents = factorint(m).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    """Normalized traces ``Tr(zeta^k) / phi(n)``, independent of the ambient field."""

    weights = []
    for k in range(phi(n)):
        order = n // gcd(k, n)
        weights.append(Fraction(_mobius(order), phi(order)))
    return tuple(weights)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if gcd(k, n) == 1)


def _reduce(n: int, conv: list[Fraction]) -> tuple[Fraction, ...]:
    degree = phi(n)
    table = _powers(n)
    out = [Fraction(0)] * degree
    for k, c in enumerate(conv):
        if not c:
            continue
        for i, p in enumerate(table[k % n]):
            if p:
                out[i] += c * p
    return tuple(out)


def _substitute(n: int, coeffs: tuple[Fraction, ...], factor: int) -> tuple[Fraction, ...]:
    """Apply ``zeta^j -> zeta^(j*factor)`` to a power-basis vector."""

    conv = [Fraction(0)] * n
    for j, c in enumerate(coeffs):
        if c:
            conv[(j * factor) % n] += c
    return _reduce(n, conv)


class Cyclotomic:
    """An element of ``Q(zeta_n)`` with exact rational coefficients."""

    __slots__ = ("_n", "_c")

    def __init__(self, coefficients: Iterable[Union[int, Fraction, str]], conductor: int = 1):
        """Initialize from power-basis coefficients.

        Args:
            coefficients: Exactly ``phi(conductor)`` rationals, lowest power first.
                Strings such as ``"-1/2"`` are accepted.
            conductor: The ``n`` of ``Q(zeta_n)``; ``1`` is the rational field.
        """
        if conductor < 1:
            raise ValueError(f"Conductor must be positive, got {conductor}")
        coeffs = tuple(Fraction(c) for c in coefficients)
        if len(coeffs) != phi(conductor):
            raise ValueError(
                f"Conductor {conductor} needs {phi(conductor)} coefficients, got {len(coeffs)}",
            )
        self._n = conductor
        self._c = coeffs

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj._n = conductor
        obj._c = coeffs
        return obj

    @classmethod
    def rational(cls, value: Union[int, Fraction, str], conductor: int = 1) -> Cyclotomic:
        coeffs = [Fraction(0)] * phi(conductor)
        coeffs[0] = Fraction(value)
        return cls._raw(conductor, tuple(coeffs))

    @classmethod
    def zero(cls, conductor: int = 1) -> Cyclotomic:
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> Cyclotomic:
        return cls.rational(1, conductor)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> Cyclotomic:
        """Return ``zeta_n^k`` with ``zeta_n = exp(2 pi i / n)``."""

        return cls._raw(n, tuple(Fraction(c) for c in _powers(n)[k % n]))

    @classmethod
    def coerce(cls, value: ScalarLike, conductor: int = 1) -> Cyclotomic:
        if isinstance(value, Cyclotomic):
            return value.lift(lcm(value.conductor, conductor))
        if isinstance(value, (int, Fraction)):
            return cls.rational(value, conductor)
        raise TypeError(f"Cannot interpret {type(value).__name__} as a cyclotomic number")

    # -- accessors --------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c[0]

    def lift(self, conductor: int) -> Cyclotomic:
        """Embed into ``Q(zeta_conductor)``; the conductor must be a multiple."""

        if conductor == self._n:
            return self
        if conductor % self._n:
            raise ValueError(f"Cannot embed Q(zeta_{self._n}) into Q(zeta_{conductor})")
        step = conductor // self._n
        conv = [Fraction(0)] * conductor
        for j, c in enumerate(self._c):
            if c:
                conv[(j * step) % conductor] += c
        return Cyclotomic._raw(conductor, _reduce(conductor, conv))

    # -- field operations -------------------------------------------------

    def _align(self, other: object) -> tuple[int, tuple[Fraction, ...], tuple[Fraction, ...]]:
        if isinstance(other, (int, Fraction)):
            coeffs = [Fraction(0)] * len(self._c)
            coeffs[0] = Fraction(other)
            return self._n, self._c, tuple(coeffs)
        if not isinstance(other, Cyclotomic):
            raise TypeError
        if other._n == self._n:
            return self._n, self._c, other._c
        n = lcm(self._n, other._n)
        return n, self.lift(n)._c, other.lift(n)._c

    def __add__(self, other: object) -> Cyclotomic:
        try:
            n, a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic._raw(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self._n, tuple(-x for x in self._c))

    def __sub__(self, other: object) -> Cyclotomic:
        try:
            n, a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic._raw(n, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other: object) -> Cyclotomic:
        return (-self).__add__(other)

    def __mul__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self._n, tuple(x * other for x in self._c))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other._n == 1:
            return self * other._c[0]
        if self._n == 1:
            return other * self._c[0]
        n, a, b = self._align(other)
        if not any(a) or not any(b):
            return Cyclotomic.zero(n)
        conv = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return Cyclotomic._raw(n, _reduce(n, conv))

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyclotomic:
        """Apply the automorphism ``zeta -> zeta^k`` (``k`` coprime to the conductor)."""

        if gcd(k, self._n) != 1:
            raise ValueError(f"{k} is not a unit modulo {self._n}")
        if self._n in _RATIONAL_CONDUCTORS or self.is_rational():
            return self
        return Cyclotomic._raw(self._n, _substitute(self._n, self._c, k))

    def conjugate(self) -> Cyclotomic:
        """Complex conjugation, the automorphism ``zeta -> zeta^-1``."""

        return self if self._n in _RATIONAL_CONDUCTORS else self.galois(-1 % self._n)

    def norm(self) -> Fraction:
        """Field norm down to ``Q``."""

        product = self
        for k in _units(self._n):
            if k != 1:
                product = product * self.galois(k)
        return product.to_rational()

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("Cyclotomic division by zero")
        if self.is_rational():
            return Cyclotomic.rational(1 / self._c[0], self._n)
        others = Cyclotomic.one(self._n)
        for k in _units(self._n):
            if k != 1:
                others = others * self.galois(k)
        norm = (self * others).to_rational()
        return others * (1 / norm)

    def __truediv__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("Cyclotomic division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> Cyclotomic:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, exponent: int) -> Cyclotomic:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self._n)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        try:
            _, a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a == b

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self._c[0])
        weights = _trace_weights(self._n)
        return hash(sum((c * w for c, w in zip(self._c, weights)), Fraction(0)))

    def sort_key(self) -> tuple[Fraction, ...]:
        return self._c

    # -- presentation -----------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self._c]

    @classmethod
    def from_json(cls, data: object, conductor: int = 1) -> Cyclotomic:
        """Parse ``"p/q"`` strings, a bare rational, or a coefficient list."""

        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls.rational(Fraction(data), conductor)
        if isinstance(data, list):
            return cls(data, conductor)
        raise ValueError(f"Cannot read cyclotomic scalar from {data!r}")

    def __complex__(self) -> complex:
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / self._n) for k, c in enumerate(self._c) if c),
            0j,
        )

    def __str__(self) -> str:
        if self.is_rational():
            return str(self._c[0])
        parts = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            power = f"z{self._n}" if k == 1 else f"z{self._n}^{k}"
            if c == 1:
                parts.append(power)
            elif c == -1:
                parts.append(f"-{power}")
            else:
                parts.append(f"{c}*{power}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"
