"""
Smith normal form of integer matrices with unimodular transforms.

``smith_decomposition(A)`` returns ``U, V`` (and their inverses) such that
``U @ A @ V`` is diagonal with non-negative entries ``d_1 | d_2 | ...`` and the
zero entries last. The decomposition is sympy's ``smith_normal_decomp`` over
``ZZ``; the inverse transforms come from inverting over ``QQ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp
from typing_extensions import TypeAlias

__all__ = ["IntRows", "SmithDecomposition", "smith_decomposition"]

IntRows: TypeAlias = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SmithDecomposition:
    """Result of :func:`smith_decomposition`.

    Attributes:
        diagonal: ``min(m, n)`` invariant factors followed by zeros.
        left: ``m x m`` unimodular ``U``.
        left_inv: ``U^-1``.
        right: ``n x n`` unimodular ``V``.
        right_inv: ``V^-1``.
    """

    diagonal: tuple[int, ...]
    left: IntRows
    left_inv: IntRows
    right: IntRows
    right_inv: IntRows

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _rows(matrix: DomainMatrix) -> IntRows:
    return tuple(tuple(int(x) for x in row) for row in matrix.to_list())


def _unimodular_inverse(matrix: DomainMatrix) -> IntRows:
    if matrix.shape[0] == 0:
        return ()
    return _rows(matrix.convert_to(QQ).inv().convert_to(ZZ))


def smith_decomposition(matrix: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithDecomposition:
    """Compute ``U A V = D`` for an integer matrix ``A``.

    Args:
        matrix: Row-major integer matrix; may have zero rows.
        ncols: Column count, required when ``matrix`` has no rows.
    """

    m = len(matrix)
    n = ncols if ncols is not None else (len(matrix[0]) if matrix else 0)
    entries = [[ZZ(int(x)) for x in row] for row in matrix]
    form, left, right = smith_normal_decomp(DomainMatrix(entries, (m, n), ZZ))

    dense = form.to_list()
    signs = [-1 if i < n and dense[i][i] < 0 else 1 for i in range(m)]
    left = DomainMatrix.diag([ZZ(s) for s in signs], ZZ, (m, m)) * left if m else left
    diagonal = tuple(abs(int(dense[i][i])) for i in range(min(m, n)))
    return SmithDecomposition(
        diagonal=diagonal,
        left=_rows(left),
        left_inv=_unimodular_inverse(left),
        right=_rows(right),
        right_inv=_unimodular_inverse(right),
    )
