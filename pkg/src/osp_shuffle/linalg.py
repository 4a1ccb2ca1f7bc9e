"""Dense Gauss-Jordan elimination over Q(q).  Matrices are lists of rows."""

from __future__ import annotations

from typing import Sequence

from .scalar import RationalFunction, as_rational

__all__ = ["SingularMatrixError", "determinant", "inverse", "IncrementalBasis"]

Matrix = list[list[RationalFunction]]

_ZERO = RationalFunction(0)
_ONE = RationalFunction(1)


class SingularMatrixError(ArithmeticError):
    pass


def _copy(m: Sequence[Sequence]) -> Matrix:
    return [[as_rational(x) for x in row] for row in m]


def inverse(m: Sequence[Sequence]) -> Matrix:
    a = _copy(m)
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("inverse needs a square matrix")
    inv = [[_ONE if i == j else _ZERO for j in range(size)] for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col]), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col].inverse()
        if not p.is_one():
            a[col] = [x * p for x in a[col]]
            inv[col] = [x * p for x in inv[col]]
        for r in range(size):
            f = a[r][col]
            if r != col and f:
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y if y else x for x, y in zip(inv[r], inv[col])]
    return inv


def determinant(m: Sequence[Sequence]) -> RationalFunction:
    a = _copy(m)
    size = len(a)
    det = _ONE
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col]), None)
        if pivot is None:
            return _ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        pinv = p.inverse()
        for r in range(col + 1, size):
            f = a[r][col]
            if f:
                f = f * pinv
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
    return det


class IncrementalBasis:
    """Greedy row selection: ``add`` accepts a vector iff it is independent."""

    def __init__(self, width: int):
        self.width = width
        self._rows: list[tuple[int, list[RationalFunction]]] = []

    def __len__(self):
        return len(self._rows)

    def add(self, vec: Sequence) -> bool:
        v = [as_rational(x) for x in vec]
        for pcol, row in self._rows:
            f = v[pcol]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, row)]
        pcol = next((k for k, x in enumerate(v) if x), None)
        if pcol is None:
            return False
        p = v[pcol].inverse()
        v = [x * p for x in v]
        # keep earlier rows reduced in the new pivot column
        new_rows = []
        for c, row in self._rows:
            f = row[pcol]
            if f:
                row = [x - f * y if y else x for x, y in zip(row, v)]
            new_rows.append((c, row))
        new_rows.append((pcol, v))
        self._rows = new_rows
        return True
