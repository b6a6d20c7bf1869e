"""Exact dense matrices over Q.

Rank uses fraction-free Bareiss elimination on an integer matrix obtained by
clearing each row's denominators; kernels come from Gauss-Jordan reduction
over :class:`~fractions.Fraction`.  Pivot choice is always the first nonzero
entry in column order, so results are reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class RationalMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"data does not have shape {rows}x{cols}")
            self.data = [[Fraction(v) for v in r] for r in data]

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence]) -> "RationalMatrix":
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v:
                    m.data[i][j] = Fraction(v)
        return m

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> list[Fraction]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = RationalMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            nz = [(k, v) for k, v in enumerate(row) if v]
            for j in range(other.cols):
                s = Fraction(0)
                for k, v in nz:
                    b = other.data[k][j]
                    if b:
                        s += v * b
                out.data[i][j] = s
        return out

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix(self.rows, self.cols + other.cols,
                              [a + b for a, b in zip(self.data, other.data)])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                              [[] for _ in range(self.cols)])

    def to_float(self):
        import numpy as np
        return np.array([[float(v) for v in r] for r in self.data], dtype=float).reshape(self.rows, self.cols)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for row in m.data:
        if not any(row):
            continue
        den = lcm(*(v.denominator for v in row))
        out.append([int(v * den) for v in row])
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    a = _integer_rows(m)
    rows, cols = len(a), m.cols
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def nullspace(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (in column order)."""
    a, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][free]
        basis.append(v)
    return basis


def column_space_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Independent columns of ``m`` (the pivot columns, in order)."""
    _, pivots = rref(m)
    return [m.column(j) for j in pivots]


def apply(m: RationalMatrix, v: Sequence) -> list[Fraction]:
    if len(v) != m.cols:
        raise ValueError("vector length mismatch")
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m.data]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` lies in the span of ``vectors`` (all of the same length)."""
    if not vectors:
        return not any(v)
    n = len(v)
    base = RationalMatrix.from_columns(n, list(vectors))
    return rank(base.hstack(RationalMatrix.from_columns(n, [v]))) == rank(base)
