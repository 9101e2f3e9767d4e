"""Exact linear algebra over F_q on code vectors."""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
from src.core.gf import FieldCtx, FieldElement, field_embedding
from src.exception import FieldMismatch

Vector = Tuple[int, ...]


def row_reduce(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> Tuple[List[Vector], List[int]]:
    """
    Reduced row echelon form.

    Args:
        ctx (FieldCtx): The field.
        rows (Sequence[Sequence[int]]): Row vectors of codes.

    Returns:
        Tuple[List[Vector], List[int]]: Nonzero RREF rows and their pivot columns.
    """
    A = [list(int(x) for x in row) for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots: List[int] = []
    i = 0
    for j in range(n):
        if i == m:
            break
        pivot_row = next((r for r in range(i, m) if A[r][j]), None)
        if pivot_row is None:
            continue
        A[i], A[pivot_row] = A[pivot_row], A[i]
        scale = ctx.inv(A[i][j])
        A[i] = [ctx.mul(scale, x) for x in A[i]]
        for r in range(m):
            if r != i and A[r][j]:
                factor = A[r][j]
                A[r] = [ctx.sub(x, ctx.mul(factor, y)) for x, y in zip(A[r], A[i])]
        pivots.append(j)
        i += 1
    return [tuple(row) for row in A[:i]], pivots


def rank(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> int:
    return len(row_reduce(ctx, rows)[1])


def null_space(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """
    Basis of {x : rows . x = 0}, one vector per free column (in column order),
    with a 1 in its own free column.
    """
    reduced, pivots = row_reduce(ctx, rows) if rows else ([], [])
    basis: List[Vector] = []
    for free in (j for j in range(ncols) if j not in pivots):
        v = [0] * ncols
        v[free] = 1
        for row, pivot in zip(reduced, pivots):
            v[pivot] = ctx.neg(row[free])
        basis.append(tuple(v))
    return basis


def normalize(ctx: FieldCtx, v: Sequence[int]) -> Vector:
    """Scale a nonzero vector so that its first nonzero entry is 1."""
    lead = next(x for x in v if x)
    scale = ctx.inv(int(lead))
    return tuple(ctx.mul(scale, int(x)) for x in v)


def combine(ctx: FieldCtx, coefficients: Sequence[int], vectors: Sequence[Sequence[int]]) -> Vector:
    """The linear combination sum c_k v_k."""
    out = [0] * len(vectors[0])
    for c, v in zip(coefficients, vectors):
        if c:
            out = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(out, v)]
    return tuple(out)


def dot(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


@dataclass(frozen=True)
class Matrix:
    """
    Immutable matrix of codes over a finite field.

    Attributes:
        ctx (FieldCtx): The field.
        rows (Tuple[Vector, ...]): Row-major entries.
    """

    ctx: FieldCtx
    rows: Tuple[Vector, ...]

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> "Matrix":
        return cls(ctx, tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Matrix":
        return cls(ctx, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def random_invertible(cls, ctx: FieldCtx, n: int, rng: np.random.Generator) -> "Matrix":
        while True:
            candidate = cls.from_rows(ctx, rng.integers(0, ctx.q, size=(n, n)).tolist())
            if candidate.rank() == n:
                return candidate

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.ctx, self.rows[i][j])

    def transpose(self) -> "Matrix":
        return Matrix(self.ctx, tuple(zip(*self.rows)))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.ctx != self.ctx:
            raise FieldMismatch(f"{self.ctx!r} and {other.ctx!r}")
        cols = other.transpose().rows
        return Matrix(
            self.ctx, tuple(tuple(dot(self.ctx, row, col) for col in cols) for row in self.rows)
        )

    def rank(self) -> int:
        return rank(self.ctx, self.rows)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def lift(self, big: FieldCtx, image: Optional[np.ndarray] = None) -> "Matrix":
        """Embed the entries into an extension field."""
        image = field_embedding(self.ctx, big) if image is None else image
        return Matrix(big, tuple(tuple(int(image[x]) for x in row) for row in self.rows))
