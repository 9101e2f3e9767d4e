"""
Alternating 4x4 matrices over F_q, the surfaces X A t(X^q) = 0 they define,
and their symplectic normal form under congruence.
"""

import itertools
import numpy as np
from enum import Enum
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple
from src.core.gf import FieldCtx, parse_code, render_code
from src.core.linalg import Matrix, dot
from src.core.poly import (
    HomogeneousForm,
    change_coordinates,
    count_zeros,
    fq_linear_components,
    make_form,
)
from src.core.projgeom import theta
from src.exception import FormSyntaxError, GeometryError, NotAlternating, ZeroMatrix

UPPER_INDEX: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class AlternatingMatrix:
    """
    A 4x4 alternating matrix, stored by its strictly upper triangle.

    Attributes:
        ctx (FieldCtx): The field.
        upper (Tuple[int, ...]): Codes of a01, a02, a03, a12, a13, a23.
    """

    ctx: FieldCtx
    upper: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.upper) != 6:
            raise NotAlternating(f"expected 6 upper entries, got {len(self.upper)}")

    @classmethod
    def from_matrix(cls, M: Matrix) -> "AlternatingMatrix":
        """
        Raises:
            NotAlternating: When tM != -M or, in characteristic 2, a diagonal entry is nonzero.
        """
        ctx = M.ctx
        if M.shape != (4, 4):
            raise NotAlternating(f"expected a 4x4 matrix, got {M.shape}")
        rows = M.rows
        for i in range(4):
            if rows[i][i]:
                raise NotAlternating(f"diagonal entry {i} is nonzero")
            for j in range(i + 1, 4):
                if rows[j][i] != ctx.neg(rows[i][j]):
                    raise NotAlternating(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        return cls(ctx, tuple(rows[i][j] for i, j in UPPER_INDEX))

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        out = [[0] * 4 for _ in range(4)]
        for (i, j), a in zip(UPPER_INDEX, self.upper):
            out[i][j] = a
            out[j][i] = self.ctx.neg(a)
        return tuple(tuple(row) for row in out)

    def matrix(self) -> Matrix:
        return Matrix(self.ctx, self.rows)

    def is_zero(self) -> bool:
        return not any(self.upper)

    def rank(self) -> int:
        return self.matrix().rank()

    def __str__(self) -> str:
        return "[" + ",".join(render_code(self.ctx, a) for a in self.upper) + "]"


def parse_alternating(ctx: FieldCtx, text: str) -> AlternatingMatrix:
    """
    Parse ``[a01,a02,a03,a12,a13,a23]`` in element syntax.

    Raises:
        FormSyntaxError: When the text is malformed.
    """
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise FormSyntaxError(f"alternating matrix {text!r} must be enclosed in brackets")
    parts = body[1:-1].split(",")
    if len(parts) != 6:
        raise FormSyntaxError(f"expected 6 upper-triangle entries, got {len(parts)}")
    return AlternatingMatrix(ctx, tuple(parse_code(ctx, part) for part in parts))


def canonical_rank2(ctx: FieldCtx) -> AlternatingMatrix:
    return AlternatingMatrix(ctx, (1, 0, 0, 0, 0, 0))


def canonical_rank4(ctx: FieldCtx) -> AlternatingMatrix:
    return AlternatingMatrix(ctx, (1, 0, 0, 0, 0, 1))


def _require_nonzero(A: AlternatingMatrix) -> None:
    if A.is_zero():
        raise ZeroMatrix("the zero matrix defines no surface")


def surface_from_alternating(A: AlternatingMatrix) -> HomogeneousForm:
    """
    The form sum_ij a_ij X_i X_j^q of degree q+1.

    Raises:
        ZeroMatrix: When A = 0.
    """
    _require_nonzero(A)
    ctx = A.ctx
    q = ctx.q
    terms = {}
    for (i, j), a in zip(UPPER_INDEX, A.upper):
        if not a:
            continue
        for lo, hi, c in ((i, j, a), (j, i, ctx.neg(a))):
            exps = [0, 0, 0, 0]
            exps[lo] += 1
            exps[hi] += q
            key = tuple(exps)
            terms[key] = ctx.add(terms.get(key, 0), c)
    return make_form(ctx, 4, terms)


def congruent(A: AlternatingMatrix, G: Matrix) -> AlternatingMatrix:
    """The alternating matrix tG A G."""
    return AlternatingMatrix.from_matrix(G.transpose() @ A.matrix() @ G)


def symplectic_normal_form(A: AlternatingMatrix) -> Tuple[Matrix, AlternatingMatrix]:
    """
    An invertible G with tG A G in canonical block form.

    The pivot is the first nonzero entry a_ij in row-major order; (e_i, e_j / a_ij)
    is a hyperbolic pair, the two remaining basis vectors are made orthogonal
    to it, and the complement is either hyperbolic (rank 4) or zero (rank 2).

    Args:
        A (AlternatingMatrix): Nonzero alternating matrix.

    Returns:
        Tuple[Matrix, AlternatingMatrix]: G and the canonical matrix tG A G.

    Raises:
        ZeroMatrix: When A = 0.
    """
    _require_nonzero(A)
    ctx = A.ctx
    rows = A.rows

    def omega(u: Sequence[int], v: Sequence[int]) -> int:
        return dot(ctx, u, [dot(ctx, row, v) for row in rows])

    def axpy(c: int, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        return tuple(ctx.add(ctx.mul(c, a), b) for a, b in zip(x, y))

    basis = [tuple(1 if k == i else 0 for k in range(4)) for i in range(4)]
    i, j = next((i, j) for i in range(4) for j in range(4) if rows[i][j])
    e1 = basis[i]
    f1 = tuple(ctx.mul(ctx.inv(rows[i][j]), x) for x in basis[j])

    rest = []
    for k in range(4):
        if k in (i, j):
            continue
        v = basis[k]
        v = axpy(ctx.neg(omega(v, f1)), e1, v)
        v = axpy(omega(basis[k], e1), f1, v)
        rest.append(v)
    w1, w2 = rest

    c = omega(w1, w2)
    if c:
        columns = [e1, f1, w1, tuple(ctx.mul(ctx.inv(c), x) for x in w2)]
        canonical = canonical_rank4(ctx)
    else:
        columns = [e1, f1, w1, w2]
        canonical = canonical_rank2(ctx)

    G = Matrix(ctx, tuple(zip(*columns)))
    if congruent(A, G) != canonical:
        raise GeometryError(f"congruence of {A} did not reach the canonical form")
    return G, canonical


class RankClass(str, Enum):
    RANK2_SPLIT = "Rank2Split"
    RANK4_EXTREMAL = "Rank4Extremal"


@dataclass(frozen=True)
class RankClassification:
    """
    Attributes:
        kind (RankClass): Rank-2 or rank-4 class.
        rank (int): Rank of A.
        linear_components (int): Rational plane components of the surface.
        N (int): Rational points of the surface.
        consistent (bool): Rank 2 with q+1 planes, or rank 4 with none and N = theta_q(3).
    """

    kind: RankClass
    rank: int
    linear_components: int
    N: int
    consistent: bool


def rank_classify(A: AlternatingMatrix) -> RankClassification:
    """
    Classify A by rank and cross-check the surface it defines.

    Raises:
        ZeroMatrix: When A = 0.
    """
    _require_nonzero(A)
    ctx = A.ctx
    surface = surface_from_alternating(A)
    rank = A.rank()
    components = len(fq_linear_components(surface))
    N = count_zeros(surface)
    if rank == 2:
        kind = RankClass.RANK2_SPLIT
        consistent = components == ctx.q + 1
    else:
        kind = RankClass.RANK4_EXTREMAL
        consistent = components == 0 and N == theta(ctx.q, 3)
    return RankClassification(kind, rank, components, N, consistent)


def frobenius_matrix_check(G: Matrix, q: Optional[int] = None) -> bool:
    """
    True when x -> x^q fixes every entry of G; q defaults to the order of G's field.
    """
    q = q or G.ctx.q
    return all(G.ctx.power(x, q) == x for row in G.rows for x in row)


def all_alternating(ctx: FieldCtx) -> Iterator[AlternatingMatrix]:
    """All q^6 - 1 nonzero alternating matrices."""
    for upper in itertools.product(range(ctx.q), repeat=6):
        if any(upper):
            yield AlternatingMatrix(ctx, upper)


def random_alternating(ctx: FieldCtx, rng: np.random.Generator) -> AlternatingMatrix:
    while True:
        upper = tuple(int(x) for x in rng.integers(0, ctx.q, size=6))
        if any(upper):
            return AlternatingMatrix(ctx, upper)


def coordinate_change_coherent(A: AlternatingMatrix, G: Matrix) -> bool:
    """The surface of A in coordinates X = G Y equals the surface of tG A G."""
    return change_coordinates(surface_from_alternating(A), G.rows) == surface_from_alternating(
        congruent(A, G)
    )
