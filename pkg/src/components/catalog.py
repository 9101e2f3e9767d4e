"""
The three surfaces attaining the elementary bound, and the closed-form bounds.
"""

import math
import itertools
import numpy as np
from enum import Enum
from dataclasses import dataclass
from typing import Optional, Set, Tuple
from src.constants import FULLSPACE, HERMITIAN, HYPERBOLIC
from src.core.gf import FieldCtx, exact_sqrt, field_create, field_embedding
from src.core.linalg import Matrix
from src.core.poly import HomogeneousForm, evaluate_codes, make_form, parse_form
from src.entity.config_entity import BudgetConfig
from src.exception import QNotSquare
from src.logger import logging


def _unit(i: int, power: int = 1, other: Optional[int] = None, other_power: int = 0) -> Tuple[int, ...]:
    exps = [0, 0, 0, 0]
    exps[i] += power
    if other is not None:
        exps[other] += other_power
    return tuple(exps)


def sqrt_q(ctx: FieldCtx) -> int:
    """
    The order of the subfield F_{sqrt(q)}.

    Raises:
        QNotSquare: When q is not a square.
    """
    if ctx.e % 2:
        raise QNotSquare(f"q={ctx.q} is not a square")
    return ctx.p ** (ctx.e // 2)


def hyperbolic(ctx: FieldCtx) -> HomogeneousForm:
    """X0*X1 - X2*X3, the hyperbolic quadric."""
    minus_one = ctx.neg(1)
    return make_form(ctx, 4, {_unit(0, 1, 1, 1): 1, _unit(2, 1, 3, 1): minus_one})


def hermitian(ctx: FieldCtx) -> HomogeneousForm:
    """
    The Hermitian surface X0^{r+1} + X1^{r+1} + X2^{r+1} + X3^{r+1} with r = sqrt(q).

    Raises:
        QNotSquare: When q is not a square.
    """
    r = sqrt_q(ctx)
    return make_form(ctx, 4, {_unit(i, r + 1): 1 for i in range(4)})


def full_space(ctx: FieldCtx) -> HomogeneousForm:
    """
    X0*X1^q - X0^q*X1 + X2*X3^q - X2^q*X3, of degree q+1, vanishing on all of P^3(F_q).
    """
    q = ctx.q
    minus_one = ctx.neg(1)
    return make_form(
        ctx,
        4,
        {
            _unit(0, 1, 1, q): 1,
            _unit(0, q, 1, 1): minus_one,
            _unit(2, 1, 3, q): 1,
            _unit(2, q, 3, 1): minus_one,
        },
    )


class CatalogId(str, Enum):
    """Names of the catalog surfaces as accepted on the command line."""

    HYPERBOLIC = HYPERBOLIC
    HERMITIAN = HERMITIAN
    FULLSPACE = FULLSPACE

    def degree(self, q: int) -> int:
        if self is CatalogId.HYPERBOLIC:
            return 2
        if self is CatalogId.FULLSPACE:
            return q + 1
        r = exact_sqrt(q)
        if r is None:
            raise QNotSquare(f"q={q} is not a square")
        return r + 1

    def build(self, ctx: FieldCtx) -> HomogeneousForm:
        builder = {
            CatalogId.HYPERBOLIC: hyperbolic,
            CatalogId.HERMITIAN: hermitian,
            CatalogId.FULLSPACE: full_space,
        }[self]
        return builder(ctx)


def build_surface(name: str, ctx: FieldCtx) -> HomogeneousForm:
    """
    Resolve a catalog name or inline form text into a quaternary form.

    Args:
        name (str): ``hyperbolic``, ``hermitian``, ``fullspace`` or a form.
        ctx (FieldCtx): Field of definition.

    Returns:
        HomogeneousForm: The surface.
    """
    try:
        catalog_id = CatalogId(name.strip().lower())
    except ValueError:
        return parse_form(name, ctx, nvars=4)
    logging.debug(f"Building catalog surface {catalog_id.value} over {ctx!r}")
    return catalog_id.build(ctx)


# bounds


def elementary_bound(d: int, q: int) -> int:
    """(d-1)q^2 + dq + 1."""
    return (d - 1) * q * q + d * q + 1


def sziklai_bound(d: int, q: int) -> int:
    """(d-1)q + 1."""
    return (d - 1) * q + 1


@dataclass(frozen=True)
class HasseWeilBound:
    """
    The value q + 1 + (d-1)(d-2)sqrt(q).

    Attributes:
        value (float): Real value, for display only.
        floor (int): Exact integer floor, used in every comparison.
    """

    value: float
    floor: int


def hasse_weil_bound(d: int, q: int) -> HasseWeilBound:
    g2 = (d - 1) * (d - 2)
    # floor(g2 * sqrt(q)) = isqrt(g2^2 q) for g2 >= 0
    return HasseWeilBound(
        value=q + 1 + g2 * math.sqrt(q),
        floor=q + 1 + math.isqrt(g2 * g2 * q),
    )


def sziklai_hasse_weil_gap(d: int, q: int) -> Tuple[int, int]:
    """
    For square q, the difference sziklai_bound - hasse_weil_bound evaluated
    directly and by the closed form (d-2)(sqrt(q)+1-d)sqrt(q).

    Raises:
        QNotSquare: When q is not a square.
    """
    r = exact_sqrt(q)
    if r is None:
        raise QNotSquare(f"q={q} is not a square")
    direct = sziklai_bound(d, q) - (q + 1 + (d - 1) * (d - 2) * r)
    closed = (d - 2) * (r + 1 - d) * r
    return direct, closed


def admissible_degrees(q: int) -> Set[int]:
    """Degrees that can attain the elementary bound: {2, q+1}, plus sqrt(q)+1 for square q."""
    degrees = {2, q + 1}
    r = exact_sqrt(q)
    if r is not None:
        degrees.add(r + 1)
    return degrees


def sziklai_degree_admissible(d: int, q: int) -> bool:
    """
    d = 2 or sqrt(q)+1 <= d <= q+2, decided with integers.
    """
    if d == 2:
        return True
    return d >= 1 and (d - 1) * (d - 1) >= q and d <= q + 2


def elementary_bound_meaningful(d: int, q: int) -> bool:
    return d <= q + 1


def sziklai_bound_meaningful(d: int, q: int) -> bool:
    return d <= q + 2


# structure of the catalog surfaces


def hermitian_matrix(f: HomogeneousForm) -> Matrix:
    """
    The matrix H with f = sum_ij h_ij X_i X_j^r, r = sqrt(q).

    Raises:
        QNotSquare: When q is not a square.
        ValueError: When f has a term outside that shape.
    """
    ctx = f.ctx
    r = sqrt_q(ctx)
    rows = [[0] * 4 for _ in range(4)]
    for exps, c in f.terms:
        support = [i for i, a in enumerate(exps) if a]
        if len(support) == 1 and exps[support[0]] == r + 1:
            i = j = support[0]
        elif len(support) == 2 and sorted(exps[k] for k in support) == [1, r]:
            i = next(k for k in support if exps[k] == 1)
            j = next(k for k in support if exps[k] == r)
        else:
            raise ValueError(f"term with exponents {exps} is not of the form X_i X_j^{r}")
        rows[i][j] = c
    return Matrix.from_rows(ctx, rows)


def is_hermitian_self_conjugate(H: Matrix) -> bool:
    """True when h_ji = h_ij^{sqrt(q)} for all i, j."""
    ctx = H.ctx
    r = sqrt_q(ctx)
    n = H.shape[0]
    return all(
        H.rows[j][i] == ctx.power(H.rows[i][j], r) for i in range(n) for j in range(n)
    )


def full_space_extension_witness(
    ctx: FieldCtx, budget: Optional[BudgetConfig] = None
) -> Tuple[Tuple[int, ...], FieldCtx]:
    """
    A point of P^3(F_{q^2}) outside P^3(F_q) where the full-space surface is nonzero.

    Args:
        ctx (FieldCtx): F_q.
        budget (Optional[BudgetConfig]): Caps for constructing F_{q^2}.

    Returns:
        Tuple[Tuple[int, ...], FieldCtx]: The normalized point and F_{q^2}.

    Raises:
        BudgetExceeded: When q^2 exceeds max_field_q.
        ValueError: When no witness exists.
    """
    big = field_create(ctx.p, 2 * ctx.e, budget)
    rational = set(int(x) for x in field_embedding(ctx, big))
    lifted = full_space(ctx).lift(big)
    for pivot in range(4):
        tails = itertools.product(range(big.q), repeat=3 - pivot)
        for chunk in iter(lambda: list(itertools.islice(tails, 4096)), []):
            pts = np.array([(0,) * pivot + (1,) + t for t in chunk], dtype=np.int64)
            values = evaluate_codes(lifted, pts)
            for row, value in zip(pts, values):
                if value and not all(int(x) in rational for x in row):
                    return tuple(int(x) for x in row), big
    raise ValueError(f"full-space surface over {ctx!r} vanishes on P^3 of the extension")
