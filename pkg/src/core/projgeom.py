"""
Points, lines and planes of P^r(F_q), r <= 3, with exact incidence.

Points are stored normalized (first nonzero coordinate equal to 1) as code
tuples. Enumeration order is by position of the leading 1 and then
lexicographic in the remaining coordinates, so P^1(F_3) lists
(1:0), (1:1), (1:2), (0:1).
"""

from __future__ import annotations

import itertools
import numpy as np
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
from src.logger import logging
from src.core.gf import FieldCtx, FieldElement, parse_code, render_code
from src.core.linalg import Vector, combine, dot, normalize, null_space, row_reduce
from src.entity.config_entity import BudgetConfig, DEFAULT_BUDGET
from src.exception import FieldMismatch, FormSyntaxError, GeometryError


def theta(q: int, r: int) -> int:
    """Number of points of P^r(F_q): (q^{r+1}-1)/(q-1), with theta(q, 0) = 1."""
    if r < 0:
        raise ValueError("dimension must be nonnegative")
    return sum(q**k for k in range(r + 1))


def lines_of_space(q: int) -> int:
    """Number of lines of P^3(F_q): (q^2+1)(q^2+q+1)."""
    return (q * q + 1) * (q * q + q + 1)


def sort_key(coords: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    pivot = next(i for i, x in enumerate(coords) if x)
    return pivot, tuple(coords)


@dataclass(frozen=True)
class ProjPoint:
    """
    A normalized point of P^r(F_q).

    Attributes:
        ctx (FieldCtx): The field.
        coords (Tuple[int, ...]): Codes of the canonical representative.
    """

    ctx: FieldCtx
    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not any(self.coords):
            raise ValueError("the zero vector is not a projective point")
        lead = next(x for x in self.coords if x)
        if lead != 1:
            raise ValueError(f"coordinates {self.coords} are not normalized")

    @classmethod
    def of(cls, ctx: FieldCtx, coords: Sequence[int]) -> "ProjPoint":
        """Normalize any nonzero representative."""
        return cls(ctx, normalize(ctx, coords))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def elements(self) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(self.ctx, x) for x in self.coords)

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return sort_key(self.coords)

    def __lt__(self, other: "ProjPoint") -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        return "(" + ":".join(render_code(self.ctx, x) for x in self.coords) + ")"


class ProjPlane(ProjPoint):
    """
    A hyperplane sum a_i X_i = 0 of P^r(F_q), stored by its normalized dual
    coordinates. For r = 3 this is a plane, for r = 2 a line of the plane.
    """

    @property
    def dual_coords(self) -> Tuple[int, ...]:
        return self.coords


@dataclass(frozen=True)
class ProjLine:
    """
    A line of P^r(F_q) stored by its canonical spanning pair: the two least
    points of the line in enumeration order.

    Attributes:
        p0 (ProjPoint): Least point of the line.
        p1 (ProjPoint): Second least point of the line.
    """

    p0: ProjPoint
    p1: ProjPoint

    @property
    def ctx(self) -> FieldCtx:
        return self.p0.ctx

    def __lt__(self, other: "ProjLine") -> bool:
        return (self.p0.key(), self.p1.key()) < (other.p0.key(), other.p1.key())

    def __str__(self) -> str:
        return f"[{self.p0} {self.p1}]"


def _check_same_field(*objs) -> None:
    ctxs = {o.ctx for o in objs}
    if len(ctxs) > 1:
        raise FieldMismatch(f"objects live over different fields: {sorted(map(repr, ctxs))}")


def parse_point(ctx: FieldCtx, text: str, cls=ProjPoint) -> ProjPoint:
    """
    Parse ``(1:0:(t+1):1)``.

    Raises:
        FormSyntaxError: When the text is malformed or the zero vector.
    """
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise FormSyntaxError(f"point {text!r} must be enclosed in parentheses")
    coords = [parse_code(ctx, part) for part in body[1:-1].split(":")]
    if not any(coords):
        raise FormSyntaxError(f"point {text!r} is the zero vector")
    return cls.of(ctx, coords)


def parse_plane(ctx: FieldCtx, text: str) -> ProjPlane:
    return parse_point(ctx, text, cls=ProjPlane)


@lru_cache(maxsize=None)
def _point_tuples(ctx: FieldCtx, r: int) -> Tuple[Tuple[int, ...], ...]:
    out = []
    for pivot in range(r + 1):
        for tail in itertools.product(range(ctx.q), repeat=r - pivot):
            out.append((0,) * pivot + (1,) + tail)
    return tuple(out)


def enumerate_points(
    ctx: FieldCtx, r: int, budget: Optional[BudgetConfig] = None
) -> List[ProjPoint]:
    """
    All theta_q(r) points of P^r(F_q) in enumeration order.

    Raises:
        BudgetExceeded: When theta_q(r) exceeds max_points.
    """
    (budget or DEFAULT_BUDGET).check_points(theta(ctx.q, r))
    return [ProjPoint(ctx, c) for c in _point_tuples(ctx, r)]


def enumerate_hyperplanes(
    ctx: FieldCtx, r: int, budget: Optional[BudgetConfig] = None
) -> List[ProjPlane]:
    (budget or DEFAULT_BUDGET).check_points(theta(ctx.q, r))
    return [ProjPlane(ctx, c) for c in _point_tuples(ctx, r)]


def enumerate_planes(ctx: FieldCtx, budget: Optional[BudgetConfig] = None) -> List[ProjPlane]:
    """All theta_q(3) planes of P^3(F_q)."""
    return enumerate_hyperplanes(ctx, 3, budget)


@lru_cache(maxsize=None)
def point_array(ctx: FieldCtx, r: int) -> np.ndarray:
    """Read-only (theta_q(r), r+1) array of point codes in enumeration order."""
    arr = np.array(_point_tuples(ctx, r), dtype=np.int64)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def point_index(ctx: FieldCtx, r: int) -> Dict[Tuple[int, ...], int]:
    return {c: i for i, c in enumerate(_point_tuples(ctx, r))}


def linear_values(ctx: FieldCtx, coeffs: Sequence[int], pts: np.ndarray) -> np.ndarray:
    """Values of the linear form sum coeffs_i X_i on every row of ``pts``."""
    acc = np.zeros(len(pts), dtype=np.int64)
    for i, a in enumerate(coeffs):
        if a:
            acc = ctx.add_table[acc, ctx.mul_table[a, pts[:, i]]]
    return acc


@lru_cache(maxsize=None)
def hyperplane_incidence(ctx: FieldCtx, r: int) -> Tuple[np.ndarray, ...]:
    """
    For every hyperplane of P^r(F_q) in enumeration order, the indices of the
    points lying on it.
    """
    pts = point_array(ctx, r)
    logging.debug(f"Building hyperplane incidence for P^{r} over {ctx!r}")
    out = []
    for coeffs in _point_tuples(ctx, r):
        idx = np.flatnonzero(linear_values(ctx, coeffs, pts) == 0)
        idx.flags.writeable = False
        out.append(idx)
    return tuple(out)


def incident(P: ProjPoint, H: ProjPlane) -> bool:
    """True iff sum a_i x_i = 0."""
    _check_same_field(P, H)
    if len(P.coords) != len(H.coords):
        raise FieldMismatch("point and hyperplane live in different dimensions")
    return dot(P.ctx, P.coords, H.coords) == 0


def span_points(ctx: FieldCtx, basis: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Normalized points of the projective span of linearly independent vectors, sorted."""
    out = {
        normalize(ctx, combine(ctx, c, basis)) for c in _point_tuples(ctx, len(basis) - 1)
    }
    return sorted(out, key=sort_key)


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    """
    The line spanned by two distinct points, in canonical form.

    The least point of a line is the first reduced echelon row r1 and the
    second least is r1 + r2.

    Raises:
        ValueError: When P == Q.
    """
    _check_same_field(P, Q)
    if P == Q:
        raise ValueError("two distinct points are needed to span a line")
    ctx = P.ctx
    (r1, r2), _ = row_reduce(ctx, [P.coords, Q.coords])
    second = tuple(ctx.add(a, b) for a, b in zip(r1, r2))
    return ProjLine(ProjPoint(ctx, r1), ProjPoint(ctx, second))


def line_basis(l: ProjLine) -> Tuple[Vector, Vector]:
    """The reduced echelon basis (r1, r2) of the line's point space."""
    (r1, r2), _ = row_reduce(l.ctx, [l.p0.coords, l.p1.coords])
    return r1, r2


def line_points(l: ProjLine) -> List[ProjPoint]:
    """All q+1 points of the line in enumeration order."""
    ctx = l.ctx
    return [ProjPoint(ctx, c) for c in span_points(ctx, line_basis(l))]


def planes_through_line(l: ProjLine) -> List[ProjPlane]:
    """The q+1 hyperplanes containing the line (planes when the line lies in P^3)."""
    ctx = l.ctx
    basis = null_space(ctx, [l.p0.coords, l.p1.coords], len(l.p0.coords))
    return [ProjPlane(ctx, c) for c in span_points(ctx, basis)]


def planes_through_point(P: ProjPoint) -> List[ProjPlane]:
    ctx = P.ctx
    basis = null_space(ctx, [P.coords], len(P.coords))
    return [ProjPlane(ctx, c) for c in span_points(ctx, basis)]


def enumerate_lines(
    ctx: FieldCtx, r: int = 3, budget: Optional[BudgetConfig] = None
) -> List[ProjLine]:
    """
    All lines of P^r(F_q), generated from point pairs with deduplication.

    For every point P, the points already covered by a line through P are
    skipped, so each line through P is canonicalized once.

    Raises:
        BudgetExceeded: When the point set exceeds max_points.
        GeometryError: When the count disagrees with the closed form for P^3.
    """
    points = enumerate_points(ctx, r, budget)
    lines = set()
    for i, P in enumerate(points):
        covered = {P}
        for Q in points[i + 1 :]:
            if Q in covered:
                continue
            l = line_through(P, Q)
            lines.add(l)
            covered.update(line_points(l))
    out = sorted(lines)
    if r == 3 and len(out) != lines_of_space(ctx.q):
        raise GeometryError(
            f"found {len(out)} lines of P^3(F_{ctx.q}), expected {lines_of_space(ctx.q)}"
        )
    return out


def meet(h1: ProjPlane, h2: ProjPlane) -> ProjPoint:
    """Common point of two distinct lines of P^2."""
    _check_same_field(h1, h2)
    basis = null_space(h1.ctx, [h1.coords, h2.coords], len(h1.coords))
    if len(basis) != 1:
        raise ValueError("the two lines coincide")
    return ProjPoint.of(h1.ctx, basis[0])


@dataclass(frozen=True)
class PlaneFrame:
    """
    Coordinates on a plane H of P^3: (u:v:w) -> u P0 + v P1 + w P2.

    Attributes:
        plane (ProjPlane): The plane.
        points (Tuple[ProjPoint, ProjPoint, ProjPoint]): The frame points.
    """

    plane: ProjPlane
    points: Tuple[ProjPoint, ProjPoint, ProjPoint]

    @property
    def ctx(self) -> FieldCtx:
        return self.plane.ctx

    def substitution(self) -> Tuple[Tuple[int, ...], ...]:
        """4x3 matrix M with X_i = sum_j M[i][j] * (u, v, w)_j."""
        return tuple(tuple(P.coords[i] for P in self.points) for i in range(4))

    def to_space(self, uvw: Sequence[int]) -> ProjPoint:
        return ProjPoint.of(self.ctx, combine(self.ctx, uvw, [P.coords for P in self.points]))

    def line_to_space(self, h: ProjPlane) -> ProjLine:
        """The line of P^3 corresponding to the line h of the parameter plane."""
        l = hyperplane_line(h)
        return line_through(self.to_space(l.p0.coords), self.to_space(l.p1.coords))


@lru_cache(maxsize=None)
def plane_coordinate_frame(H: ProjPlane) -> PlaneFrame:
    """
    The frame of H given by the reduced row echelon basis of its point space.

    X3 = 0 gets (1:0:0:0), (0:1:0:0), (0:0:1:0); X0 = 0 gets (0:1:0:0),
    (0:0:1:0), (0:0:0:1).
    """
    ctx = H.ctx
    basis, _ = row_reduce(ctx, null_space(ctx, [H.coords], 4))
    return PlaneFrame(H, tuple(ProjPoint(ctx, b) for b in basis))


def hyperplane_line(h: ProjPlane) -> ProjLine:
    """The line a X + b Y + c Z = 0 of P^2 as a spanned line."""
    if len(h.coords) != 3:
        raise ValueError("only hyperplanes of P^2 are lines")
    a, b = null_space(h.ctx, [h.coords], 3)
    return line_through(ProjPoint.of(h.ctx, a), ProjPoint.of(h.ctx, b))
