import sys
import itertools
import numpy as np
from halo import Halo
from collections import deque
from typing import List, Optional, Set, Tuple
from src.logger import logging
from src.constants import QUADRIC_CENSUS_FIELDS
from src.components.catalog import hyperbolic
from src.core.gf import FieldCtx, field_create
from src.core.linalg import Matrix, normalize
from src.core.poly import (
    HomogeneousForm,
    change_coordinates,
    make_form,
    partial_derivative,
    zero_mask,
)
from src.core.projgeom import hyperplane_incidence, point_array, theta
from src.entity.artifact_entity import QuadricCensusRecord
from src.entity.config_entity import BudgetConfig, DEFAULT_BUDGET
from src.exception import BudgetExceeded, reraise_domain

QUADRIC_MONOMIALS: Tuple[Tuple[int, ...], ...] = tuple(
    sorted(
        (e for e in itertools.product(range(3), repeat=4) if sum(e) == 2),
        reverse=True,
    )
)


def order_gl(n: int, q: int) -> int:
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order


def order_pgl(n: int, q: int) -> int:
    return order_gl(n, q) // (q - 1)


def form_from_vector(ctx: FieldCtx, coeffs) -> HomogeneousForm:
    return make_form(ctx, 4, {e: int(c) for e, c in zip(QUADRIC_MONOMIALS, coeffs) if c})


def vector_of_form(f: HomogeneousForm) -> Tuple[int, ...]:
    """Normalized coefficient vector of a quadric in monomial order."""
    return normalize(f.ctx, [f.coefficient(e) for e in QUADRIC_MONOMIALS])


def quadric_point_counts(ctx: FieldCtx, forms: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Point counts and plane-component flags for quadrics over a prime field.

    A quadric has a rational plane component exactly when it vanishes at
    every rational point of that plane, since 2 <= q.

    Args:
        ctx (FieldCtx): Prime field.
        forms (np.ndarray): (m, 10) coefficient vectors in monomial order.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Counts and plane-component flags, per form.
    """
    pts = point_array(ctx, 3)
    exps = np.array(QUADRIC_MONOMIALS, dtype=np.int64)
    monomials = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2) % ctx.p
    zeros = (forms @ monomials.T) % ctx.p == 0
    has_plane = np.zeros(len(forms), dtype=bool)
    for on in hyperplane_incidence(ctx, 3):
        has_plane |= zeros[:, on].all(axis=1)
    return zeros.sum(axis=1), has_plane


def transvections(ctx: FieldCtx) -> List[Matrix]:
    """The elementary matrices I + E_ij, i != j, which generate SL(4, q)."""
    gens = []
    for i, j in itertools.permutations(range(4), 2):
        rows = [[1 if a == b else 0 for b in range(4)] for a in range(4)]
        rows[i][j] = 1
        gens.append(Matrix.from_rows(ctx, rows))
    return gens


def quadric_orbit(f: HomogeneousForm, generators: List[Matrix]) -> Set[Tuple[int, ...]]:
    """Breadth-first orbit of a quadric (up to scalar) under the group generated by ``generators``."""
    start = vector_of_form(f)
    orbit = {start}
    queue = deque([f])
    while queue:
        g = queue.popleft()
        for M in generators:
            h = change_coordinates(g, M.rows)
            key = vector_of_form(h)
            if key not in orbit:
                orbit.add(key)
                queue.append(h)
    return orbit


def gram_matrix(f: HomogeneousForm) -> Matrix:
    """The polar bilinear form f(x+y) - f(x) - f(y)."""
    ctx = f.ctx
    rows = [[0] * 4 for _ in range(4)]
    for exps, c in f.terms:
        support = [i for i, a in enumerate(exps) if a]
        if len(support) == 1:
            i = support[0]
            rows[i][i] = ctx.add(c, c)
        else:
            i, j = support
            rows[i][j] = rows[j][i] = c
    return Matrix.from_rows(ctx, rows)


def is_nonsingular_quadric(f: HomogeneousForm, budget: Optional[BudgetConfig] = None) -> bool:
    """
    Nonsingularity of a quadric surface.

    Odd characteristic: the polar form has rank 4. Characteristic 2: no
    common zero of f and its partial derivatives over F_q or F_{q^2}.
    """
    ctx = f.ctx
    if ctx.p != 2:
        return gram_matrix(f).rank() == 4
    partials = [partial_derivative(f, i) for i in range(4)]
    for field in (ctx, field_create(ctx.p, 2 * ctx.e, budget)):
        forms = [g.lift(field) if field != ctx else g for g in (f, *partials) if g is not None]
        common = np.logical_and.reduce([zero_mask(g) for g in forms])
        if common.any():
            return False
    return True


def quadric_census(
    ctx: FieldCtx, budget: Optional[BudgetConfig] = None, chunk_size: int = 8192
) -> QuadricCensusRecord:
    """
    Census of all quadric forms over F_q up to scalar, q in {2, 3}.

    Args:
        ctx (FieldCtx): F_2 or F_3.
        budget (Optional[BudgetConfig]): Caps on the enumerated form space.
        chunk_size (int): Forms evaluated per batch.

    Returns:
        QuadricCensusRecord: Counts, maximum, achievers and the equivalence verdict.

    Raises:
        BudgetExceeded: When q is not 2 or 3 or the form space exceeds max_points.
    """
    budget = budget or DEFAULT_BUDGET
    q = ctx.q
    if q not in QUADRIC_CENSUS_FIELDS:
        raise BudgetExceeded(f"quadric census is limited to q in {QUADRIC_CENSUS_FIELDS}, got {q}")
    budget.check_points(theta(q, 9))

    forms = point_array(ctx, 9)
    counts = np.empty(len(forms), dtype=np.int64)
    planes = np.empty(len(forms), dtype=bool)
    for start in range(0, len(forms), chunk_size):
        stop = start + chunk_size
        counts[start:stop], planes[start:stop] = quadric_point_counts(ctx, forms[start:stop])

    free = ~planes
    values, freq = np.unique(counts[free], return_counts=True)
    histogram = {int(v): int(n) for v, n in zip(values, freq)}
    max_count = int(values.max())
    achievers = np.flatnonzero(free & (counts == max_count))
    logging.info(f"q={q}: {int(free.sum())} plane-free quadrics, max {max_count} by {len(achievers)}")

    achiever_keys = {tuple(int(x) for x in forms[i]) for i in achievers}
    orbit_size = None
    if q == 2:
        orbit = quadric_orbit(hyperbolic(ctx), transvections(ctx))
        orbit_size = len(orbit)
        all_hyperbolic = orbit == achiever_keys
        test = "orbit"
    else:
        all_hyperbolic = all(
            is_nonsingular_quadric(form_from_vector(ctx, forms[i]), budget)
            and counts[i] == (q + 1) ** 2
            for i in achievers
        )
        test = "invariants"

    return QuadricCensusRecord(
        q=q,
        total_forms=len(forms),
        plane_free=int(free.sum()),
        with_plane_component=int(planes.sum()),
        max_count=max_count,
        achievers=len(achievers),
        all_achievers_hyperbolic=bool(all_hyperbolic),
        histogram=histogram,
        pgl_order=order_pgl(4, q),
        equivalence_test=test,
        orbit_size=orbit_size,
    )


class QuadricCensus:
    """
    Pipeline component rediscovering the degree-2 extremal surfaces by
    exhaustive search over quadric forms.

    Attributes:
        budget (BudgetConfig): Enumeration caps.
    """

    def __init__(self, budget: BudgetConfig) -> None:
        self.budget = budget

    def initiate_quadric_census(self, q: int) -> QuadricCensusRecord:
        """
        Run the census at one q and log its verdict.

        Raises:
            GeometryError: On budget or field errors.
            MyException: On any other failure.
        """
        try:
            logging.info(f"Entered initiate_quadric_census for q={q}")
            ctx = field_create(q, 1, self.budget)
            with Halo(text=f"Enumerating quadrics over F_{q}...", spinner="dots", stream=sys.stderr):
                record = quadric_census(ctx, self.budget)
            if not record.passed:
                logging.warning(f"Quadric census at q={q} failed: max {record.max_count}")
            return record
        except Exception as e:
            reraise_domain(e)
