"""
Plane sections of surfaces in P^3(F_q) and the censuses built on them.

Every plane H is parametrized by its canonical frame, the surface is
restricted to it and the resulting plane curve is split into its rational
linear factors. A section is a planar pencil when it splits completely into
concurrent lines, an extremal curve when it has no rational line and
(d-1)q+1 points, and "other" in every remaining case.
"""

import numpy as np
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from typing import ClassVar, Dict, List, Optional, Sequence, Set, Tuple, Union
from src.logger import logging
from src.components.catalog import (
    elementary_bound,
    elementary_bound_meaningful,
    hasse_weil_bound,
    sziklai_bound,
    sziklai_bound_meaningful,
)
from src.core.gf import field_create
from src.core.poly import (
    HomogeneousForm,
    count_zeros,
    dual_point,
    fq_linear_components,
    line_parameter,
    parse_form,
    render_form,
    restrict_to_line,
    restrict_to_plane,
    root_multiplicity,
    zero_mask,
)
from src.core.projgeom import (
    PlaneFrame,
    ProjLine,
    ProjPlane,
    ProjPoint,
    enumerate_hyperplanes,
    enumerate_lines,
    enumerate_planes,
    hyperplane_incidence,
    hyperplane_line,
    incident,
    line_points,
    meet,
    plane_coordinate_frame,
    planes_through_line,
    point_array,
    point_index,
    theta,
)
from src.entity.artifact_entity import (
    BoundReport,
    DoubleCount,
    ExceptionalExclusion,
    LineAudit,
    LineSummary,
    SectionCensus,
    TangencyCensus,
)
from src.entity.config_entity import BudgetConfig, DEFAULT_BUDGET
from src.exception import (
    ComponentPresent,
    IdenticallyZeroOnPlane,
    NotBijective,
    PlaneComponent,
    PreconditionViolated,
)

EXCEPTIONAL_QUARTIC: str = "(X+Y+Z)^4 + (X*Y+Y*Z+Z*X)^2 + X*Y*Z*(X+Y+Z)"


@dataclass(frozen=True)
class PlanarPencil:
    """
    Section splitting into rational lines through a common vertex.

    Attributes:
        vertex (ProjPoint): Common point, in P^3.
        lines (Tuple[ProjPlane, ...]): Linear factors in plane coordinates, with multiplicity.
        space_lines (Tuple[ProjLine, ...]): The distinct lines, in P^3.
        count (int): Rational points of the section.
        repeated (bool): Some line occurs more than once.
    """

    kind: ClassVar[str] = "pencil"
    vertex: ProjPoint
    lines: Tuple[ProjPlane, ...]
    space_lines: Tuple[ProjLine, ...]
    count: int
    repeated: bool = False


@dataclass(frozen=True)
class ExtremalCurve:
    """Section with no rational line and exactly (d-1)q+1 rational points."""

    kind: ClassVar[str] = "extremal"
    count: int


@dataclass(frozen=True)
class OtherSection:
    """
    Any other section.

    Attributes:
        count (int): Rational points of the section.
        line_components (Tuple[ProjLine, ...]): Distinct rational lines of the section, in P^3.
        reason (str): Why the section is neither a pencil nor extremal.
    """

    kind: ClassVar[str] = "other"
    count: int
    line_components: Tuple[ProjLine, ...] = ()
    reason: str = ""


SectionClass = Union[PlanarPencil, ExtremalCurve, OtherSection]


def count_points(S: HomogeneousForm, budget: Optional[BudgetConfig] = None) -> int:
    """
    Number of points of P^{n-1}(F_q) where the form vanishes.

    Raises:
        BudgetExceeded: When the point set exceeds max_points.
    """
    (budget or DEFAULT_BUDGET).check_points(theta(S.ctx.q, S.nvars - 1))
    return count_zeros(S)


def _classify_curve(g: HomogeneousForm, frame: PlaneFrame) -> SectionClass:
    q, d = g.ctx.q, g.degree
    count = count_zeros(g)
    factors = [dual_point(ell) for ell in fq_linear_components(g)]
    distinct = list(dict.fromkeys(factors))
    space_lines = tuple(frame.line_to_space(h) for h in distinct)

    if len(factors) == d:
        if len(distinct) == 1:
            return OtherSection(count, space_lines, "single repeated line")
        vertex = meet(distinct[0], distinct[1])
        if all(incident(vertex, h) for h in distinct[2:]):
            return PlanarPencil(
                vertex=frame.to_space(vertex.coords),
                lines=tuple(factors),
                space_lines=space_lines,
                count=count,
                repeated=len(distinct) < d,
            )
        return OtherSection(count, space_lines, "lines not concurrent")

    if not factors:
        if count == sziklai_bound(d, q):
            return ExtremalCurve(count)
        return OtherSection(count, (), "below the Sziklai bound")
    return OtherSection(count, space_lines, "partial line components")


def classify_section(S: HomogeneousForm, H: ProjPlane) -> SectionClass:
    """
    Classify the section of S by the plane H.

    Args:
        S (HomogeneousForm): Surface.
        H (ProjPlane): Plane of P^3.

    Returns:
        SectionClass: PlanarPencil, ExtremalCurve or OtherSection.

    Raises:
        PlaneComponent: When H is a component of S.
    """
    try:
        g = restrict_to_plane(S, H)
    except IdenticallyZeroOnPlane as e:
        raise PlaneComponent(f"the plane {H} is a component of {render_form(S)}") from e
    return _classify_curve(g, plane_coordinate_frame(H))


@lru_cache(maxsize=64)
def _section_table(S: HomogeneousForm) -> Tuple[SectionClass, ...]:
    logging.info(f"Classifying plane sections of a degree-{S.degree} surface over {S.ctx!r}")
    return tuple(classify_section(S, H) for H in enumerate_planes(S.ctx))


def section_table(
    S: HomogeneousForm, budget: Optional[BudgetConfig] = None
) -> Tuple[SectionClass, ...]:
    """
    Classes of all theta_q(3) plane sections, in plane enumeration order.

    Raises:
        BudgetExceeded: When q exceeds max_space_q.
        PlaneComponent: When S has a rational plane component.
    """
    budget = budget or DEFAULT_BUDGET
    budget.check_space(S.ctx.q)
    budget.check_points(theta(S.ctx.q, 3))
    return _section_table(S)


def _tally(classes: Sequence[SectionClass]) -> SectionCensus:
    census = SectionCensus(planes=len(classes))
    for c in classes:
        if isinstance(c, PlanarPencil):
            census.nu1 += 1
        elif isinstance(c, ExtremalCurve):
            census.nu2 += 1
        else:
            census.other += 1
    return census


def merge_census(*censuses: SectionCensus) -> SectionCensus:
    """Combine partial tallies over disjoint plane sets."""
    merged = SectionCensus()
    for c in censuses:
        merged.nu1 += c.nu1
        merged.nu2 += c.nu2
        merged.other += c.other
        merged.planes += c.planes
    return merged


def _census_chunk(args: Tuple[str, int, int, Tuple[int, ...], BudgetConfig]) -> SectionCensus:
    text, p, e, indices, budget = args
    S = parse_form(text, field_create(p, e, budget), nvars=4)
    return census_of_planes(S, indices)


def census_of_planes(S: HomogeneousForm, indices: Sequence[int]) -> SectionCensus:
    """Census restricted to the planes with the given enumeration indices."""
    planes = enumerate_planes(S.ctx)
    return _tally([classify_section(S, planes[i]) for i in indices])


def section_census(
    S: HomogeneousForm,
    planes: Optional[Sequence[int]] = None,
    workers: int = 1,
    budget: Optional[BudgetConfig] = None,
) -> SectionCensus:
    """
    Tally classify_section over all planes, or over a subset of them.

    Args:
        S (HomogeneousForm): Surface without rational plane components.
        planes (Optional[Sequence[int]]): Plane enumeration indices; all planes when omitted.
        workers (int): Process count; chunks of planes go to a process pool when > 1.
        budget (Optional[BudgetConfig]): Caps.

    Returns:
        SectionCensus: The tally; nu1 + nu2 + other equals the number of planes.

    Raises:
        PlaneComponent: When S has a rational plane component.
    """
    budget = budget or DEFAULT_BUDGET
    budget.check_space(S.ctx.q)
    budget.check_points(theta(S.ctx.q, 3))
    if planes is not None:
        return census_of_planes(S, planes)
    if workers <= 1:
        return _tally(_section_table(S))

    total = theta(S.ctx.q, 3)
    indices = list(range(total))
    chunks = [tuple(indices[k::workers]) for k in range(workers)]
    text = render_form(S)
    logging.info(f"Distributing {total} planes over {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_census_chunk, [(text, S.ctx.p, S.ctx.e, c, budget) for c in chunks]))
    return merge_census(*parts)


def rational_points(S: HomogeneousForm) -> List[ProjPoint]:
    pts = point_array(S.ctx, S.nvars - 1)
    return [ProjPoint(S.ctx, tuple(int(x) for x in pts[i])) for i in np.flatnonzero(zero_mask(S))]


def pencil_vertex_bijection(
    S: HomogeneousForm, budget: Optional[BudgetConfig] = None
) -> Dict[ProjPlane, ProjPoint]:
    """
    The vertex map from pencil planes to rational points of S.

    Returns:
        Dict[ProjPlane, ProjPoint]: Vertex of each pencil plane.

    Raises:
        NotBijective: When two pencil planes share a vertex or some rational
            point of S is no vertex.
    """
    table = section_table(S, budget)
    vertex_map = {
        H: c.vertex
        for H, c in zip(enumerate_planes(S.ctx), table)
        if isinstance(c, PlanarPencil)
    }
    vertices = list(vertex_map.values())
    if len(set(vertices)) != len(vertices):
        raise NotBijective(f"{len(vertices) - len(set(vertices))} vertices are shared by two planes")
    missing = set(rational_points(S)) - set(vertices)
    if missing or len(vertices) != count_zeros(S):
        raise NotBijective(
            f"{len(vertices)} pencil planes against {count_zeros(S)} rational points, "
            f"{len(missing)} points without a plane"
        )
    return vertex_map


# lines


def line_audit(
    S: HomogeneousForm, l: ProjLine, budget: Optional[BudgetConfig] = None
) -> LineAudit:
    """
    alpha = #(l meet S(F_q)) and beta = number of pencil planes through l.

    Raises:
        BudgetExceeded: When q exceeds max_space_q.
    """
    ctx = S.ctx
    q, d = ctx.q, S.degree
    table = section_table(S, budget)
    index = point_index(ctx, 3)
    mask = zero_mask(S)
    alpha = int(sum(mask[index[P.coords]] for P in line_points(l)))
    beta = sum(isinstance(table[index[H.coords]], PlanarPencil) for H in planes_through_line(l))
    value = beta * q + (d - 1) * q * q + d * q + 1 - alpha * q
    return LineAudit(
        line=str(l),
        alpha=alpha,
        beta=beta,
        identity_value=value,
        identity_holds=value == count_zeros(S),
    )


def line_spectrum(S: HomogeneousForm, budget: Optional[BudgetConfig] = None) -> Set[int]:
    """Attained values of #(l meet S(F_q)) over all lines of P^3(F_q)."""
    (budget or DEFAULT_BUDGET).check_space(S.ctx.q)
    index = point_index(S.ctx, 3)
    mask = zero_mask(S)
    return {
        int(sum(mask[index[P.coords]] for P in line_points(l)))
        for l in enumerate_lines(S.ctx, 3, budget)
    }


def line_vertex_bijection(S: HomogeneousForm, l: ProjLine) -> Dict[ProjPlane, ProjPoint]:
    """
    For a rational line on S, the vertex map from the planes through l to the points of l.

    Raises:
        NotBijective: When some plane through l is not a pencil or the vertices
            do not run through the points of l.
    """
    table = section_table(S)
    index = point_index(S.ctx, 3)
    vertex_map = {}
    for H in planes_through_line(l):
        c = table[index[H.coords]]
        if not isinstance(c, PlanarPencil):
            raise NotBijective(f"plane {H} through {l} is not a pencil")
        vertex_map[H] = c.vertex
    if sorted(vertex_map.values()) != line_points(l):
        raise NotBijective(f"vertices of planes through {l} do not cover the line")
    return vertex_map


def lines_through_vertices_lie_in_plane(
    S: HomogeneousForm, lines_on_surface: Sequence[ProjLine]
) -> bool:
    """Every rational line of S through the vertex of a pencil plane lies in that plane."""
    points_of = {l: set(line_points(l)) for l in lines_on_surface}
    for H, c in zip(enumerate_planes(S.ctx), section_table(S)):
        if not isinstance(c, PlanarPencil):
            continue
        for l in lines_on_surface:
            if c.vertex in points_of[l] and not (incident(l.p0, H) and incident(l.p1, H)):
                return False
    return True


def audit_all_lines(
    S: HomogeneousForm,
    lines: Optional[Sequence[ProjLine]] = None,
    budget: Optional[BudgetConfig] = None,
) -> Tuple[List[LineAudit], LineSummary]:
    """
    Audit every line (or the given ones) and summarize.

    Returns:
        Tuple[List[LineAudit], LineSummary]: Per-line audits and their summary.
    """
    q, d = S.ctx.q, S.degree
    lines = list(lines) if lines is not None else enumerate_lines(S.ctx, 3, budget)
    audits = [line_audit(S, l, budget) for l in lines]
    # all q+1 points rational is weaker than containment when d = q+1
    on_surface = [
        l for l, a in zip(lines, audits) if a.alpha == q + 1 and restrict_to_line(S, l) is None
    ]

    bijection_ok = True
    for l in on_surface:
        try:
            line_vertex_bijection(S, l)
        except NotBijective as e:
            logging.warning(f"Vertex map along a line failed: {e}")
            bijection_ok = False
            break

    spectrum = sorted({a.alpha for a in audits})
    summary = LineSummary(
        lines_checked=len(audits),
        spectrum=spectrum,
        spectrum_ok=set(spectrum) <= {0, 1, d, q + 1},
        alpha_equals_beta=all(a.alpha == a.beta for a in audits),
        identity_ok=all(a.identity_holds for a in audits),
        line_vertex_bijection_ok=bijection_ok,
        lines_through_vertices_ok=lines_through_vertices_lie_in_plane(S, on_surface),
    )
    return audits, summary


# curves in a plane


def _line_sizes(C: HomogeneousForm) -> np.ndarray:
    mask = zero_mask(C)
    return np.array([int(mask[on].sum()) for on in hyperplane_incidence(C.ctx, 2)])


def _tangent_at(C: HomogeneousForm, h: ProjPlane, P: ProjPoint) -> bool:
    l = hyperplane_line(h)
    g = restrict_to_line(C, l)
    return g is not None and root_multiplicity(g, line_parameter(l, P)) >= 2


def tangency_census(C: HomogeneousForm, plane: Optional[ProjPlane] = None) -> TangencyCensus:
    """
    Count the lines of the plane by the number of rational points of C on them.

    Lines meeting C once are checked to be tangent (repeated root of the
    restriction). A spectrum outside {0, 1, d} is reported, not raised.

    Args:
        C (HomogeneousForm): Ternary form attaining the Sziklai bound.
        plane (Optional[ProjPlane]): Ambient plane, recorded in the result.

    Returns:
        TangencyCensus: The census with its closed-form cross-checks.

    Raises:
        PreconditionViolated: When C has a rational line or does not attain the bound.
    """
    ctx = C.ctx
    q, d = ctx.q, C.degree
    if C.nvars != 3:
        raise PreconditionViolated("tangency census needs a plane curve")
    count = count_zeros(C)
    if fq_linear_components(C):
        raise PreconditionViolated(f"{render_form(C)} has a rational line component")
    if count != sziklai_bound(d, q):
        raise PreconditionViolated(f"{count} points, Sziklai bound is {sziklai_bound(d, q)}")

    sizes = _line_sizes(C)
    values, freq = np.unique(sizes, return_counts=True)
    spectrum = {int(v): int(n) for v, n in zip(values, freq)}
    x0, x1, xd = spectrum.get(0, 0), spectrum.get(1, 0), spectrum.get(d, 0)
    expected_x0 = Fraction(q * (q - (d - 1) ** 2), d)
    expected_xd = Fraction(count * q, d)
    formulas_hold = (
        x1 == count
        and xd == expected_xd
        and x0 == expected_x0
        and x0 + x1 + xd == theta(q, 2)
    )

    mask = zero_mask(C)
    pts = point_array(ctx, 2)
    incidence = hyperplane_incidence(ctx, 2)
    tangent_check = True
    for h, on, size in zip(enumerate_hyperplanes(ctx, 2), incidence, sizes):
        if size != 1:
            continue
        i = on[mask[on]][0]
        P = ProjPoint(ctx, tuple(int(x) for x in pts[i]))
        if not _tangent_at(C, h, P):
            tangent_check = False
            break

    census = TangencyCensus(
        degree=d,
        q=q,
        count=count,
        x0=x0,
        x1=x1,
        xd=xd,
        spectrum=spectrum,
        spectrum_ok=set(spectrum) <= {0, 1, d},
        expected_x0=str(expected_x0),
        expected_xd=str(expected_xd),
        formulas_hold=formulas_hold,
        tangent_check=tangent_check,
        plane=str(plane) if plane is not None else None,
    )
    if not census.spectrum_ok:
        logging.warning(f"Line spectrum {sorted(spectrum)} of {render_form(C)} leaves {{0, 1, {d}}}")
    return census


def exceptional_quartic() -> HomogeneousForm:
    """The plane quartic over F_4 with 14 rational points."""
    return parse_form(EXCEPTIONAL_QUARTIC, field_create(2, 2), nvars=3)


def bitangents(C: HomogeneousForm) -> List[ProjPlane]:
    """
    Lines of the plane meeting C in exactly two rational points with a
    repeated root of the restriction at both.
    """
    ctx = C.ctx
    mask = zero_mask(C)
    pts = point_array(ctx, 2)
    out = []
    for h, on, size in zip(enumerate_hyperplanes(ctx, 2), hyperplane_incidence(ctx, 2), _line_sizes(C)):
        if size != 2:
            continue
        contact = [ProjPoint(ctx, tuple(int(x) for x in pts[i])) for i in on[mask[on]]]
        if all(_tangent_at(C, h, P) for P in contact):
            out.append(h)
    return out


def exceptional_exclusion(C: Optional[HomogeneousForm] = None) -> ExceptionalExclusion:
    """
    Rule out a degree-4 extremal surface over F_4 through a bitangent.

    If such a surface existed, the five planes through a bitangent would
    carry sections with at most 14 points each, sharing the 2 points of the
    line, which gives (q+1)(14-2)+2 points against the required bound.
    """
    C = C or exceptional_quartic()
    q, d = C.ctx.q, C.degree
    points = count_zeros(C)
    lines = bitangents(C)
    value = (q + 1) * (points - 2) + 2
    bound = elementary_bound(d, q)
    return ExceptionalExclusion(
        points=points,
        bitangents=[str(h) for h in lines],
        all_f2_rational=all(all(x in (0, 1) for x in h.coords) for h in lines),
        value=value,
        bound=bound,
        excluded=value < bound,
    )


# bounds and identities


def bound_check(S: HomogeneousForm, budget: Optional[BudgetConfig] = None) -> BoundReport:
    """
    Point count against the elementary bound (surfaces) or the Sziklai and
    Hasse-Weil bounds (plane curves).

    Raises:
        ComponentPresent: When S has a rational plane (or line) component.
    """
    ctx = S.ctx
    q, d = ctx.q, S.degree
    N = count_points(S, budget)
    components = fq_linear_components(S)
    if components:
        kind = "plane" if S.nvars == 4 else "line"
        raise ComponentPresent(f"{render_form(S)} has {len(components)} rational {kind} component(s)")
    if S.nvars == 4:
        bound = elementary_bound(d, q)
        return BoundReport(
            kind="surface",
            q=q,
            degree=d,
            N=N,
            bound=bound,
            attains=N == bound,
            meaningful=elementary_bound_meaningful(d, q),
        )
    bound = sziklai_bound(d, q)
    hw = hasse_weil_bound(d, q)
    return BoundReport(
        kind="curve",
        q=q,
        degree=d,
        N=N,
        bound=bound,
        attains=N == bound,
        meaningful=sziklai_bound_meaningful(d, q),
        hasse_weil_value=hw.value,
        hasse_weil_floor=hw.floor,
    )


def incidence_double_count(S: HomogeneousForm, budget: Optional[BudgetConfig] = None) -> DoubleCount:
    """Sum of section counts over all planes against N * theta_q(2)."""
    q, d = S.ctx.q, S.degree
    N = count_zeros(S)
    plane_sum = sum(c.count for c in section_table(S, budget))
    t2, t3 = theta(q, 2), theta(q, 3)
    return DoubleCount(
        plane_sum=plane_sum,
        expected=N * t2,
        holds=plane_sum == N * t2,
        extremal_identity_holds=N * (d * q + 1) + (t3 - N) * ((d - 1) * q + 1) == N * t2,
    )


def pencil_line_sizes(S: HomogeneousForm, H: ProjPlane) -> Set[int]:
    """Sizes of the intersections of the lines of H with the section S meet H."""
    return {int(x) for x in _line_sizes(restrict_to_plane(S, H))}


def pencil_line_sizes_ok(S: HomogeneousForm, budget: Optional[BudgetConfig] = None) -> bool:
    """Every line of a pencil plane meets the pencil in 1, d or q+1 points."""
    allowed = {1, S.degree, S.ctx.q + 1}
    return all(
        pencil_line_sizes(S, H) <= allowed
        for H, c in zip(enumerate_planes(S.ctx), section_table(S, budget))
        if isinstance(c, PlanarPencil)
    )


def extremal_sections(
    S: HomogeneousForm, limit: int, budget: Optional[BudgetConfig] = None
) -> List[Tuple[ProjPlane, HomogeneousForm]]:
    """The first ``limit`` planes carrying an extremal curve, with the restricted curves."""
    out = []
    for H, c in zip(enumerate_planes(S.ctx), section_table(S, budget)):
        if len(out) == limit:
            break
        if isinstance(c, ExtremalCurve):
            out.append((H, restrict_to_plane(S, H)))
    return out
