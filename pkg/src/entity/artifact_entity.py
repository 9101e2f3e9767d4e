from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


def _as_dict(obj: Any) -> Dict[str, Any]:
    data = asdict(obj)
    for key, value in list(data.items()):
        if isinstance(value, dict):
            data[key] = {str(k): v for k, v in value.items()}
    return data


@dataclass
class SectionCensus:
    """
    Tally of plane-section classes over a set of planes.

    For a surface attaining the elementary bound, the pencil count equals the
    number of rational points and every other plane carries an extremal curve.

    Attributes:
        nu1 (int): Planes whose section is a planar pencil.
        nu2 (int): Planes whose section is an extremal curve.
        other (int): Remaining planes.
        planes (int): Number of planes tallied.
    """

    nu1: int = 0
    nu2: int = 0
    other: int = 0
    planes: int = 0

    @property
    def total(self) -> int:
        return self.nu1 + self.nu2 + self.other

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class LineAudit:
    """
    Point count of one line against the pencil planes through it.

    Attributes:
        line (str): The line, as its canonical point pair.
        alpha (int): Rational points of the surface on the line.
        beta (int): Planes through the line whose section is a pencil.
        identity_value (int): beta*q + (d-1)q^2 + dq + 1 - alpha*q.
        identity_holds (bool): Whether identity_value equals the point count of the surface.
    """

    line: str
    alpha: int
    beta: int
    identity_value: int
    identity_holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class LineSummary:
    """
    Aggregate of the line audits of one surface.

    Attributes:
        lines_checked (int): Number of lines audited.
        spectrum (List[int]): Sorted attained values of alpha.
        spectrum_ok (bool): Spectrum within {0, 1, d, q+1}.
        alpha_equals_beta (bool): alpha = beta on every line.
        identity_ok (bool): The per-line counting identity on every line.
        line_vertex_bijection_ok (bool): Vertex map onto every rational line of the surface.
        lines_through_vertices_ok (bool): Lines through a pencil vertex lie in its plane.
    """

    lines_checked: int
    spectrum: List[int]
    spectrum_ok: bool
    alpha_equals_beta: bool
    identity_ok: bool
    line_vertex_bijection_ok: bool
    lines_through_vertices_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.spectrum_ok
            and self.alpha_equals_beta
            and self.identity_ok
            and self.line_vertex_bijection_ok
            and self.lines_through_vertices_ok
        )

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class TangencyCensus:
    """
    Lines of a plane sorted by the number of rational curve points on them.

    Attributes:
        degree (int): Degree d of the curve.
        q (int): Field order.
        count (int): Rational points of the curve.
        x0 (int): Lines missing the curve.
        x1 (int): Lines meeting the curve once.
        xd (int): Lines meeting the curve in d points.
        spectrum (Dict[int, int]): Line count per intersection size.
        spectrum_ok (bool): Every size lies in {0, 1, d}.
        expected_x0 (str): q(q - (d-1)^2)/d as an exact fraction.
        expected_xd (str): ((d-1)q+1)q/d as an exact fraction.
        formulas_hold (bool): x1, xd, x0 and their sum match the closed forms.
        tangent_check (bool): Each line meeting the curve once has a repeated root there.
        plane (Optional[str]): Ambient plane when the curve is a section.
    """

    degree: int
    q: int
    count: int
    x0: int
    x1: int
    xd: int
    spectrum: Dict[int, int]
    spectrum_ok: bool
    expected_x0: str
    expected_xd: str
    formulas_hold: bool
    tangent_check: bool
    plane: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.spectrum_ok and self.formulas_hold and self.tangent_check

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class BoundReport:
    """
    Point count against the applicable bounds.

    Attributes:
        kind (str): ``surface`` or ``curve``.
        q (int): Field order.
        degree (int): Degree d.
        N (int): Rational point count.
        bound (int): Elementary bound for surfaces, Sziklai bound for curves.
        attains (bool): N equals the bound.
        meaningful (bool): The bound is at most the number of points of the
            ambient space (d <= q+1 for surfaces, d <= q+2 for curves).
        hasse_weil_value (Optional[float]): q+1+(d-1)(d-2)sqrt(q), curves only.
        hasse_weil_floor (Optional[int]): Its exact floor, curves only.
    """

    kind: str
    q: int
    degree: int
    N: int
    bound: int
    attains: bool
    meaningful: bool = True
    hasse_weil_value: Optional[float] = None
    hasse_weil_floor: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class DoubleCount:
    """
    Counting the incident (point, plane) pairs of the surface in two ways.

    Attributes:
        plane_sum (int): Sum over planes of the section point counts.
        expected (int): N * theta_q(2).
        holds (bool): plane_sum == expected.
        extremal_identity_holds (bool): N(dq+1) + (theta_q(3)-N)((d-1)q+1) == N theta_q(2).
    """

    plane_sum: int
    expected: int
    holds: bool
    extremal_identity_holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class ExceptionalExclusion:
    """
    The quartic over F_4 with 14 points and its bitangents, and the count
    that rules out a degree-4 extremal surface over F_4.

    Attributes:
        points (int): Rational points of the quartic.
        bitangents (List[str]): Dual coordinates of the bitangents.
        all_f2_rational (bool): Every bitangent has dual coordinates in F_2.
        value (int): (q+1)(points - 2) + 2.
        bound (int): Elementary bound at d = 4, q = 4.
        excluded (bool): value < bound.
    """

    points: int
    bitangents: List[str]
    all_f2_rational: bool
    value: int
    bound: int
    excluded: bool

    @property
    def passed(self) -> bool:
        return self.points == 14 and len(self.bitangents) == 7 and self.all_f2_rational and self.excluded

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class SurfaceRecord:
    """
    Every check run on one surface at one q.

    Attributes:
        q (int): Field order.
        surface (str): Catalog name or inline text as configured.
        status (str): ``passed``, ``failed`` or ``skipped``.
        form (Optional[str]): Canonical text of the form.
        d (Optional[int]): Degree.
        N (Optional[int]): Rational point count.
        bound (Optional[int]): Elementary bound.
        attains (Optional[bool]): N equals the bound.
        census (Optional[Dict[str, Any]]): Section census.
        vertex_bijection_ok (Optional[bool]): Pencil planes biject to rational points.
        identities_ok (Optional[bool]): Census and double-count identities.
        double_count (Optional[Dict[str, Any]]): Point-plane double count.
        lines (Optional[Dict[str, Any]]): Line summary.
        spectrum (Optional[List[int]]): Line spectrum.
        tangency (List[Dict[str, Any]]): Tangency censuses of extremal-curve sections.
        failures (List[str]): Names of failed checks.
        error (Optional[str]): Error class and message when the surface could not be audited.
    """

    q: int
    surface: str
    status: str = "passed"
    form: Optional[str] = None
    d: Optional[int] = None
    N: Optional[int] = None
    bound: Optional[int] = None
    attains: Optional[bool] = None
    census: Optional[Dict[str, Any]] = None
    vertex_bijection_ok: Optional[bool] = None
    identities_ok: Optional[bool] = None
    double_count: Optional[Dict[str, Any]] = None
    lines: Optional[Dict[str, Any]] = None
    spectrum: Optional[List[int]] = None
    tangency: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    error: Optional[str] = None

    def fail(self, check: str) -> None:
        self.failures.append(check)
        self.status = "failed"

    @property
    def passed(self) -> bool:
        return self.status != "failed"

    def to_dict(self) -> Dict[str, Any]:
        return _as_dict(self)


@dataclass
class QuadricCensusRecord:
    """
    Exhaustive census of quadric forms up to scalar.

    Attributes:
        q (int): Field order, 2 or 3.
        total_forms (int): (q^10 - 1)/(q - 1).
        plane_free (int): Forms without a rational plane component.
        with_plane_component (int): Forms with one.
        max_count (int): Largest point count among plane-free forms.
        achievers (int): Plane-free forms attaining max_count.
        all_achievers_hyperbolic (bool): Every achiever is equivalent to X0*X1 - X2*X3.
        histogram (Dict[int, int]): Plane-free forms per point count.
        pgl_order (int): Order of PGL(4, q).
        equivalence_test (str): ``orbit`` or ``invariants``.
        orbit_size (Optional[int]): Size of the orbit of X0*X1 - X2*X3 when computed.
    """

    q: int
    total_forms: int
    plane_free: int
    with_plane_component: int
    max_count: int
    achievers: int
    all_achievers_hyperbolic: bool
    histogram: Dict[int, int]
    pgl_order: int
    equivalence_test: str
    orbit_size: Optional[int] = None

    @property
    def passed(self) -> bool:
        return (
            self.max_count == (self.q + 1) ** 2
            and self.all_achievers_hyperbolic
            and self.plane_free + self.with_plane_component == self.total_forms
        )

    def to_dict(self) -> Dict[str, Any]:
        data = _as_dict(self)
        data["passed"] = self.passed
        return data


@dataclass
class DegreeGateRecord:
    """
    Degrees admissible for the elementary bound at one q.

    Attributes:
        q (int): Field order.
        admissible (List[int]): Sorted admissible degrees.
        catalog_degrees (Dict[str, int]): Degree of each catalog surface defined at q.
        catalog_ok (bool): Every catalog degree is admissible.
        x0_expressions (Dict[int, str]): q(q-(d-1)^2)/d for d in 2..q+1, exact.
        sign_consistent (bool): The expression is >= 0 exactly when (d-1)^2 <= q.
        sziklai_admissible (List[int]): Degrees in 1..q+2 passing the degree predicate.
        exceptional (Optional[Dict[str, Any]]): Exclusion of d = 4 at q = 4.
    """

    q: int
    admissible: List[int]
    catalog_degrees: Dict[str, int]
    catalog_ok: bool
    x0_expressions: Dict[int, str]
    sign_consistent: bool
    sziklai_admissible: List[int]
    exceptional: Optional[Dict[str, Any]] = None
    exceptional_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.catalog_ok and self.sign_consistent and self.exceptional_ok

    def to_dict(self) -> Dict[str, Any]:
        data = _as_dict(self)
        data["passed"] = self.passed
        return data


@dataclass
class AltformRecord:
    """
    Normal-form and classification checks over alternating matrices at one q.

    Attributes:
        q (int): Field order.
        exhaustive (bool): All nonzero matrices were checked.
        matrices_checked (int): Number of matrices.
        rank2 (int): Matrices of rank 2.
        rank4 (int): Matrices of rank 4.
        normal_form_ok (bool): tG A G is canonical for every matrix.
        vanishing_ok (bool): Every surface vanishes on all of P^3(F_q).
        split_ok (bool): Rank-2 surfaces split into q+1 rational planes.
        extremal_ok (bool): Rank-4 surfaces are plane-free.
        coherence_ok (bool): Coordinate change by G gives the surface of tG A G.
        frobenius_ok (bool): Every G is fixed by the q-th power map.
    """

    q: int
    exhaustive: bool
    matrices_checked: int
    rank2: int
    rank4: int
    normal_form_ok: bool
    vanishing_ok: bool
    split_ok: bool
    extremal_ok: bool
    coherence_ok: bool
    frobenius_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.normal_form_ok
            and self.vanishing_ok
            and self.split_ok
            and self.extremal_ok
            and self.coherence_ok
            and self.frobenius_ok
        )

    def to_dict(self) -> Dict[str, Any]:
        data = _as_dict(self)
        data["passed"] = self.passed
        return data


@dataclass
class AuditReport:
    """
    Result of one audit run.

    Attributes:
        checks (List[str]): Checks that were run.
        q_list (List[int]): Field orders.
        surfaces (List[SurfaceRecord]): Per-surface records.
        quadric_census (List[QuadricCensusRecord]): Quadric censuses.
        degree_gate (List[DegreeGateRecord]): Degree gate records.
        altform (List[AltformRecord]): Alternating-form records.
    """

    checks: List[str]
    q_list: List[int]
    surfaces: List[SurfaceRecord] = field(default_factory=list)
    quadric_census: List[QuadricCensusRecord] = field(default_factory=list)
    degree_gate: List[DegreeGateRecord] = field(default_factory=list)
    altform: List[AltformRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        records = [*self.surfaces, *self.quadric_census, *self.degree_gate, *self.altform]
        return all(r.passed for r in records)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checks": list(self.checks),
            "q_list": list(self.q_list),
            "passed": self.passed,
            "surfaces": [r.to_dict() for r in self.surfaces],
            "quadric_census": [r.to_dict() for r in self.quadric_census],
            "degree_gate": [r.to_dict() for r in self.degree_gate],
            "altform": [r.to_dict() for r in self.altform],
        }
