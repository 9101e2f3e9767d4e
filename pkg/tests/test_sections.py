import pytest
from src.components.catalog import full_space, hermitian, hyperbolic
from src.components.sections import (
    ExtremalCurve,
    OtherSection,
    PlanarPencil,
    audit_all_lines,
    bitangents,
    _census_chunk,
    bound_check,
    census_of_planes,
    classify_section,
    count_points,
    exceptional_exclusion,
    exceptional_quartic,
    extremal_sections,
    incidence_double_count,
    line_audit,
    line_spectrum,
    merge_census,
    pencil_line_sizes_ok,
    pencil_vertex_bijection,
    section_census,
    section_table,
    tangency_census,
)
from src.core.gf import field_of_order
from src.core.poly import count_zeros, parse_form, render_form
from src.core.projgeom import ProjPlane, ProjPoint, enumerate_lines, theta
from src.entity.config_entity import BudgetConfig
from src.exception import (
    BudgetExceeded,
    ComponentPresent,
    PlaneComponent,
    PreconditionViolated,
)


class TestClassification:
    def test_tangent_plane_is_a_pencil(self, F2):
        section = classify_section(hyperbolic(F2), ProjPlane(F2, (0, 0, 0, 1)))
        assert isinstance(section, PlanarPencil)
        assert section.vertex == ProjPoint(F2, (0, 0, 1, 0))
        assert section.count == 2 * 2 + 1
        assert len(section.space_lines) == 2
        assert not section.repeated

    def test_nonsingular_conic_is_extremal(self, F3):
        cone = parse_form("X0*X1 - X2^2", F3)
        section = classify_section(cone, ProjPlane(F3, (0, 0, 0, 1)))
        assert isinstance(section, ExtremalCurve)
        assert section.count == 4

    def test_repeated_line(self, F3):
        cone = parse_form("X0*X1 - X2^2", F3)
        section = classify_section(cone, ProjPlane(F3, (1, 0, 0, 0)))
        assert isinstance(section, OtherSection)
        assert section.reason == "single repeated line"

    def test_triangle(self, F2):
        section = classify_section(parse_form("X0*X1*X2", F2), ProjPlane(F2, (0, 0, 0, 1)))
        assert isinstance(section, OtherSection)
        assert section.reason == "lines not concurrent"
        assert len(section.line_components) == 3

    def test_plane_component(self, F2):
        with pytest.raises(PlaneComponent):
            classify_section(parse_form("X0*X1", F2), ProjPlane(F2, (1, 0, 0, 0)))


class TestCensus:
    @pytest.mark.parametrize(
        "q, build, expected",
        [
            (2, hyperbolic, (9, 6, 0)),
            (3, hyperbolic, (16, 24, 0)),
            (4, hermitian, (45, 40, 0)),
            (2, full_space, (15, 0, 0)),
            (3, full_space, (40, 0, 0)),
            (4, full_space, (85, 0, 0)),
            (5, full_space, (156, 0, 0)),
            pytest.param(9, hermitian, (280, 540, 0), marks=pytest.mark.slow),
        ],
    )
    def test_extremal_surfaces(self, q, build, expected):
        S = build(field_of_order(q))
        census = section_census(S)
        assert (census.nu1, census.nu2, census.other) == expected
        assert census.total == census.planes == theta(q, 3)

    def test_partial_tallies_merge(self, F3):
        S = hyperbolic(F3)
        half = theta(3, 3) // 2
        merged = merge_census(
            census_of_planes(S, range(half)), census_of_planes(S, range(half, theta(3, 3)))
        )
        assert merged == section_census(S)

    def test_subset_of_planes(self, F2):
        census = section_census(hyperbolic(F2), planes=[0, 1, 2])
        assert census.planes == 3

    def test_plane_component(self, F2):
        with pytest.raises(PlaneComponent):
            section_census(parse_form("X0*X1", F2))

    def test_space_budget(self, F4):
        with pytest.raises(BudgetExceeded):
            section_table(hyperbolic(F4), BudgetConfig(max_field_q=64, max_space_q=3, max_points=40000))

    @pytest.mark.slow
    def test_worker_pool_matches_serial(self, F4):
        S = hermitian(F4)
        assert section_census(S, workers=2) == section_census(S)

    def test_chunks_use_the_given_budget(self, F3):
        S = hyperbolic(F3)
        budget = BudgetConfig(max_field_q=3, max_space_q=3, max_points=100)
        chunk = (render_form(S), 3, 1, (0, 1, 2), budget)
        assert _census_chunk(chunk) == census_of_planes(S, (0, 1, 2))
        with pytest.raises(BudgetExceeded):
            _census_chunk((render_form(S), 3, 1, (0,), BudgetConfig(max_field_q=2)))


class TestVertexMap:
    @pytest.mark.parametrize(
        "q, build",
        [
            (2, hyperbolic),
            (3, hyperbolic),
            (4, hermitian),
            (3, full_space),
            (4, full_space),
            (5, full_space),
            pytest.param(9, hermitian, marks=pytest.mark.slow),
        ],
    )
    def test_bijection(self, q, build):
        S = build(field_of_order(q))
        vertex_map = pencil_vertex_bijection(S)
        assert len(vertex_map) == count_zeros(S)
        assert set(vertex_map.values()) == {
            c.vertex for c in section_table(S) if isinstance(c, PlanarPencil)
        }

    def test_double_count(self, F2):
        result = incidence_double_count(hyperbolic(F2))
        assert result.plane_sum == result.expected == 9 * 7
        assert result.holds and result.extremal_identity_holds

    def test_pencil_line_sizes(self, F3, F4):
        assert pencil_line_sizes_ok(hyperbolic(F3))
        assert pencil_line_sizes_ok(hermitian(F4))


class TestLines:
    def test_spectrum(self, F2, F4):
        assert line_spectrum(hyperbolic(F2)) == {0, 1, 2, 3}
        assert line_spectrum(hermitian(F4)) <= {0, 1, 3, 5}

    @pytest.mark.parametrize("q, build", [(2, hyperbolic), (3, hyperbolic), (2, full_space)])
    def test_audit(self, q, build):
        S = build(field_of_order(q))
        audits, summary = audit_all_lines(S)
        assert summary.lines_checked == len(enumerate_lines(S.ctx))
        assert summary.passed
        assert all(a.alpha == a.beta for a in audits)

    @pytest.mark.slow
    def test_audit_hermitian(self, F4):
        _, summary = audit_all_lines(hermitian(F4))
        assert summary.passed
        assert set(summary.spectrum) == {1, 3, 5}

    @pytest.mark.parametrize(
        "q, build, spectrum",
        [(3, full_space, {4}), (4, full_space, {5}), (4, hyperbolic, {0, 1, 2, 5})],
    )
    def test_spectra(self, q, build, spectrum):
        _, summary = audit_all_lines(build(field_of_order(q)))
        assert set(summary.spectrum) == spectrum
        assert summary.passed

    def test_identity_on_a_line(self, F3):
        S = hyperbolic(F3)
        l = enumerate_lines(F3)[0]
        audit = line_audit(S, l)
        assert audit.identity_value == 16
        assert audit.identity_holds

    def test_identity_fails_off_the_bound(self, F3):
        S = parse_form("X0^2 + X1^2 + X2^2 - X3^2", F3)
        audits, summary = audit_all_lines(S)
        assert count_points(S) == 10
        assert not summary.identity_ok


class TestTangency:
    def test_conic_over_f4(self, F4):
        census = tangency_census(parse_form("X*Y + Z^2", F4))
        assert (census.x0, census.x1, census.xd) == (6, 5, 10)
        assert census.passed

    def test_conic_over_f9(self, F9):
        census = tangency_census(parse_form("X*Y - Z^2", F9))
        assert census.x0 == 36
        assert census.expected_x0 == "36"
        assert census.passed

    def test_hermitian_curve(self, F9):
        census = tangency_census(parse_form("X^4 + Y^4 + Z^4", F9))
        assert (census.count, census.x0, census.x1, census.xd) == (28, 0, 28, 63)
        assert census.passed

    def test_rejects_line_components(self, F3):
        with pytest.raises(PreconditionViolated):
            tangency_census(parse_form("X*Y", F3))

    def test_rejects_curves_below_the_bound(self, F2):
        with pytest.raises(PreconditionViolated):
            tangency_census(parse_form("X^2 + X*Y + Y^2", F2))

    def test_sections_of_the_hermitian_surface_over_f9(self, F9):
        sections = extremal_sections(hermitian(F9), 3)
        assert len(sections) == 3
        for H, C in sections:
            census = tangency_census(C, H)
            assert (census.count, census.x0, census.x1, census.xd) == (28, 0, 28, 63)
            assert census.passed

    def test_sections_of_the_hermitian_surface(self, F4):
        sections = extremal_sections(hermitian(F4), 3)
        assert len(sections) == 3
        for H, C in sections:
            census = tangency_census(C, H)
            assert census.x0 == 0
            assert census.plane == str(H)
            assert census.passed


class TestExceptionalQuartic:
    def test_points_and_bitangents(self):
        C = exceptional_quartic()
        assert count_zeros(C) == 14
        assert len(bitangents(C)) == 7

    def test_exclusion(self):
        result = exceptional_exclusion()
        assert (result.value, result.bound) == (62, 65)
        assert result.all_f2_rational
        assert result.passed


class TestBoundCheck:
    def test_surface(self, F2):
        report = bound_check(hyperbolic(F2))
        assert (report.N, report.bound, report.attains) == (9, 9, True)
        assert report.kind == "surface"

    def test_curve(self, F4):
        report = bound_check(parse_form("X*Y + Z^2", F4))
        assert report.kind == "curve"
        assert (report.N, report.bound, report.attains) == (5, 5, True)
        assert report.hasse_weil_floor == 5

    def test_hyperbolic_over_f5(self):
        report = bound_check(hyperbolic(field_of_order(5)))
        assert (report.N, report.bound, report.attains) == (36, 36, True)
        assert report.meaningful

    def test_cone_does_not_attain(self, F3):
        report = bound_check(parse_form("X0*X1 - X2^2", F3))
        assert (report.N, report.bound, report.attains) == (13, 16, False)

    def test_full_space_is_at_the_edge_of_the_range(self, F3):
        report = bound_check(full_space(F3))
        assert report.meaningful
        assert report.bound == theta(3, 3)

    def test_component(self, F2):
        with pytest.raises(ComponentPresent):
            bound_check(parse_form("X0*X1", F2))
