import sys
from halo import Halo
from typing import Optional
from src.logger import logging
from src.constants import (
    CATALOG_NAMES,
    CHECK_BOUNDS,
    CHECK_LINES,
    CHECK_SECTIONS,
    CHECK_TANGENCY,
    TANGENCY_SECTIONS_PER_SURFACE,
)
from src.components.catalog import build_surface, elementary_bound
from src.components.sections import (
    audit_all_lines,
    bound_check,
    count_points,
    extremal_sections,
    incidence_double_count,
    pencil_line_sizes_ok,
    pencil_vertex_bijection,
    section_census,
    tangency_census,
)
from src.core.gf import field_of_order
from src.core.poly import HomogeneousForm, render_form
from src.core.projgeom import theta
from src.entity.artifact_entity import SurfaceRecord
from src.entity.config_entity import AuditConfig
from src.exception import GeometryError, MyException, NotBijective, QNotSquare


def _describe(error: Exception) -> str:
    return f"{type(error).__name__}: {error}"


class SurfaceAudit:
    """
    Pipeline component running the configured surface checks on one
    (q, surface) pair.

    Domain errors end up in the record: a Hermitian surface at non-square q
    is skipped, any other domain error fails the check that raised it.

    Attributes:
        config (AuditConfig): Run configuration.
    """

    def __init__(self, config: AuditConfig) -> None:
        self.config = config

    def _run(self, record: SurfaceRecord, check: str, action) -> Optional[object]:
        try:
            return action()
        except GeometryError as e:
            logging.warning(f"{check} check on {record.surface} at q={record.q} raised {_describe(e)}")
            record.error = record.error or _describe(e)
            record.fail(check)
            return None

    def check_bounds(self, record: SurfaceRecord, S: HomogeneousForm, catalog: bool) -> None:
        report = self._run(record, CHECK_BOUNDS, lambda: bound_check(S, self.config.budget))
        if report is None:
            return
        record.bound = report.bound
        record.attains = report.attains
        if catalog and not report.attains:
            record.fail(CHECK_BOUNDS)

    def check_sections(self, record: SurfaceRecord, S: HomogeneousForm, extremal: bool) -> None:
        budget = self.config.budget
        census = self._run(
            record,
            CHECK_SECTIONS,
            lambda: section_census(S, workers=self.config.workers, budget=budget),
        )
        if census is None:
            return
        record.census = census.to_dict()
        double_count = incidence_double_count(S, budget)
        record.double_count = double_count.to_dict()

        q, N = S.ctx.q, record.N
        identities = [census.total == theta(q, 3), double_count.holds]
        if extremal:
            identities += [
                census.nu1 == N,
                census.nu2 == theta(q, 3) - N,
                census.other == 0,
                double_count.extremal_identity_holds,
                pencil_line_sizes_ok(S, budget),
            ]
            try:
                pencil_vertex_bijection(S, budget)
                record.vertex_bijection_ok = True
            except NotBijective as e:
                logging.warning(f"Vertex bijection failed on {record.surface} at q={q}: {e}")
                record.vertex_bijection_ok = False
        record.identities_ok = all(identities)
        if not record.identities_ok or record.vertex_bijection_ok is False:
            record.fail(CHECK_SECTIONS)

    def check_lines(self, record: SurfaceRecord, S: HomogeneousForm, extremal: bool) -> None:
        result = self._run(record, CHECK_LINES, lambda: audit_all_lines(S, budget=self.config.budget))
        if result is None:
            return
        _, summary = result
        record.lines = summary.to_dict()
        record.spectrum = summary.spectrum
        if extremal and not summary.passed:
            record.fail(CHECK_LINES)

    def check_tangency(self, record: SurfaceRecord, S: HomogeneousForm, extremal: bool) -> None:
        sections = self._run(
            record,
            CHECK_TANGENCY,
            lambda: extremal_sections(S, TANGENCY_SECTIONS_PER_SURFACE, self.config.budget),
        )
        if sections is None:
            return
        for H, C in sections:
            census = self._run(record, CHECK_TANGENCY, lambda: tangency_census(C, H))
            if census is None:
                continue
            record.tangency.append(census.to_dict())
            if extremal and not census.passed:
                record.fail(CHECK_TANGENCY)

    def initiate_surface_audit(self, q: int, surface: str) -> SurfaceRecord:
        """
        Audit one surface at one q.

        Args:
            q (int): Field order.
            surface (str): Catalog name or inline form text.

        Returns:
            SurfaceRecord: Outcome of every selected check.

        Raises:
            MyException: On failures that are not domain errors.
        """
        record = SurfaceRecord(q=q, surface=surface)
        try:
            logging.info(f"Entered initiate_surface_audit for {surface} at q={q}")
            try:
                ctx = field_of_order(q, self.config.budget)
                S = build_surface(surface, ctx)
            except QNotSquare as e:
                record.status = "skipped"
                record.error = _describe(e)
                logging.info(f"Skipping {surface} at q={q}: {e}")
                return record
            except GeometryError as e:
                record.error = _describe(e)
                record.fail("surface")
                return record

            catalog = surface.strip().lower() in CATALOG_NAMES
            record.form = render_form(S)
            record.d = S.degree
            N = self._run(record, "count", lambda: count_points(S, self.config.budget))
            if N is None:
                return record
            record.N = N
            extremal = N == elementary_bound(S.degree, q)

            checks = self.config.checks
            with Halo(text=f"Auditing {surface} over F_{q}...", spinner="dots", stream=sys.stderr):
                if CHECK_BOUNDS in checks:
                    self.check_bounds(record, S, catalog)
                if CHECK_SECTIONS in checks:
                    self.check_sections(record, S, extremal)
                if CHECK_LINES in checks:
                    self.check_lines(record, S, extremal)
                if CHECK_TANGENCY in checks:
                    self.check_tangency(record, S, extremal)

            logging.info(f"Surface audit of {surface} at q={q}: {record.status}")
            return record
        except Exception as e:
            raise MyException(e, sys) from e
