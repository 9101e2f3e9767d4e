import os
import sys
from typing import Optional
from src.logger import logging
from src.constants import (
    CHECK_ALTFORM,
    CHECK_BOUNDS,
    CHECK_DEGREE_GATE,
    CHECK_LINES,
    CHECK_QUADRIC_CENSUS,
    CHECK_SECTIONS,
    CHECK_TANGENCY,
)
from src.components.altform_audit import AltformAudit
from src.components.degree_gate import DegreeGate
from src.components.quadric_census import QuadricCensus
from src.components.surface_audit import SurfaceAudit
from src.entity.artifact_entity import (
    AltformRecord,
    AuditReport,
    DegreeGateRecord,
    QuadricCensusRecord,
    SurfaceRecord,
)
from src.entity.config_entity import AuditConfig
from src.exception import reraise_domain
from src.utils.main_utils import save_as_json

terminal_width: int = os.get_terminal_size(2).columns if os.isatty(2) else 80

SURFACE_CHECKS = (CHECK_BOUNDS, CHECK_SECTIONS, CHECK_LINES, CHECK_TANGENCY)


def _rule(char: str) -> None:
    print(char * terminal_width, file=sys.stderr)


class AuditPipeline:
    """
    Orchestrates one audit run.

    The stages run per field order: surface checks for every configured
    surface, then the degree gate, the alternating-form checks and the
    quadric census when selected. Every stage returns a record; the report
    passes when every record does.

    Attributes:
        config (AuditConfig): Validated run configuration.
    """

    def __init__(self, config: AuditConfig) -> None:
        self.config = config

    def start_surface_audit(self, q: int, surface: str) -> SurfaceRecord:
        try:
            return SurfaceAudit(self.config).initiate_surface_audit(q, surface)
        except Exception as e:
            reraise_domain(e)

    def start_degree_gate(self, q: int) -> DegreeGateRecord:
        try:
            return DegreeGate().initiate_degree_gate(q)
        except Exception as e:
            reraise_domain(e)

    def start_altform_audit(self, q: int) -> AltformRecord:
        try:
            return AltformAudit(self.config).initiate_altform_audit(q)
        except Exception as e:
            reraise_domain(e)

    def start_quadric_census(self, q: int) -> QuadricCensusRecord:
        try:
            return QuadricCensus(self.config.budget).initiate_quadric_census(q)
        except Exception as e:
            reraise_domain(e)

    def run_pipeline(self) -> AuditReport:
        """
        Run every selected check over every configured q.

        Returns:
            AuditReport: The report, also saved to ``output_path`` when configured.

        Raises:
            GeometryError: On budget or configuration errors outside a surface record.
            MyException: On any other failure.
        """
        try:
            config = self.config
            checks = config.checks
            report = AuditReport(checks=list(checks), q_list=list(config.q_list))

            _rule("=")
            logging.info("Executing audit pipeline...")
            for q in config.q_list:
                _rule("-")
                if any(c in checks for c in SURFACE_CHECKS):
                    for surface in config.surfaces:
                        logging.info(f"Executing Surface Audit of {surface} at q={q}...")
                        report.surfaces.append(self.start_surface_audit(q, surface))
                        logging.info("Surface Audit completed")

                if CHECK_DEGREE_GATE in checks:
                    logging.info(f"Executing Degree Gate at q={q}...")
                    report.degree_gate.append(self.start_degree_gate(q))
                    logging.info("Degree Gate completed")

                if CHECK_ALTFORM in checks:
                    logging.info(f"Executing Alternating Form Audit at q={q}...")
                    report.altform.append(self.start_altform_audit(q))
                    logging.info("Alternating Form Audit completed")

                if CHECK_QUADRIC_CENSUS in checks:
                    logging.info(f"Executing Quadric Census at q={q}...")
                    report.quadric_census.append(self.start_quadric_census(q))
                    logging.info("Quadric Census completed")

            if config.output_path:
                save_as_json(report.to_dict(), config.output_path)
                logging.info(f"Report saved to {config.output_path}")

            if report.passed:
                logging.info("Audit pipeline completed: all checks passed")
            else:
                logging.warning("Audit pipeline completed with failed checks")
            _rule("=")
            return report
        except Exception as e:
            reraise_domain(e)


def run_audit(config: AuditConfig) -> AuditReport:
    return AuditPipeline(config).run_pipeline()
