import sys
import numpy as np
from halo import Halo
from src.logger import logging
from src.components.altform import (
    RankClass,
    all_alternating,
    congruent,
    coordinate_change_coherent,
    frobenius_matrix_check,
    random_alternating,
    rank_classify,
    symplectic_normal_form,
)
from src.core.gf import field_of_order
from src.core.projgeom import theta
from src.entity.artifact_entity import AltformRecord
from src.entity.config_entity import AuditConfig
from src.exception import GeometryError, reraise_domain


class AltformAudit:
    """
    Pipeline component checking the normal form and the rank classification
    of alternating-matrix surfaces: exhaustively at q = 2, by seeded random
    sampling otherwise.

    Attributes:
        config (AuditConfig): Run configuration (seed, sample size, budget).
    """

    def __init__(self, config: AuditConfig) -> None:
        self.config = config

    def initiate_altform_audit(self, q: int) -> AltformRecord:
        """
        Run the alternating-form checks at one q.

        Args:
            q (int): Field order.

        Returns:
            AltformRecord: Tallies and verdicts.

        Raises:
            GeometryError: On budget or field errors.
            MyException: On any other failure.
        """
        try:
            logging.info(f"Entered initiate_altform_audit for q={q}")
            ctx = field_of_order(q, self.config.budget)
            exhaustive = q == 2
            if exhaustive:
                matrices = list(all_alternating(ctx))
            else:
                rng = np.random.default_rng(self.config.seed + q)
                matrices = [random_alternating(ctx, rng) for _ in range(self.config.random_samples)]

            rank2 = rank4 = 0
            normal_form_ok = vanishing_ok = split_ok = extremal_ok = True
            coherence_ok = frobenius_ok = True
            with Halo(text=f"Normal forms over F_{q}...", spinner="dots", stream=sys.stderr):
                for A in matrices:
                    try:
                        G, canonical = symplectic_normal_form(A)
                    except GeometryError as e:
                        logging.warning(f"Normal form of {A} over F_{q} failed: {e}")
                        normal_form_ok = False
                        continue
                    normal_form_ok &= congruent(A, G) == canonical and G.rank() == 4
                    frobenius_ok &= frobenius_matrix_check(G)
                    coherence_ok &= coordinate_change_coherent(A, G)

                    result = rank_classify(A)
                    vanishing_ok &= result.N == theta(q, 3)
                    if result.kind is RankClass.RANK2_SPLIT:
                        rank2 += 1
                        split_ok &= result.consistent
                    else:
                        rank4 += 1
                        extremal_ok &= result.consistent

            record = AltformRecord(
                q=q,
                exhaustive=exhaustive,
                matrices_checked=len(matrices),
                rank2=rank2,
                rank4=rank4,
                normal_form_ok=normal_form_ok,
                vanishing_ok=vanishing_ok,
                split_ok=split_ok,
                extremal_ok=extremal_ok,
                coherence_ok=coherence_ok,
                frobenius_ok=frobenius_ok,
            )
            if not record.passed:
                logging.warning(f"Alternating-form audit failed at q={q}")
            return record
        except Exception as e:
            reraise_domain(e)
