from fractions import Fraction
from typing import Dict
from src.logger import logging
from src.components.catalog import (
    CatalogId,
    admissible_degrees,
    elementary_bound_meaningful,
    sziklai_degree_admissible,
)
from src.components.sections import exceptional_exclusion
from src.core.gf import exact_sqrt
from src.entity.artifact_entity import DegreeGateRecord
from src.exception import reraise_domain


def x0_expression(d: int, q: int) -> Fraction:
    """
    The number of lines missing a Sziklai-extremal curve of degree d,
    -(q/d)(d - (sqrt(q)+1))(d + sqrt(q) - 1) = q(q - (d-1)^2)/d, exactly.
    """
    return Fraction(q * (q - (d - 1) ** 2), d)


def catalog_degrees(q: int) -> Dict[str, int]:
    degrees = {CatalogId.HYPERBOLIC.value: 2, CatalogId.FULLSPACE.value: q + 1}
    if exact_sqrt(q) is not None:
        degrees[CatalogId.HERMITIAN.value] = CatalogId.HERMITIAN.degree(q)
    return degrees


def degree_gate_check(q: int) -> DegreeGateRecord:
    """
    Confirm the catalog degrees are admissible at q and that the line-count
    expression is nonnegative exactly for d <= sqrt(q)+1.

    Args:
        q (int): Field order.

    Returns:
        DegreeGateRecord: Degrees, exact expressions and the verdicts.
    """
    admissible = sorted(admissible_degrees(q))
    degrees = catalog_degrees(q)
    expressions = {
        d: x0_expression(d, q) for d in range(2, q + 3) if elementary_bound_meaningful(d, q)
    }
    sign_consistent = all(
        (value >= 0) == ((d - 1) ** 2 <= q) for d, value in expressions.items()
    )

    exceptional = None
    exceptional_ok = True
    if q == 4:
        exclusion = exceptional_exclusion()
        exceptional = exclusion.to_dict()
        exceptional_ok = exclusion.passed

    return DegreeGateRecord(
        q=q,
        admissible=admissible,
        catalog_degrees=degrees,
        catalog_ok=all(d in admissible for d in degrees.values()),
        x0_expressions={d: str(value) for d, value in expressions.items()},
        sign_consistent=sign_consistent,
        sziklai_admissible=[d for d in range(1, q + 3) if sziklai_degree_admissible(d, q)],
        exceptional=exceptional,
        exceptional_ok=exceptional_ok,
    )


class DegreeGate:
    """Pipeline component for the admissible-degree check."""

    def initiate_degree_gate(self, q: int) -> DegreeGateRecord:
        try:
            logging.info(f"Entered initiate_degree_gate for q={q}")
            record = degree_gate_check(q)
            if not record.passed:
                logging.warning(f"Degree gate failed at q={q}")
            return record
        except Exception as e:
            reraise_domain(e)
