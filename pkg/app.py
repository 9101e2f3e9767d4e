import sys
import argparse
from typing import Any, Dict, List, Optional
from src.logger import logging
from src.constants import CHECK_BOUNDS, CHECK_SECTIONS
from src.components.altform import (
    parse_alternating,
    rank_classify,
    surface_from_alternating,
    symplectic_normal_form,
)
from src.components.catalog import elementary_bound, sziklai_bound
from src.components.quadric_census import QuadricCensus
from src.components.sections import count_points
from src.components.surface_audit import SurfaceAudit
from src.core.gf import field_of_order, render_code
from src.core.poly import fq_linear_components, parse_form, render_form
from src.entity.config_entity import AuditConfig, BudgetConfig, is_prime_power
from src.exception import ConfigError, GeometryError, MyException
from src.pipeline.audit_pipeline import run_audit
from src.utils.main_utils import dump_json, save_as_json

EXIT_OK: int = 0
EXIT_FAILED: int = 1
EXIT_ERROR: int = 2


def _field(q: int):
    if not is_prime_power(q):
        raise ConfigError(f"q={q} is not a prime power")
    return field_of_order(q, BudgetConfig.from_defaults())


def _emit(data: Dict[str, Any], out: Optional[str]) -> None:
    if out:
        save_as_json(data, out)
        logging.info(f"Wrote {out}")
    else:
        print(dump_json(data))


def cmd_run(args: argparse.Namespace) -> int:
    config = AuditConfig.from_json_file(args.config)
    if args.out:
        config.output_path = args.out
    report = run_audit(config)
    if not config.output_path:
        print(dump_json(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_count(args: argparse.Namespace) -> int:
    ctx = _field(args.q)
    f = parse_form(args.poly, ctx)
    N = count_points(f)
    data = {"q": args.q, "form": render_form(f), "nvars": f.nvars, "degree": f.degree, "N": N}
    if not fq_linear_components(f):
        bound = elementary_bound(f.degree, args.q) if f.nvars == 4 else sziklai_bound(f.degree, args.q)
        data.update(bound=bound, attains=N == bound)
    _emit(data, args.out)
    return EXIT_OK


def cmd_sections(args: argparse.Namespace) -> int:
    config = AuditConfig(
        q_list=[args.q],
        surfaces=[args.surface],
        checks=[CHECK_BOUNDS, CHECK_SECTIONS],
        budget=BudgetConfig.from_defaults(),
        workers=args.workers,
    )
    record = SurfaceAudit(config).initiate_surface_audit(args.q, args.surface)
    _emit(record.to_dict(), args.out)
    return EXIT_OK if record.passed else EXIT_FAILED


def cmd_census(args: argparse.Namespace) -> int:
    record = QuadricCensus(BudgetConfig.from_defaults()).initiate_quadric_census(args.q)
    _emit(record.to_dict(), args.out)
    return EXIT_OK if record.passed else EXIT_FAILED


def cmd_normalform(args: argparse.Namespace) -> int:
    ctx = _field(args.q)
    A = parse_alternating(ctx, args.alt)
    G, canonical = symplectic_normal_form(A)
    result = rank_classify(A)
    data = {
        "q": args.q,
        "matrix": str(A),
        "G": [[render_code(ctx, x) for x in row] for row in G.rows],
        "canonical": str(canonical),
        "rank": result.rank,
        "class": result.kind.value,
        "surface": render_form(surface_from_alternating(A)),
        "linear_components": result.linear_components,
        "N": result.N,
        "consistent": result.consistent,
    }
    _emit(data, args.out)
    return EXIT_OK if result.consistent else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="audit",
        description="Exhaustive verification of surfaces attaining the elementary point-count bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the audit described by a JSON configuration")
    run.add_argument("--config", required=True)
    run.set_defaults(handler=cmd_run)

    count = sub.add_parser("count", help="count the rational points of a form")
    count.add_argument("--q", type=int, required=True)
    count.add_argument("--poly", required=True)
    count.set_defaults(handler=cmd_count)

    sections = sub.add_parser("sections", help="plane-section census of a surface")
    sections.add_argument("--q", type=int, required=True)
    sections.add_argument("--surface", required=True)
    sections.add_argument("--workers", type=int, default=1)
    sections.set_defaults(handler=cmd_sections)

    census = sub.add_parser("census", help="census of quadric surfaces, q in {2, 3}")
    census.add_argument("--q", type=int, required=True)
    census.set_defaults(handler=cmd_census)

    normalform = sub.add_parser("normalform", help="symplectic normal form of an alternating matrix")
    normalform.add_argument("--q", type=int, required=True)
    normalform.add_argument("--alt", required=True)
    normalform.set_defaults(handler=cmd_normalform)

    for p in (run, count, sections, census, normalform):
        p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except GeometryError as e:
        logging.error(f"{type(e).__name__}: {e}")
        print(dump_json({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_ERROR
    except MyException as e:
        logging.error(str(e))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
