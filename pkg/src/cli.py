"""
Command line front end.

    python -m src.cli transform --kind super --catalog example1_A --step 1 --count 40 --exact
    python -m src.cli check --prop dirconvex --catalog product_minus_one --n 2 --step 0.5 --count 6
    python -m src.cli verify example1 --step 1 --count 40 --exact
    python -m src.cli serve --port 8000

Exit codes: 0 success, 1 usage or input error, 2 transform flagged as
divergent, 3 property fails, 4 scenario inconsistent.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from src import config
from src.schemas import check_report_model, closure_result_model, scenario_model
from src.services.catalog import parse_param_flags
from src.services.funcspec import FuncSpec, describe
from src.services.grid import sample
from src.services.props import PROPERTIES, run_check
from src.services.report_builder import check_summary_line, report_docx
from src.services.theorems import INCONSISTENT, SCENARIOS, reproduce_example1, run_scenario, summary_rows
from src.services.transforms import KINDS, transform_with_refinement
from src.utils.errors import AddilopeError
from src.utils.filename import check_json_name, level_csv_name, result_json_name, scenario_json_name
from src.utils.serialization import write_dict_csv, write_grid_csv
from src.utils.validation import build_grid, load_pl_document, require_exact_admissible, resolve_function

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENT = 2
EXIT_FAILS = 3
EXIT_INCONSISTENT = 4


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 means divergence here."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=1, help="Arity (default 1)")
    parser.add_argument("--step", default=None, help="Grid step, one value or one per axis: 0.5 or 0.5,0.25")
    parser.add_argument("--count", default=None, help="Grid steps per axis, one value or one per axis: 8 or 4,8")
    parser.add_argument("--exact", action="store_true", help="Rational arithmetic")
    parser.add_argument("--out", type=Path, default=None, help=f"Output directory (default {config.OUTPUT_DIR})")


def _add_function_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fn", help="Expression in x1..xn")
    parser.add_argument("--pl", type=Path, help="Piecewise-linear JSON spec file")
    parser.add_argument("--catalog", help="Catalog name, e.g. power(2) or lifted(example1_A)")
    parser.add_argument("--param", action="append", default=[], help="Catalog parameter name=value (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="addilope", description=__doc__.split("\n\n")[0].strip())
    commands = parser.add_subparsers(dest="command", required=True)

    transform = commands.add_parser("transform", help="Super-/sub-additive closure with refinement")
    transform.add_argument("--kind", choices=KINDS, required=True)
    transform.add_argument("--levels", type=int, default=1)
    _add_function_flags(transform)
    _add_grid_flags(transform)

    check = commands.add_parser("check", help="Run a property checker")
    check.add_argument("--prop", choices=PROPERTIES, required=True)
    check.add_argument("--strict", action="store_true")
    check.add_argument("--tau", type=float, default=None, help="Tolerance override")
    check.add_argument("--ray", default="axis:1", help="axis:i or diagonal (ratio property)")
    _add_function_flags(check)
    _add_grid_flags(check)

    verify = commands.add_parser("verify", help="Run a theorem scenario")
    verify.add_argument("scenario", choices=SCENARIOS)
    verify.add_argument("--levels", type=int, default=3)
    verify.add_argument("--tau", type=float, default=None)
    verify.add_argument("--f", dest="f_expr", help="Expression for f (screen)")
    verify.add_argument("--g", dest="g_expr", help="Expression for g (screen)")
    verify.add_argument("--f-catalog", help="Catalog name for f (screen)")
    verify.add_argument("--g-catalog", help="Catalog name for g (screen)")
    verify.add_argument("--lift-extent", type=int, default=24, help="Box side for the lifted example grid")
    verify.add_argument("--docx", type=Path, help="Also write the report as DOCX")
    verify.add_argument("--summary", type=Path, help="Also write a one-row CSV summary")
    _add_function_flags(verify)
    _add_grid_flags(verify)

    serve = commands.add_parser("serve", help="Start the HTTP service")
    serve.add_argument("--host", default="0.0.0.0")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _out_dir(args: argparse.Namespace) -> Path:
    return args.out if args.out is not None else config.OUTPUT_DIR


def _function(args: argparse.Namespace) -> FuncSpec:
    pl = None
    if args.pl is not None:
        if not args.pl.exists():
            raise AddilopeError(f"PL file not found: {args.pl}")
        pl = load_pl_document(args.pl.read_bytes())
    return resolve_function(
        args.n,
        expression=args.fn,
        catalog=args.catalog,
        params=parse_param_flags(args.param),
        pl=pl,
    )


def _label(args: argparse.Namespace) -> str:
    if args.catalog:
        return args.catalog
    if args.pl is not None:
        return args.pl.stem
    return args.fn or "function"


def _grid(args: argparse.Namespace):
    return build_grid(args.n, args.step or "1", args.count or "8")


def _write_json(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


def cmd_transform(args: argparse.Namespace) -> int:
    fn = _function(args)
    if args.exact:
        require_exact_admissible(fn)
    spec = _grid(args)
    label = _label(args)
    result = transform_with_refinement(fn, spec, args.levels, args.kind, exact=args.exact, label=describe(fn))

    out = _out_dir(args)
    column = "Astar" if args.kind == "super" else "Asub"
    for number, level in enumerate(result.levels, start=1):
        write_grid_csv(out / level_csv_name(label, args.kind, number), {"A": level.input, column: level.output})
    document = closure_result_model(result).model_dump_json(indent=2)
    _write_json(out / result_json_name(label, args.kind), document)
    print(document)
    if result.divergence_flag:
        logger.warning("Transform estimate is unbounded under refinement")
        return EXIT_DIVERGENT
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    fn = _function(args)
    if args.exact:
        require_exact_admissible(fn)
    grid_fn = sample(fn, _grid(args), exact=args.exact)
    report = run_check(grid_fn, args.prop, strict=args.strict, tau=args.tau, ray=args.ray)
    model = check_report_model(report)
    document = model.model_dump_json(indent=2)
    _write_json(_out_dir(args) / check_json_name(_label(args), args.prop), document)
    print(document)
    logger.info(check_summary_line(model))
    return EXIT_OK if report.holds else EXIT_FAILS


def _screen_source(args: argparse.Namespace, expression: Optional[str], catalog: Optional[str], name: str) -> FuncSpec:
    if expression is None and catalog is None:
        raise AddilopeError(f"Scenario 'screen' needs --{name} or --{name}-catalog")
    return resolve_function(args.n, expression=expression, catalog=catalog)


def cmd_verify(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    if args.scenario == "example1":
        report = reproduce_example1(
            args.step or 1,
            int(args.count) if args.count else None,
            lift_extent=args.lift_extent,
            exact=args.exact,
        )
        write_grid_csv(out / "example1_levels.csv", report.grids)
    elif args.scenario == "lemmas":
        spec = build_grid(1, args.step, args.count) if args.step and args.count else None
        report = run_scenario("lemmas", spec=spec, exact=args.exact)
    elif args.scenario == "screen":
        f = _screen_source(args, args.f_expr, args.f_catalog, "f")
        g = _screen_source(args, args.g_expr, args.g_catalog, "g")
        if args.exact:
            require_exact_admissible(f)
            require_exact_admissible(g)
        report = run_scenario("screen", f=f, g=g, spec=_grid(args), exact=args.exact, tau=args.tau)
    else:
        fn = _function(args)
        if args.exact:
            require_exact_admissible(fn)
        report = run_scenario(args.scenario, fn=fn, spec=_grid(args), levels=args.levels, exact=args.exact, tau=args.tau)

    model = scenario_model(report)
    document = model.model_dump_json(indent=2)
    _write_json(out / scenario_json_name(args.scenario), document)
    print(document)
    if args.docx is not None:
        args.docx.parent.mkdir(parents=True, exist_ok=True)
        args.docx.write_bytes(report_docx(model))
        logger.info(f"Wrote {args.docx}")
    if args.summary is not None:
        write_dict_csv(args.summary, summary_rows([report]))
    return EXIT_INCONSISTENT if report.verdict == INCONSISTENT else EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("src.main:app", host=args.host, port=args.port, log_level=config.LOG_LEVEL.lower())
    return EXIT_OK


COMMANDS = {
    "transform": cmd_transform,
    "check": cmd_check,
    "verify": cmd_verify,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=config.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except AddilopeError as e:
        logger.warning(f"Input error: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {str(e)}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
