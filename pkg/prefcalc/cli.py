"""
Command-line front end

    prefcalc parse EXPR
    prefcalc eval --model FILE EXPR
    prefcalc cond --model FILE --given EXPR EXPR
    prefcalc identities --attrs N --levels K --trials T
    prefcalc verify --model FILE --trials T
    prefcalc grid --model FILE --out FILE
    prefcalc axioms

Exit codes: 0 success, 1 a check failed or a conditional is undefined,
2 usage, file, schema, parse or validation errors.
"""

import argparse
import logging
import sys
from typing import Callable, Optional, Sequence

from prefcalc import __version__
from prefcalc.algebra.normalize import simplify
from prefcalc.axioms.checks import run_axiom_suite
from prefcalc.errors import (
    ConfigError,
    ModelValidationError,
    ParseError,
    PrefCalcError,
    UndefinedConditionalError,
)
from prefcalc.storage.grid_csv import export_grid_csv
from prefcalc.storage.model_file import load_model
from prefcalc.syntax.formatter import format_expr
from prefcalc.syntax.parser import parse
from prefcalc.utility.engine import eval_utility
from prefcalc.utility.inference import conditional_utility
from prefcalc.utils.config import config
from prefcalc.utils.logging_setup import setup_logging
from prefcalc.utils.validators import InputValidator
from prefcalc.verification.identities import run_identity_suite
from prefcalc.verification.oracle_suite import verify_model, verify_random_models

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def format_number(value: float) -> str:
    """12 significant digits"""
    return f"{value:.12g}"


class UsageError(Exception):
    """Invalid command-line parameters"""


def _seed(args: argparse.Namespace) -> Optional[int]:
    return args.seed if args.seed is not None else config.seed


def _validate(**params) -> None:
    is_valid, error = InputValidator.validate_suite_parameters(**params)
    if not is_valid:
        raise UsageError(error)


def _cmd_parse(args: argparse.Namespace) -> int:
    e = parse(args.expression)
    print(format_expr(e if args.raw else simplify(e)))
    return EXIT_OK


def _expression_argument(args: argparse.Namespace) -> str:
    if args.expr is not None and args.expression is not None:
        raise UsageError("give the expression either positionally or with --expr, not both")
    text = args.expr if args.expr is not None else args.expression
    if text is None:
        raise UsageError("an expression is required")
    return text


def _cmd_eval(args: argparse.Namespace) -> int:
    e = parse(_expression_argument(args))
    model = load_model(args.model)
    print(format_number(eval_utility(e, model)))
    return EXIT_OK


def _cmd_cond(args: argparse.Namespace) -> int:
    a = parse(_expression_argument(args))
    given = parse(args.given)
    model = load_model(args.model)
    print(format_number(conditional_utility(a, given, model)))
    return EXIT_OK


def _cmd_identities(args: argparse.Namespace) -> int:
    _validate(attrs=args.attrs, levels=args.levels, trials=args.trials)
    result = run_identity_suite(args.attrs, args.levels, args.trials, _seed(args))
    print(f"identities: {result.checks} checks, {len(result.failures)} failure(s)")
    for failure in result.failures[:10]:
        print(f"  {failure.identity} [{failure.kind}]: {' vs '.join(failure.forms)}")
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def _cmd_verify(args: argparse.Namespace) -> int:
    _validate(trials=args.trials, depth=args.depth)
    if args.model is not None:
        result = verify_model(load_model(args.model), args.trials, args.depth, _seed(args))
    else:
        _validate(trials=args.models)
        result = verify_random_models(args.models, args.trials, args.depth, seed=_seed(args))
    print(
        f"verify: {result.expressions} expressions over {result.models} model(s), "
        f"max relative error {result.max_error:.3e} (tolerance {result.tolerance:.0e})"
    )
    for mismatch in result.mismatches[:10]:
        print(f"  {mismatch.expression}: engine {format_number(mismatch.engine)}, "
              f"oracle {format_number(mismatch.oracle)}")
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def _cmd_grid(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    path = export_grid_csv(model, args.out)
    print(f"wrote {model.space.size} rows to {path}")
    return EXIT_OK


def _cmd_axioms(args: argparse.Namespace) -> int:
    _validate(trials=args.trials)
    reports = run_axiom_suite(_seed(args), args.trials)
    for report in reports:
        marker = "ok" if report.as_expected else "UNEXPECTED"
        print(f"[{marker}] {report.summary()}")
    return EXIT_OK if all(r.as_expected for r in reports) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefcalc",
        description="Algebra of preferences and utility inference",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=None, help="seed for random trials (overrides PREFCALC_SEED)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    for name in ("parse", "simplify"):
        p = sub.add_parser(name, help="print the canonical form of an expression")
        p.add_argument("expression")
        p.add_argument("--raw", action="store_true", help="print the parsed form without simplifying")
        p.set_defaults(handler=_cmd_parse)

    p = sub.add_parser("eval", help="utility of an expression")
    p.add_argument("--model", required=True)
    p.add_argument("--expr", default=None)
    p.add_argument("expression", nargs="?", default=None)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("cond", help="conditional utility U(EXPR | GIVEN)")
    p.add_argument("--model", required=True)
    p.add_argument("--given", required=True)
    p.add_argument("--expr", default=None)
    p.add_argument("expression", nargs="?", default=None)
    p.set_defaults(handler=_cmd_cond)

    p = sub.add_parser("identities", help="property suite for the identity table")
    p.add_argument("--attrs", type=int, default=3)
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(handler=_cmd_identities)

    p = sub.add_parser("verify", help="evaluator against the grid oracle")
    p.add_argument("--model", default=None, help="model file; random models when omitted")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--models", type=int, default=20, help="number of random models without --model")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("grid", help="export the joint utility grid as CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_grid)

    p = sub.add_parser("axioms", help="axiom checks for candidate combination rules")
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(handler=_cmd_axioms)

    return parser


def _check_config() -> None:
    is_valid, error = config.validate()
    if not is_valid:
        raise ConfigError(f"configuration error: {error}")


def _error(message: str) -> None:
    print(f"prefcalc: error: {message}", file=sys.stderr)


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        int: Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    handler: Callable[[argparse.Namespace], int] = args.handler

    try:
        _check_config()
        setup_logging("DEBUG" if args.verbose else None)
        return handler(args)
    except UndefinedConditionalError as e:
        _error(f"undefined conditional: {e}")
        return EXIT_CHECK_FAILED
    except ParseError as e:
        _error(f"parse error: {e.diagnostic}")
        return EXIT_USAGE
    except ModelValidationError as e:
        _error(str(e))
        for diagnostic in e.diagnostics:
            print(f"  {diagnostic}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        _error(str(e))
        return EXIT_USAGE
    except PrefCalcError as e:
        _error(str(e))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
