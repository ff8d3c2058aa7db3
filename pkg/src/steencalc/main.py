import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

from .arith import FqField, PrimeModulus, factor_kummer, kummer_roots
from .config import Config
from .errors import EXIT_OK, EXIT_VIOLATION, SteencalcError
from .expression import parse_expression
from .graded_mup import deformation_check, deformation_report, kummer_parameter, torsor_check
from .milnor_k import (
    SymbolChain,
    anticommute_check,
    divisor_map,
    parse_rational,
    residues,
)
from .report_log import ReportLog
from .steenrod import (
    VarietySpec,
    steenrod_coh_k,
    steenrod_coh_total,
    steenrod_hom_k,
    steenrod_hom_total,
)
from .suite_runner import SuiteRunner
from .suites.suite_factory import SuiteFactory
from .variety_io import load_algebra, load_variety, variety_from_preset

_LOGGER = logging.getLogger(__name__)

_OPS = ("total", "coh-k", "hom-total", "hom-k")


def _emit(data: Any) -> None:
    print(json.dumps(data, sort_keys=True))


def _variety(args: argparse.Namespace) -> VarietySpec:
    if args.variety:
        return load_variety(args.variety)
    return variety_from_preset(args.preset, PrimeModulus(args.prime))


def steenrod_eval(args: argparse.Namespace, _config: Config) -> int:
    """S_X or S^X of a class, in total or one graded piece."""
    x = _variety(args)
    gamma = parse_expression(args.class_expr, x.ring)
    if args.op == "total":
        value = steenrod_coh_total(x, gamma)
    elif args.op == "hom-total":
        value = steenrod_hom_total(x, gamma)
    elif args.op == "coh-k":
        value = steenrod_coh_k(x, gamma, args.k)
    else:
        value = steenrod_hom_k(x, gamma, args.k)
    _emit({"result": value.to_json()})
    return EXIT_OK


def steenrod_verify(args: argparse.Namespace, config: Config) -> int:
    """Run one suite, or all of them, and report."""
    config.override_seed(args.seed)
    runner = SuiteRunner(config)
    if args.suite == "all":
        reports = runner.run_all()
        _emit({"reports": [r.to_json() for r in reports]})
        return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION
    report = runner.run(args.suite)
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def torsor_command(args: argparse.Namespace, _config: Config) -> int:
    algebra = load_algebra(args.algebra)
    if args.torsor_command == "check":
        conditions = torsor_check(algebra)
        result: dict[str, Any] = {"conditions": conditions.to_json(), "torsor": conditions.all_true}
        if conditions.all_true and algebra.component_dim(0) == 1:
            result["kummer_parameter"] = list(kummer_parameter(algebra).character)
        _emit({"result": result})
        return EXIT_VIOLATION if conditions.mixed else EXIT_OK
    holds = deformation_check(algebra, args.kmax)
    report = deformation_report(algebra, args.kmax)
    _emit({"result": {"identity": holds, "dimensions": {str(k): v for k, v in report.items()}}})
    return EXIT_OK if holds else EXIT_VIOLATION


def kummer_factor(args: argparse.Namespace, _config: Config) -> int:
    """Factor t^p - a over F_q."""
    field = FqField(args.q)
    modulus = PrimeModulus(args.p)
    a = field.element(args.a)
    factors = factor_kummer(a, modulus)
    roots = [int(r) for r in kummer_roots(a, modulus)]
    _emit({"result": [list(f) for f in factors], "roots": roots})
    return EXIT_OK


def kcomplex_check(args: argparse.Namespace, _config: Config) -> int:
    """Residues of {a, f} and the anticommutation of d and alpha."""
    field = FqField(args.q)
    modulus = PrimeModulus(args.p)
    a = parse_rational(args.a, field)
    f = parse_rational(args.f, field)
    holds = anticommute_check(a, f, modulus)
    result = {
        "anticommute": holds,
        "residues": residues(SymbolChain.symbol(modulus, a, f)).to_json(),
        "divisor": divisor_map(f, modulus).to_json(),
    }
    _emit({"result": result})
    return EXIT_OK if holds else EXIT_VIOLATION


def history(args: argparse.Namespace, config: Config) -> int:
    """Print stored suite runs as JSON or CSV."""
    reports = ReportLog(config.report_db or "steencalc_history.db").get_reports()
    if args.format == "json":
        _emit(reports)
        return EXIT_OK
    output = io.StringIO()
    writer = csv.writer(output)
    writer.writerow(["timestamp", "suite", "seed", "cases", "failures", "wall_time"])
    for r in reports:
        writer.writerow(
            [r["timestamp"], r["suite"], r["seed"], r["cases"], r["failures"], r["wall_time"]]
        )
    sys.stdout.write(output.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steencalc", description="Exact mod-p Steenrod operations and torsor checks."
    )
    parser.add_argument("--config", help="YAML settings file")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--workers", type=int, help="worker processes for suites")
    commands = parser.add_subparsers(dest="command", required=True)

    steenrod = commands.add_parser("steenrod", help="Steenrod operations on Chow rings")
    steenrod_commands = steenrod.add_subparsers(dest="steenrod_command", required=True)
    evaluate = steenrod_commands.add_parser("eval", help="evaluate S_X or S^X on a class")
    source = evaluate.add_mutually_exclusive_group(required=True)
    source.add_argument("--variety", help="variety JSON file")
    source.add_argument("--preset", help='ring preset such as "P3" or "P1xP2"')
    evaluate.add_argument("--prime", type=int, default=2, help="p for --preset")
    evaluate.add_argument("--class", dest="class_expr", required=True, help="class expression")
    evaluate.add_argument("--op", choices=_OPS, default="total")
    evaluate.add_argument("--k", type=int, default=0)
    evaluate.set_defaults(handler=steenrod_eval)
    verify = steenrod_commands.add_parser("verify", help="run a property suite")
    verify.add_argument(
        "--suite", required=True, choices=[*SuiteFactory.get_supported_suites(), "all"]
    )
    verify.add_argument("--seed", type=int)
    verify.set_defaults(handler=steenrod_verify)

    torsor = commands.add_parser("torsor", help="graded algebras and torsor conditions")
    torsor_commands = torsor.add_subparsers(dest="torsor_command", required=True)
    check = torsor_commands.add_parser("check", help="evaluate the torsor conditions")
    check.add_argument("--algebra", required=True, help="algebra JSON file")
    check.set_defaults(handler=torsor_command)
    deform = torsor_commands.add_parser("deform", help="check the deformation identity")
    deform.add_argument("--algebra", required=True, help="algebra JSON file")
    deform.add_argument("--kmax", type=int, default=4)
    deform.set_defaults(handler=torsor_command)

    kummer = commands.add_parser("kummer", help="Kummer extensions of F_q")
    kummer_commands = kummer.add_subparsers(dest="kummer_command", required=True)
    factor = kummer_commands.add_parser("factor", help="factor t^p - a over F_q")
    factor.add_argument("--q", type=int, required=True)
    factor.add_argument("--p", type=int, required=True)
    factor.add_argument("--a", type=int, required=True)
    factor.set_defaults(handler=kummer_factor)

    kcomplex = commands.add_parser("kcomplex", help="Milnor K residues on P^1")
    kcomplex_commands = kcomplex.add_subparsers(dest="kcomplex_command", required=True)
    kcheck = kcomplex_commands.add_parser("check", help="check d alpha + alpha d = 0")
    kcheck.add_argument("--q", type=int, required=True)
    kcheck.add_argument("--p", type=int, required=True)
    kcheck.add_argument("--a", required=True, help="rational function in t")
    kcheck.add_argument("--f", required=True, help="rational function in t")
    kcheck.set_defaults(handler=kcomplex_check)

    hist = commands.add_parser("history", help="stored suite runs")
    hist.add_argument("--format", choices=("json", "csv"), default="json")
    hist.set_defaults(handler=history)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    config = Config(args.config)
    if args.workers is not None:
        config.workers = args.workers
    level = logging.DEBUG if args.verbose else getattr(logging, config.log_level, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr)
    try:
        return int(args.handler(args, config))
    except SteencalcError as exc:
        _LOGGER.debug("command failed", exc_info=True)
        _emit({"error": str(exc), "type": type(exc).__name__})
        return exc.exit_code


def main() -> None:
    """Entrypoint for the steencalc command line."""
    sys.exit(run())


if __name__ == "__main__":
    main()
