"""
The `fk3` command line:

    fk3 k3 enumerate
    fk3 fk3 enumerate | fk3 fk3 brute --dmax N | fk3 fk3 extra
    fk3 analyze SPEC | fk3 check SPEC | fk3 singularities SPEC

with `--format csv|json|md`, `--out PATH`, `--jobs N`, `--verify` and `-v` on every subcommand, plus
`--columns a,b,...` on the ones that emit a catalog. Exit codes: 0 success, 1 the input fails the math, 2 a cross-check
failed, 3 usage error.
"""
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from fk3census.catalog import CatalogFormat, catalog_fingerprint, emit_catalog, emit_strata, parse_weight_spec
from fk3census.census import (
    aanalyze_families,
    abrute_force_census,
    aenumerate_extra_families,
    aenumerate_fk3_fourfolds,
    aenumerate_k3_records,
    aenumerate_k3_surfaces,
    analyze_family,
    analyze_k3,
    condition_report,
    verify_brute_force,
    verify_extra_families,
    verify_fk3_census,
    verify_k3_census,
)
from fk3census.config import CensusConfig
from fk3census.errors import (
    ConditionFailedError,
    CrossCheckError,
    DiagnosticError,
    NoTangentVariableError,
    UsageError,
)
from fk3census.quasismooth import is_quasi_smooth_not_cone
from fk3census.singularity import classify_hypersurface
from fk3census.storage.families_impl import InMemoryFamilyStore
from fk3census.weights import canonical_degree

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CROSS_CHECK_FAILED = 2
EXIT_USAGE = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _parse_columns(text: str) -> tuple[str, ...]:
    columns = tuple(column.strip() for column in text.split(","))
    if not all(columns):
        raise argparse.ArgumentTypeError(f"empty column name in {text!r}")
    return columns


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[fmt.value for fmt in CatalogFormat], default=CatalogFormat.CSV.value)
    common.add_argument("--out", type=Path, default=None, help="output file (default: standard output)")
    common.add_argument("--jobs", type=int, default=None, help="number of worker processes")
    common.add_argument("--verify", action="store_true", help="run the cross-checks of the census")
    common.add_argument("-v", "--verbose", action="store_true")
    catalog = _ArgumentParser(add_help=False, parents=[common])
    catalog.add_argument(
        "--columns",
        type=_parse_columns,
        default=None,
        help="comma separated catalog columns to emit, in this order (default: all of them)",
    )

    parser = _ArgumentParser(prog="fk3", description="Census of weighted K3 surfaces and FK3 fourfolds.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    k3_parser = commands.add_parser("k3", help="weighted K3 surfaces")
    k3_actions = k3_parser.add_subparsers(dest="action", required=True, parser_class=_ArgumentParser)
    k3_actions.add_parser("enumerate", parents=[catalog], help="the K3 census")

    fk3_parser = commands.add_parser("fk3", help="FK3 fourfolds")
    fk3_actions = fk3_parser.add_subparsers(dest="action", required=True, parser_class=_ArgumentParser)
    fk3_actions.add_parser("enumerate", parents=[catalog], help="the FK3 census built from the K3 census")
    brute_parser = fk3_actions.add_parser("brute", parents=[catalog], help="the brute force FK3 sweep")
    brute_parser.add_argument("--dmax", type=int, required=True)
    fk3_actions.add_parser("extra", parents=[catalog], help="the FK3 families with a 2-dimensional singular locus")

    for name, parent, help_text in (
        ("analyze", catalog, "analyze a single weight system"),
        (
            "check",
            common,
            "report the conditions a weight system passes; a quasi-smoothness failure names the first failing index"
            " set in (size, lexicographic) order, e.g. I={4} for 1,1,1,1,5,5:7 although I={4,5} fails as well",
        ),
        ("singularities", common, "the orbifold strata of a weight system"),
    ):
        command_parser = commands.add_parser(name, parents=[parent], help=help_text)
        command_parser.add_argument("spec", help="weights and degree, e.g. 1,1,1,2,3,4:6")
    return parser


def _write_output(data: bytes, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        out.write_bytes(data)


def _report_verification(passed: list[str], data: bytes) -> None:
    print(f"verified: {', '.join(passed)}", file=sys.stderr)
    print(f"fingerprint: {catalog_fingerprint(data)}", file=sys.stderr)


async def _run_k3_enumerate(args: argparse.Namespace, config: CensusConfig) -> int:
    records = await aenumerate_k3_records(config)
    data = emit_catalog(records, CatalogFormat(args.format), columns=args.columns)
    passed = verify_k3_census(records, config) if args.verify else []
    _write_output(data, args.out)
    if args.verify:
        _report_verification(passed, data)
    return EXIT_OK


async def _run_fk3_enumerate(args: argparse.Namespace, config: CensusConfig) -> int:
    store = InMemoryFamilyStore()
    k3_surfaces = await aenumerate_k3_surfaces(config)
    records = await aenumerate_fk3_fourfolds(config, store=store, k3_surfaces=k3_surfaces)
    data = emit_catalog(records, CatalogFormat(args.format), columns=args.columns)
    passed = []
    if args.verify:
        passed += verify_fk3_census(records, k3_surfaces, config)
        brute_force = await abrute_force_census(max(k3.degree for k3 in k3_surfaces), jobs=config.jobs)
        passed += verify_brute_force(records, brute_force)
    _write_output(data, args.out)
    if args.verify:
        _report_verification(passed, data)
    return EXIT_OK


async def _run_fk3_brute(args: argparse.Namespace, config: CensusConfig) -> int:
    if args.dmax < 1:
        raise UsageError(f"--dmax must be positive, got {args.dmax}")
    store = InMemoryFamilyStore()
    brute_force = await abrute_force_census(args.dmax, jobs=config.jobs)
    records = await aanalyze_families(brute_force, store, jobs=config.jobs)
    data = emit_catalog(records, CatalogFormat(args.format), columns=args.columns)
    passed = []
    if args.verify:
        constructed = await aenumerate_fk3_fourfolds(config, store=store)
        passed += verify_brute_force([record for record in constructed if record.ws.degree <= args.dmax], brute_force)
    _write_output(data, args.out)
    if args.verify:
        _report_verification(passed, data)
    return EXIT_OK


async def _run_fk3_extra(args: argparse.Namespace, config: CensusConfig) -> int:
    records = await aenumerate_extra_families(config)
    data = emit_catalog(records, CatalogFormat(args.format), columns=args.columns)
    passed = verify_extra_families(records, config) if args.verify else []
    _write_output(data, args.out)
    if args.verify:
        _report_verification(passed, data)
    return EXIT_OK


async def _run_analyze(args: argparse.Namespace, _config: CensusConfig) -> int:
    ws = parse_weight_spec(args.spec)
    if ws.n_weights == 4:
        record = analyze_k3(ws)
    else:
        record = analyze_family(ws)
    _write_output(emit_catalog([record], CatalogFormat(args.format), columns=args.columns), args.out)
    return EXIT_OK


async def _run_check(args: argparse.Namespace, _config: CensusConfig) -> int:
    ws = parse_weight_spec(args.spec)
    verdict = is_quasi_smooth_not_cone(ws)
    lines = [f"weight system: {ws.render()}"]
    all_passed = True
    for name, passed in condition_report(ws):
        line = f"{name}: {'pass' if passed else 'FAIL'}"
        if name == "quasi_smooth" and not passed:
            line += f" ({verdict.witness})"
        lines.append(line)
        all_passed = all_passed and passed
    lines.append(f"fano_index: {-canonical_degree(ws)}")
    _write_output(("\n".join(lines) + "\n").encode("utf-8"), args.out)
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


async def _run_singularities(args: argparse.Namespace, _config: CensusConfig) -> int:
    ws = parse_weight_spec(args.spec)
    verdict = is_quasi_smooth_not_cone(ws)
    if not verdict:
        raise ConditionFailedError(f"{ws} is not quasi-smooth: {verdict.witness}", condition="quasi_smooth")
    _sing_class, strata = classify_hypersurface(ws)
    _write_output(emit_strata(strata, CatalogFormat(args.format)), args.out)
    return EXIT_OK


_HANDLERS = {
    ("k3", "enumerate"): _run_k3_enumerate,
    ("fk3", "enumerate"): _run_fk3_enumerate,
    ("fk3", "brute"): _run_fk3_brute,
    ("fk3", "extra"): _run_fk3_extra,
    ("analyze", None): _run_analyze,
    ("check", None): _run_check,
    ("singularities", None): _run_singularities,
}


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return its exit code. Diagnostics go to standard error.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc.generate_diagnostic()}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler = _HANDLERS[(args.command, getattr(args, "action", None))]
    try:
        config = CensusConfig.from_env(jobs=args.jobs)
        return asyncio.run(handler(args, config))
    except ValidationError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CrossCheckError as exc:
        print(f"cross-check failed: {exc.generate_diagnostic()}", file=sys.stderr)
        return EXIT_CROSS_CHECK_FAILED
    except (ConditionFailedError, NoTangentVariableError) as exc:
        print(f"error: {exc.generate_diagnostic()}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except DiagnosticError as exc:
        print(f"usage error: {exc.generate_diagnostic()}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())
