"""Command-line entry point.

Subcommands: validate, metrics, valuemap, scenario.  Exit codes:
0 success (including pass-with-warning), 2 validation failure,
3 computation error, 4 I/O or parse error.  The CIRCUFLOW_TOLERANCE
environment variable overrides the default balance tolerance for account
files that do not set one themselves.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import documents
from .accounts import MaterialFlowAccount, validate, waste_share
from .errors import CircuflowError, DocumentError, ScenarioError
from .metrics import metric_suite
from .render import (
    FORMAT_MACHINE,
    FORMAT_MARKDOWN,
    FORMAT_PLAIN,
    RenderSpec,
    render_metrics,
    render_scenario_comparison,
    render_validation,
    render_valuemap,
    svg_metrics,
    svg_valuemap,
)
from .scenarios import apply_scenario
from .valuemap import attribute_value

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3
EXIT_IO = 4

TOLERANCE_ENV_VAR = "CIRCUFLOW_TOLERANCE"


class _CliFailure(Exception):
    """Internal: message already formatted, carries the exit code."""

    def __init__(self, code: int, message: str) -> None:
        self.code = code
        self.message = message
        super().__init__(message)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _CliFailure(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from exc


def _default_tolerance() -> float | None:
    raw = os.environ.get(TOLERANCE_ENV_VAR)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise _CliFailure(
            EXIT_IO, f"{TOLERANCE_ENV_VAR} must be a number, got {raw!r}"
        ) from None
    if not 0.0 <= value <= 1.0:
        raise _CliFailure(
            EXIT_IO, f"{TOLERANCE_ENV_VAR} must be a fraction in [0, 1], got {value!r}"
        )
    return value


def _load_account(path: str) -> MaterialFlowAccount:
    try:
        return documents.parse_account(_read(path), default_tolerance=_default_tolerance())
    except DocumentError as exc:
        raise _CliFailure(EXIT_IO, f"{path}: {exc}") from exc


def _load_economy(path: str):
    try:
        return documents.parse_economy(_read(path))
    except DocumentError as exc:
        raise _CliFailure(EXIT_IO, f"{path}: {exc}") from exc


def _load_scenario(path: str):
    try:
        return documents.parse_scenario(_read(path))
    except DocumentError as exc:
        raise _CliFailure(EXIT_IO, f"{path}: {exc}") from exc


def _require_valid(path: str, account: MaterialFlowAccount) -> None:
    outcome = validate(account)
    if not outcome.ok:
        report = render_validation(outcome)
        raise _CliFailure(EXIT_VALIDATION, f"{path}: account fails validation\n{report.rstrip()}")


def _render_spec(args: argparse.Namespace) -> RenderSpec:
    try:
        return RenderSpec(
            format=args.format,
            rounding=args.round,
            include_provenance_footnotes=not args.no_footnotes,
        )
    except ValueError as exc:
        raise _CliFailure(EXIT_IO, str(exc)) from exc


def _write_svg(path: str, content: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(content)
    except OSError as exc:
        raise _CliFailure(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from exc


def _cmd_validate(args: argparse.Namespace) -> int:
    account = _load_account(args.account)
    outcome = validate(account)
    sys.stdout.write(render_validation(outcome))
    return EXIT_OK if outcome.ok else EXIT_VALIDATION


def _cmd_metrics(args: argparse.Namespace) -> int:
    account = _load_account(args.account)
    _require_valid(args.account, account)
    spec = _render_spec(args)
    report = metric_suite(account)
    sys.stdout.write(render_metrics(report, spec))
    if args.svg:
        _write_svg(args.svg, svg_metrics(report, spec))
    return EXIT_OK


def _cmd_valuemap(args: argparse.Namespace) -> int:
    account = _load_account(args.account)
    economy = _load_economy(args.economy)
    _require_valid(args.account, account)
    if economy.year != account.year:
        warnings.warn(
            f"account year {account.year} differs from economy year {economy.year}",
            UserWarning,
            stacklevel=2,
        )
    spec = _render_spec(args)
    attribution = attribute_value(economy)
    sys.stdout.write(
        render_valuemap(
            attribution, spec, account=account, services_share=economy.services_share
        )
    )
    if args.svg:
        _write_svg(args.svg, svg_valuemap(attribution, spec))
    return EXIT_OK


def _cmd_scenario(args: argparse.Namespace) -> int:
    account = _load_account(args.account)
    economy = _load_economy(args.economy)
    scenario = _load_scenario(args.scenario)
    _require_valid(args.account, account)
    spec = _render_spec(args)
    baseline_report = metric_suite(account)
    baseline_attribution = attribute_value(economy)
    result = apply_scenario(account, economy, scenario)
    sys.stdout.write(
        render_scenario_comparison(
            scenario.name,
            baseline_report,
            baseline_attribution,
            waste_share(account),
            result.report,
            result.attribution,
            waste_share(result.account),
            notes=result.notes,
            spec=spec,
        )
    )
    return EXIT_OK


def _add_render_options(parser: argparse.ArgumentParser, *, svg: bool) -> None:
    parser.add_argument(
        "--format",
        choices=(FORMAT_PLAIN, FORMAT_MARKDOWN, FORMAT_MACHINE),
        default=FORMAT_PLAIN,
        help="output format (default: plain)",
    )
    parser.add_argument(
        "--round",
        type=int,
        default=1,
        metavar="N",
        help="decimal places for percentages (default: 1)",
    )
    parser.add_argument(
        "--no-footnotes",
        action="store_true",
        help="omit provenance footnotes",
    )
    if svg:
        parser.add_argument("--svg", metavar="PATH", help="also write an SVG chart to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circuflow",
        description=(
            "Material flow accounts: circularity metrics, GDP value attribution "
            "and what-if scenarios."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check an account's mass-balance invariants")
    p_validate.add_argument("account", help="account file")
    p_validate.set_defaults(func=_cmd_validate)

    p_metrics = sub.add_parser("metrics", help="compute the circularity metric family")
    p_metrics.add_argument("account", help="account file")
    _add_render_options(p_metrics, svg=True)
    p_metrics.set_defaults(func=_cmd_metrics)

    p_valuemap = sub.add_parser("valuemap", help="attribute GDP across flow categories")
    p_valuemap.add_argument("account", help="account file")
    p_valuemap.add_argument("economy", help="economy file")
    _add_render_options(p_valuemap, svg=True)
    p_valuemap.set_defaults(func=_cmd_valuemap)

    p_scenario = sub.add_parser("scenario", help="apply a what-if scenario and compare")
    p_scenario.add_argument("account", help="account file")
    p_scenario.add_argument("economy", help="economy file")
    p_scenario.add_argument("scenario", help="scenario file")
    _add_render_options(p_scenario, svg=False)
    p_scenario.set_defaults(func=_cmd_scenario)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args)
        seen = set()
        for item in caught:
            message = str(item.message)
            if message not in seen:
                seen.add(message)
                print(f"warning: {message}", file=sys.stderr)
        return code
    except _CliFailure as failure:
        print(f"error: {failure.message}", file=sys.stderr)
        return failure.code
    except (DocumentError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except CircuflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


def console_main() -> None:  # pragma: no cover - setuptools entry point
    raise SystemExit(main())
