"""
Command-line front end.

    python -m qsphere verify --q 0.5 --shells 12
    python -m qsphere spectrum --q 1 --shells 3
    python -m qsphere bound-scan --q 0.5 --shells 8,12,16,20
    python -m qsphere limit-scan --q 0.9,0.99,0.999 --shells 10
    python -m qsphere export --op D --q 1 --shells 1

Exit codes: 0 success, 1 failed check, 2 configuration error, 3 overflow guard.
Every failure prints one JSON line {"error": ..., "detail": ...} on stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import Callable, Optional, Sequence

from qsphere.axioms import bound_scan, classical_limit_scan, run_suite, spectrum_table
from qsphere.config import FORMATS, RunConfig, load_config_file, parse_list
from qsphere.errors import ConfigError, QOverflowError, QSphereError
from qsphere.operators import OPERATOR_NAMES, build_triple, named_operator
from qsphere.reports import (
    SCAN_FIELDS,
    SPECTRUM_FIELDS,
    dumps_json,
    report_rows,
    rows_to_csv,
    scan_rows,
    spectrum_rows,
    suite_document,
    triplets_text,
    write_output,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_CONFIG = 2
EXIT_OVERFLOW = 3


class _Parser(argparse.ArgumentParser):
    """Usage errors become ConfigError so they share the single-line error format."""

    def error(self, message: str):
        raise ConfigError(message)


def _fail(code: str, detail: str) -> None:
    sys.stderr.write(json.dumps({"error": code, "detail": detail}, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="deformation parameter 0 < q <= 1 (comma-separated list for limit-scan)")
    common.add_argument("--shells", help="number of shells (comma-separated ascending list for bound-scan)")
    common.add_argument("--z-re", dest="z_re", help="real part of the Dirac scale z (default 1)")
    common.add_argument("--z-im", dest="z_im", help="imaginary part of the Dirac scale z (default 0)")
    common.add_argument("--p", help="parameter of the reality operator J (default q)")
    common.add_argument("--margin", help="interior margin in shells (default 2)")
    common.add_argument("--tol", help="relative residual tolerance (default 1e-9)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--workers", help="threads for the check fan-out (default 1)")
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")

    parser = _Parser(prog="qsphere", description="Equivariant spectral triple over the standard Podles sphere")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = commands.add_parser("verify", parents=[common], help="run every named check")
    verify.add_argument("--assert-j-equivariance", action="store_true", default=None,
                        help="assert J-equivariance even when p != q")
    commands.add_parser("spectrum", parents=[common], help="spectrum of D against +-|z|[l+1/2]")
    commands.add_parser("bound-scan", parents=[common], help="norms of [D, pi(x)] over growing truncations")
    commands.add_parser("limit-scan", parents=[common], help="deviation from the classical sphere as q -> 1")
    export = commands.add_parser("export", parents=[common], help="sparse triplets of one operator")
    export.add_argument("--op", required=True, choices=OPERATOR_NAMES)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.ERROR if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def load_config(args: argparse.Namespace, overrides: Optional[dict] = None) -> RunConfig:
    """defaults < --config file < flags; ``overrides`` replaces list-valued flags."""
    config = RunConfig()
    if args.config:
        config = config.merged(load_config_file(args.config))
    flags = {
        "q": args.q,
        "shells": args.shells,
        "z_re": args.z_re,
        "z_im": args.z_im,
        "p": args.p,
        "margin": args.margin,
        "tol": args.tol,
        "out": args.out,
        "format": args.format,
        "workers": args.workers,
        "assert_j_equivariance": getattr(args, "assert_j_equivariance", None),
    }
    flags.update(overrides or {})
    return config.merged(flags)


def cmd_verify(args: argparse.Namespace) -> int:
    config = load_config(args)
    config.preflight()
    trunc = config.truncation
    trunc.interior_mask()
    reports = run_suite(
        config.ctx,
        trunc,
        config.dirac_params,
        config.effective_p,
        tolerance=config.tolerance,
        workers=config.workers,
        assert_j_equivariance=config.assert_j_equivariance,
    )
    if config.output_format("json") == "csv":
        text = rows_to_csv(report_rows(reports))
    else:
        text = dumps_json(suite_document(config, reports))
    write_output(text, config.out, sys.stdout)

    failed = [r.name for r in reports if not r.passed]
    if failed:
        _fail("checks_failed", f"{len(failed)} of {len(reports)} checks failed: {', '.join(failed)}")
        return EXIT_CHECKS_FAILED
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    config = load_config(args)
    config.preflight()
    rows = spectrum_rows(spectrum_table(config.ctx, config.truncation, config.dirac_params))
    if config.output_format("json") == "csv":
        text = rows_to_csv(rows, SPECTRUM_FIELDS)
    else:
        text = dumps_json({"config": config.to_dict(), "spectrum": rows})
    write_output(text, config.out, sys.stdout)
    return EXIT_OK


def _scan_output(config: RunConfig, kind: str, rows: list[dict], **echo) -> str:
    if config.output_format("csv") == "csv":
        return rows_to_csv(rows, SCAN_FIELDS[kind])
    return dumps_json({"config": {**config.to_dict(), **echo}, "scan": kind, "rows": rows})


def cmd_bound_scan(args: argparse.Namespace) -> int:
    base = load_config(args, {"shells": None})
    raw = args.shells if args.shells is not None else str(base.shells)
    shells_list = parse_list("shells", raw, int)
    # the largest truncation decides the overflow pre-flight
    config = replace(base, shells=max(shells_list))
    config.preflight()
    rows = bound_scan(config.ctx, config.dirac_params, shells_list, config.margin)
    write_output(_scan_output(config, "bound", scan_rows("bound", rows), shells=shells_list), config.out, sys.stdout)
    return EXIT_OK


def cmd_limit_scan(args: argparse.Namespace) -> int:
    base = load_config(args, {"q": None})
    raw = args.q if args.q is not None else str(base.q)
    qs = parse_list("q", raw, float)
    configs = [replace(base, q=q) for q in qs]
    for config in configs:
        config.preflight()
    base.truncation.interior_mask()
    rows = classical_limit_scan(qs, base.truncation, base.dirac_params, tolerance=base.tolerance, workers=base.workers)
    # p follows q at every point of the scan
    echo = {"q": qs, "p": None}
    write_output(_scan_output(base, "limit", scan_rows("limit", rows), **echo), base.out, sys.stdout)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    config = load_config(args)
    config.preflight()
    triple = build_triple(config.ctx, config.truncation, config.dirac_params, config.effective_p)
    text, count = triplets_text(named_operator(triple, args.op))
    write_output(text, config.out, sys.stdout)
    logger.info("exported %s: %d nonzero entries", args.op, count)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "bound-scan": cmd_bound_scan,
    "limit-scan": cmd_limit_scan,
    "export": cmd_export,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        return COMMANDS[args.command](args)
    except QOverflowError as e:
        _fail(e.code, str(e))
        return EXIT_OVERFLOW
    except QSphereError as e:
        _fail(e.code, str(e))
        return EXIT_CONFIG
