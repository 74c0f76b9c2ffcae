# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import argparse
import logging
import os
import sys

from hardy_certify import __version__
from hardy_certify.constants import Mode
from hardy_certify.errors import HardyCertifyError, RangeError
from hardy_certify.report import (
    FORMATS,
    config_from_dict,
    emit,
    emit_suite,
    error_report,
    parse_config,
    run_certification,
    worst_verdict,
    write,
)

logger = logging.getLogger(__name__)


def _beta_list(value):
    try:
        return [float(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("--beta takes comma separated numbers, got {!r}".format(value))


def _add_oracle_flags(parser):
    parser.add_argument("--cells", type=int, help="oracle grid cells (default 4096)")
    parser.add_argument("--restarts", type=int, help="oracle restarts (default 32)")
    parser.add_argument("--seed", type=int, help="oracle seed (default 42)")
    parser.add_argument("--out", help="report path, stdout when omitted")
    parser.add_argument("--format", choices=FORMATS, help="report format (default json)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hardy-certify",
        description="certify weight characterizations of iterated hardy inequalities against brute-force constants",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging, repeat for debug")
    parser.add_argument("--threads", type=int, help="worker threads, overrides HARDY_CERT_THREADS")
    subparsers = parser.add_subparsers(dest="command")

    run_parser = subparsers.add_parser("run", help="run one certification")
    run_parser.add_argument("--config", required=True, help="JSON config file")
    run_parser.add_argument("--mode", choices=[mode.value for mode in Mode])
    run_parser.add_argument("--beta", type=_beta_list, help="comma separated beta values, e.g. 0.0,0.5")
    _add_oracle_flags(run_parser)

    suite_parser = subparsers.add_parser("suite", help="run the generated acceptance suite")
    _add_oracle_flags(suite_parser)

    subparsers.add_parser("version", help="print the version")
    return parser


def _configure_logging(verbose):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = os.getenv("HARDY_CERT_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _deliver(content, path):
    if path:
        write(content, path)
    else:
        stream = getattr(sys.stdout, "buffer", None)
        if stream is None:
            sys.stdout.write(content.decode("utf-8"))
        else:
            stream.write(content)
            stream.flush()


def _overrides(args):
    return {
        "n_cells": args.cells,
        "restarts": args.restarts,
        "seed": args.seed,
        "output": args.out,
        "format": args.format,
    }


def _run(args):
    cfg = parse_config(args.config).override(mode=args.mode, beta_list=args.beta, **_overrides(args))
    report = run_certification(cfg)
    _deliver(emit(report, cfg.format), cfg.output)
    return report.verdict.exit_code


def _suite(args):
    from hardy_certify.suite import MAIN_SUITE, MONOTONE_SUITE

    overrides = _overrides(args)
    output, fmt = overrides.pop("output"), overrides.pop("format") or "json"
    reports = []
    for entry in MAIN_SUITE + MONOTONE_SUITE:
        cfg = config_from_dict(entry).override(**overrides)
        logger.info("suite entry %s (%s)", entry["name"], entry["mode"])
        reports.append(run_certification(cfg))
    _deliver(emit_suite(reports, fmt), output)
    return worst_verdict(reports).exit_code


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    if args.command == "version":
        print(__version__)
        return 0
    if args.command is None:
        parser.print_help()
        return 4
    try:
        if args.threads is not None:
            if args.threads < 1:
                raise RangeError("--threads must be positive, got {}".format(args.threads))
            os.environ["HARDY_CERT_THREADS"] = str(args.threads)
        if args.command == "run":
            return _run(args)
        return _suite(args)
    except HardyCertifyError as error:
        logger.error("%s: %s", type(error).__name__, error)
        content = error_report(error)
        out = getattr(args, "out", None)
        try:
            _deliver(content, out)
        except HardyCertifyError:
            sys.stderr.write(content.decode("utf-8"))
        return getattr(error, "exit_code", 5)


if __name__ == "__main__":
    raise SystemExit(main())
