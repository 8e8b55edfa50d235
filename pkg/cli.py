#!/usr/bin/env python3
"""
Census CLI entry point

Usage:
    python cli.py chains --r 3 --dimv 3 --max-depth 3
    python cli.py census --r 3 --kappa-max 2 --with-mu
    python cli.py stability --d 5 --n 2,2,2 --genus 0 --dimv 3 --general-position
    python cli.py delpezzo --alpha 3,1,1,1,1 nalpha
    python cli.py build-p --d 9 --n 2,2,2
    python cli.py verify --suite all --output -

Exit codes: 0 success, 1 input error (or any other error), 2 verification failure.
"""

import argparse
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import List, Optional

from commands import (build_p_commands, census_commands, chains_commands, delpezzo_commands,
                      stability_commands, verify_commands)
from config import get_config
from exceptions import CensusError, InputDomainError
from report_service import FORMATS, write_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2

COMMAND_MODULES = (chains_commands, census_commands, stability_commands, delpezzo_commands,
                   build_p_commands, verify_commands)


class CensusArgumentParser(argparse.ArgumentParser):
    """Usage errors become input errors instead of argparse's own exit status"""

    def error(self, message):
        raise InputDomainError(message)


def build_parser() -> argparse.ArgumentParser:
    cfg = get_config()
    parser = CensusArgumentParser(prog="census", description="Simplicial resolution census toolkit")
    parser.add_argument('--format', choices=FORMATS, default=cfg.DEFAULT_FORMAT)
    parser.add_argument('--output', default=None,
                        help="File, directory or '-' for stdout (default: CENSUS_OUTPUT_DIR)")
    parser.add_argument('--seed', type=int, default=cfg.DEFAULT_SEED)
    parser.add_argument('--parallelism', type=int, default=cfg.PARALLELISM)
    parser.add_argument('--quiet', action='store_true', help="Only log warnings and errors")

    subparsers = parser.add_subparsers(dest='command')
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def setup_logging(quiet: bool = False):
    cfg = get_config()
    level = logging.WARNING if quiet else getattr(logging, str(cfg.LOG_LEVEL).upper(), logging.INFO)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if cfg.LOG_DIR:
        os.makedirs(cfg.LOG_DIR, exist_ok=True)
        handlers.append(RotatingFileHandler(os.path.join(cfg.LOG_DIR, 'census.log'),
                                            maxBytes=cfg.LOG_MAX_BYTES, backupCount=cfg.LOG_BACKUP_COUNT))
    logging.basicConfig(
        level=level,
        format='%(asctime)s %(levelname)s [%(name)s] %(message)s',
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputDomainError as e:
        print(f"census: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if not args.command:
        build_parser().print_help(sys.stderr)
        return EXIT_INPUT_ERROR

    setup_logging(args.quiet)
    try:
        if args.parallelism < 1:
            raise InputDomainError(f"--parallelism must be at least 1, got {args.parallelism}")
        report = args.func(args)
        write_report(report, args.format, args.output)
    except InputDomainError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT_ERROR
    except CensusError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_INPUT_ERROR

    if not report.passed:
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
