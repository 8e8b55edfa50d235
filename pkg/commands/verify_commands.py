"""
verify: run the property suites and report one check per suite
"""

import logging

from commands import command_echo, parse_int_list, require_non_negative
from config import get_config
from exceptions import InputDomainError
from report_service import Report
from verification_service import SUITES, resolve_suites, run_suites

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('verify', help="Run verification suites")
    parser.add_argument('--suite', default='all',
                        help=f"'all' or comma-separated names: {', '.join(SUITES)}")
    parser.add_argument('--max-r', type=int, default=None, help="Largest r of the posets Q_r checked")
    parser.add_argument('--max-depth', type=int, default=None,
                        help="Word-length bound for every chain, homology and type universe")
    parser.add_argument('--max-points', type=int, default=None, help="Points per type and per homology support")
    parser.add_argument('--degrees', type=parse_int_list, default=None, help="Degrees d of the P certificates")
    parser.set_defaults(func=cmd_verify,
                        echo=('suite', 'seed', 'max_r', 'max_depth', 'max_points', 'degrees'))


def cmd_verify(args) -> Report:
    require_non_negative(max_depth=args.max_depth, max_points=args.max_points)
    if args.max_r is not None and args.max_r < 1:
        raise InputDomainError(f"--max-r must be at least 1, got {args.max_r}")
    cfg = get_config().with_overrides(max_r=args.max_r, max_depth=args.max_depth,
                                      max_points=args.max_points, degrees=args.degrees)
    names = resolve_suites(args.suite)
    checks = run_suites(names, cfg, args.seed, args.parallelism)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"Failed suites: {', '.join(failed)}")
    return Report(
        command=command_echo(args),
        bounds=cfg.verify_bounds(),
        checks=checks,
        meta={'seed': args.seed, 'suites': names},
    )
