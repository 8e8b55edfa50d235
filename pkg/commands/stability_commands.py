"""
stability: M, I and the connectivity range of a class (d, n_1, ..., n_r)
"""

import logging

from commands import command_echo, parse_int_list, require_non_negative
from report_service import Report
from stability import CurveContext, stability_range

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('stability', help="Stability range of a class alpha")
    parser.add_argument('--d', type=int, required=True, help="Degree")
    parser.add_argument('--n', type=parse_int_list, required=True, help="Multiplicities, e.g. 2,2,2")
    parser.add_argument('--genus', type=int, default=0)
    parser.add_argument('--dimv', type=int, default=3)
    parser.add_argument('--general-position', action='store_true')
    parser.add_argument('--pointed', action='store_true')
    parser.add_argument('--k-max', type=int, default=5, help="Largest multiple k tabulated")
    parser.set_defaults(func=cmd_stability,
                        echo=('d', 'n', 'genus', 'dimv', 'general_position', 'pointed', 'k_max'))


def cmd_stability(args) -> Report:
    require_non_negative(k_max=args.k_max)
    ctx = CurveContext(args.genus, args.d, tuple(args.n), args.dimv,
                       pointed=args.pointed, general_position=args.general_position)
    result = stability_range(ctx)
    row = result.to_json()
    row['connectivity_by_k'] = [
        {'k': k, 'range_below': result.connectivity(k)} for k in range(1, args.k_max + 1)
    ]
    if not result.feasible:
        logger.info(f"Class d={args.d} n={args.n} is infeasible: {'; '.join(result.reasons)}")
    return Report(
        command=command_echo(args),
        bounds={'k_max': args.k_max},
        rows=[row],
        meta={'clause': result.clause},
    )
