"""
build-p: the subposet P of relative types for a class and its certificate
"""

import logging

from combinatorial_types import kappa_of
from commands import command_echo, parse_int_list, resolve_universe_bounds
from config import get_config
from report_service import CheckResult, Report
from stability import P_FLAVORS, CurveContext, build_P

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('build-p', help="Build P and certify its clauses")
    parser.add_argument('--d', type=int, required=True)
    parser.add_argument('--n', type=parse_int_list, required=True)
    parser.add_argument('--genus', type=int, default=0)
    parser.add_argument('--dimv', type=int, default=3)
    parser.add_argument('--flavor', choices=P_FLAVORS, default=P_FLAVORS[0])
    parser.add_argument('--I', dest='I', type=int, default=None, help="Override I(d, n)")
    parser.add_argument('--max-points', type=int, default=None, help="Default: CENSUS_MAX_POINTS")
    parser.add_argument('--max-depth', type=int, default=None, help="Default: CENSUS_MAX_DEPTH")
    parser.add_argument('--general-position', action='store_true',
                        help="Count with general position (implied by --flavor general-position)")
    parser.add_argument('--members-only', action='store_true', help="List members of P only")
    parser.set_defaults(func=cmd_build_p,
                        echo=('d', 'n', 'genus', 'dimv', 'flavor', 'I', 'max_points', 'max_depth',
                              'general_position', 'members_only'))


def cmd_build_p(args) -> Report:
    bounds = resolve_universe_bounds(args, get_config())
    general_position = args.flavor == 'general-position' or args.general_position
    ctx = CurveContext(args.genus, args.d, tuple(args.n), args.dimv,
                       pointed=args.flavor == 'pointed', general_position=general_position)
    P = build_P(ctx, I=args.I, flavor=args.flavor, bounds=bounds)
    certificate = P.certificate()

    rows = []
    for T in P.universe:
        member = T in P
        if args.members_only and not member:
            continue
        m0, lines = P.type_counts(T)
        rows.append({
            'type': str(T),
            'member': member,
            'kappa': kappa_of(T, args.dimv),
            'm0': m0,
            'm_lines': list(lines),
            'functional': P.functional((m0, lines)),
        })
    checks = []
    for key in sorted(certificate.clauses):
        clause = certificate.clauses[key]
        counterexample = None
        if not clause.passed:
            counterexample = {'offending': clause.offending, 'detail': clause.detail}
        checks.append(CheckResult(f"clause-{key}", clause.passed, clause.checked, counterexample))
    return Report(
        command=command_echo(args),
        bounds=P.bounds.to_json(),
        rows=rows,
        checks=checks,
        meta={
            'flavor': P.flavor,
            'I': P.I,
            'threshold': P.threshold,
            'universe_size': certificate.universe_size,
            'members': certificate.members,
            'skipped': certificate.skipped,
        },
    )
