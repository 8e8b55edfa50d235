"""
census: essential saturated types with kappa <= kappa-max and their stratum data
"""

import logging

from chains import word_to_chain
from combinatorial_types import (ABSOLUTE, FLAVORS, as_relative, enumerate_saturated_types, kappa_of,
                                 stratum_record)
from commands import command_echo, parse_int_list, require_non_negative, resolve_universe_bounds
from config import get_config
from exceptions import InputDomainError
from homalg import MU_CONVENTION
from lattice import build_blowup_poset
from report_service import Report

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('census', help="Census of essential saturated types")
    parser.add_argument('--r', type=int, default=3)
    parser.add_argument('--dimv', type=int, default=3)
    parser.add_argument('--max-points', type=int, default=None,
                        help="Active points per type (default: CENSUS_MAX_POINTS)")
    parser.add_argument('--max-depth', type=int, default=None,
                        help="Word length per point (default: CENSUS_MAX_DEPTH)")
    parser.add_argument('--kappa-max', type=int, default=2)
    parser.add_argument('--flavor', choices=FLAVORS, default=ABSOLUTE)
    parser.add_argument('--n', type=parse_int_list, default=None,
                        help="Lower configuration: n_i points on line l_i (relative/pointed)")
    parser.add_argument('--with-mu', action='store_true', help="Add mu stalk Betti numbers")
    parser.set_defaults(func=cmd_census,
                        echo=('r', 'dimv', 'max_points', 'max_depth', 'kappa_max', 'flavor', 'n', 'with_mu'))


def cmd_census(args) -> Report:
    bounds = resolve_universe_bounds(args, get_config())
    poset = build_blowup_poset(args.r, args.dimv)
    lower_type = None
    if args.n is not None:
        if args.flavor == ABSOLUTE:
            raise InputDomainError("--n only applies to relative and pointed censuses")
        if len(args.n) != args.r:
            raise InputDomainError(f"--n needs {args.r} multiplicities, got {len(args.n)}")
        require_non_negative(n=min(args.n))
        lower_type = [word_to_chain(poset, f"1*l{i}") for i, n in enumerate(args.n, 1) for _ in range(n)]

    types = enumerate_saturated_types(poset, bounds, args.flavor, essential_only=True, lower_type=lower_type)
    rows = []
    for T in types:
        R = as_relative(T)
        if all(a == b for a, b in R.all_entries()):
            continue
        if kappa_of(R, args.dimv) > args.kappa_max:
            continue
        rows.append(stratum_record(T, args.dimv, with_mu=args.with_mu).to_row())
    logger.info(f"Census on {poset.name}: {len(rows)} of {len(types)} essential types within kappa <= {args.kappa_max}")

    meta = {'poset': poset.name, 'flavor': args.flavor, 'types_enumerated': len(types)}
    if args.with_mu:
        meta['mu_convention'] = MU_CONVENTION
    return Report(
        command=command_echo(args),
        bounds={**bounds.to_json(), 'r': args.r, 'dimv': args.dimv, 'kappa_max': args.kappa_max},
        rows=rows,
        meta=meta,
    )
