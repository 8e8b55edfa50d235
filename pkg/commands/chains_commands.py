"""
chains: list the chains of Q_r up to a word length with their covers and essential joins
"""

import logging

from chains import covers_above, enumerate_chains, essential_above
from commands import command_echo, require_non_negative
from divisors import chain_rank, chain_value, gamma_weights_for
from lattice import build_blowup_poset
from report_service import Report

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser('chains', help="Chains of Q_r with covers and essential joins")
    parser.add_argument('--r', type=int, default=3, help="Number of lines (r >= 1)")
    parser.add_argument('--dimv', type=int, default=3, help="Ambient dimension v (v >= 3)")
    parser.add_argument('--max-depth', type=int, default=3, help="Largest word length listed")
    parser.set_defaults(func=cmd_chains, echo=('r', 'dimv', 'max_depth'))


def cmd_chains(args) -> Report:
    require_non_negative(max_depth=args.max_depth)
    poset = build_blowup_poset(args.r, args.dimv)
    gamma = gamma_weights_for(poset, args.dimv)
    budget = args.max_depth + 1
    rows = []
    for c in enumerate_chains(poset, args.max_depth):
        rows.append({
            'chain': str(c),
            'depths': c.to_mapping(),
            'total_depth': c.total_depth,
            'rank': chain_rank(c),
            'gamma': chain_value(gamma, c),
            'covers': [str(s) for s in covers_above(c, budget)],
            'essential': [str(e.chain) for e in essential_above(c, budget)],
        })
    logger.info(f"Listed {len(rows)} chains of {poset.name}")
    return Report(
        command=command_echo(args),
        bounds={'r': args.r, 'dimv': args.dimv, 'max_depth': args.max_depth, 'cover_budget': budget},
        rows=rows,
        meta={'poset': poset.name, 'chains': len(rows)},
    )
