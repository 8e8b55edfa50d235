"""
delpezzo: ampleness, normal form, N_alpha and Weyl orbits of classes on the degree 5 del Pezzo surface
"""

import logging

from commands import command_echo, parse_int_list
from del_pezzo import DPClass, dp_is_ample, dp_minus_one_curves, dp_normalize, dp_pairing, n_alpha, weyl_orbit
from report_service import Report

logger = logging.getLogger(__name__)

ACTIONS = ('ample', 'normalize', 'nalpha', 'orbit')


def register(subparsers):
    parser = subparsers.add_parser('delpezzo', help="Classes on the degree 5 del Pezzo surface")
    parser.add_argument('--alpha', type=parse_int_list, required=True, help="d,n1,n2,n3,n4")
    parser.add_argument('action', choices=ACTIONS)
    parser.set_defaults(func=cmd_delpezzo, echo=('alpha', 'action'))


def _ample_row(a: DPClass):
    return {
        'class': str(a),
        'ample': dp_is_ample(a),
        'curve_degrees': {str(e): dp_pairing(a, e) for e in dp_minus_one_curves()},
    }


def cmd_delpezzo(args) -> Report:
    a = DPClass.parse(args.alpha)
    if args.action == 'ample':
        rows = [_ample_row(a)]
    elif args.action == 'normalize':
        rows = [{'input': str(a), **dp_normalize(a).to_json()}]
    elif args.action == 'nalpha':
        rows = [{'input': str(a), **n_alpha(a).to_json()}]
    else:
        rows = [{'class': str(image), 'word': list(word)} for image, word in weyl_orbit(a)]
    logger.debug(f"delpezzo {args.action} for {a}: {len(rows)} row(s)")
    return Report(command=command_echo(args), rows=rows, meta={'action': args.action})
