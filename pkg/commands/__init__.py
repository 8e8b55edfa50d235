"""
Subcommands of the census CLI.
Each module exposes register(subparsers) and a cmd_* function that returns a Report.
"""

from typing import List

from combinatorial_types import TypeBounds
from exceptions import InputDomainError


def parse_int_list(text: str) -> List[int]:
    """'2,2,2' -> [2, 2, 2]"""
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise InputDomainError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise InputDomainError("expected at least one integer")
    return values


def command_echo(args) -> List[str]:
    """Subcommand plus its own arguments, independent of output and parallelism flags"""
    echo = [args.command]
    for dest in args.echo:
        value = getattr(args, dest)
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        echo.append(f"--{dest.replace('_', '-')}={value}")
    return echo


def require_non_negative(**values):
    for key, value in values.items():
        if value is not None and value < 0:
            raise InputDomainError(f"{key.replace('_', '-')} must be non-negative, got {value}")


def resolve_universe_bounds(args, cfg) -> TypeBounds:
    """--max-points/--max-depth, falling back to cfg.universe_bounds(); fills args so the echo shows them"""
    defaults = cfg.universe_bounds()
    for key in ('max_points', 'max_depth'):
        if getattr(args, key) is None:
            setattr(args, key, defaults[key])
    require_non_negative(max_points=args.max_points, max_depth=args.max_depth)
    return TypeBounds(args.max_points, args.max_depth)
