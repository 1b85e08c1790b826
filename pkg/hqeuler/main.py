#!/usr/bin/env python3
"""Main entry point for hqeuler."""

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .characters import parse_character
from .core import (
    EulerParams,
    SeriesTruncation,
    classical_euler_poly,
    euler_poly,
    power_sum_factored,
    power_sum_naive,
)
from .errors import ConfigError, HQEulerError
from .identities import IdentityId, Mutation
from .lseries import LQuery, choose_truncation, l_multiple
from .numerics import (
    DEFAULT_PRECISION,
    DEFAULT_TOLERANCE,
    Mode,
    QContext,
    context_from_literal,
    lift_argument,
    parse_complex,
    render_scalar,
)
from .verifier import GridSpec, format_reports, load_config, parse_axis, run_grid

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# l is only defined for x > 0.
L_DEFAULT_X = '1'


@dataclass
class OutputRecord:
    """What a command printed: labelled scalar strings plus the parameters used."""
    command: str
    parameters: Dict[str, Any]
    mode: Mode
    values: List[Tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'parameters': self.parameters,
            'mode': self.mode.value,
            'values': [{'label': label, 'value': value} for label, value in self.values],
        }

    def format(self, format_type: str = 'text') -> str:
        if format_type == 'json':
            return json.dumps(self.to_dict(), indent=2)
        return '\n'.join(f"{label}: {value}" for label, value in self.values)


def _int_list(text: str, flag: str) -> List[int]:
    values = parse_axis(text, flag)
    if not values or not all(isinstance(v, int) for v in values):
        raise ConfigError(f"{flag} expects integers or a lo..hi range, got {text!r}")
    return values


def _context(args: argparse.Namespace) -> QContext:
    if args.q is None:
        raise ConfigError("--q is required")
    return context_from_literal(args.q, args.mode, args.precision, args.tolerance)


def _classical_context(args: argparse.Namespace) -> QContext:
    # q is irrelevant for the limit polynomials; the context only fixes the arithmetic.
    if args.q is not None:
        return _context(args)
    if args.mode == Mode.NUMERIC.value:
        return QContext.numeric("0.5", precision=args.precision, tolerance=args.tolerance)
    return QContext.exact("1/2")


def _common_parameters(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        'q': args.q,
        'chi': args.chi,
        'h': args.h,
        'r': args.r,
    }


def _render(value, ctx: QContext, args: argparse.Namespace) -> str:
    return render_scalar(value, ctx, args.digits)


def euler_rows(args: argparse.Namespace, classical: bool = False) -> Tuple[QContext, List[Tuple[int, Any, Any]]]:
    """(n, x, value) triples over the --n and --x axes."""
    ctx = _classical_context(args) if classical else _context(args)
    chi = parse_character(args.chi, ctx)
    params = EulerParams(args.h, args.r)
    rows = []
    for n in _int_list(args.n, '--n'):
        for raw in parse_axis(args.x, '--x'):
            x = lift_argument(raw, ctx)
            if classical:
                value = classical_euler_poly(n, x, chi, args.r, ctx)
            else:
                value = euler_poly(n, x, chi, params, ctx)
            rows.append((n, raw, value))
    return ctx, rows


def power_sum_rows(args: argparse.Namespace) -> Tuple[QContext, List[Tuple[int, int, Any]]]:
    """(n, i, value) triples; without --i every i in 0..n is tabulated."""
    ctx = _context(args)
    chi = parse_character(args.chi, ctx)
    params = EulerParams(args.h, args.r)
    method = power_sum_naive if args.method == 'naive' else power_sum_factored
    rows = []
    for n in _int_list(args.n, '--n'):
        indices = _int_list(args.i, '--i') if args.i is not None else range(n + 1)
        for i in indices:
            if i > n:
                continue
            rows.append((n, i, method(n, i, args.w, chi, params, ctx)))
    return ctx, rows


def cmd_compute(args: argparse.Namespace) -> OutputRecord:
    """Evaluate one quantity over the requested ranges."""
    parameters = _common_parameters(args)
    quantity = args.quantity
    if args.x is None:
        args.x = L_DEFAULT_X if quantity == 'l' else '0'

    if quantity in ('euler', 'classical'):
        ctx, rows = euler_rows(args, classical=quantity == 'classical')
        parameters.update({'n': args.n, 'x': args.x})
        values = [(f"n={n} x={x}", _render(v, ctx, args)) for n, x, v in rows]
    elif quantity == 'power-sum':
        ctx, rows = power_sum_rows(args)
        parameters.update({'n': args.n, 'i': args.i, 'w': args.w, 'method': args.method})
        values = [(f"n={n} i={i}", _render(v, ctx, args)) for n, i, v in rows]
    else:
        ctx = _context(args)
        chi = parse_character(args.chi, ctx)
        params = EulerParams(args.h, args.r)
        values = []
        for s_text in args.s.split(','):
            s = parse_complex(s_text, ctx)
            for raw in parse_axis(args.x, '--x'):
                x = lift_argument(raw, ctx)
                if args.truncation:
                    trunc = SeriesTruncation(args.truncation)
                else:
                    trunc = choose_truncation(params, s, x, ctx)
                estimate = l_multiple(LQuery(s, x, chi, params, trunc), ctx)
                values.append((f"s={s_text.strip()} x={raw}", _render(estimate.value, ctx, args)))
                logger.info("l(%s, %s): M=%d tail=%s", s_text, raw, estimate.per_index_limit,
                            render_scalar(estimate.tail_bound, ctx, 5))
        parameters.update({'s': args.s, 'x': args.x, 'truncation': args.truncation})

    return OutputRecord(f"compute {quantity}", parameters, ctx.mode, values)


def cmd_table(args: argparse.Namespace) -> OutputRecord:
    """Print a machine-readable table; rows follow the order of the axes."""
    parameters = _common_parameters(args)
    if args.x is None:
        args.x = '0'
    if args.quantity == 'power-sum':
        ctx, rows = power_sum_rows(args)
        columns = ['n', 'i', 'value']
        parameters.update({'n': args.n, 'i': args.i, 'w': args.w})
    else:
        ctx, rows = euler_rows(args, classical=args.quantity == 'classical')
        columns = ['n', 'x', 'value']
        parameters.update({'n': args.n, 'x': args.x})
    rendered = [[str(a), str(b), _render(v, ctx, args)] for a, b, v in rows]

    if args.format == 'json':
        print(json.dumps({
            'command': f"table {args.quantity}",
            'parameters': parameters,
            'mode': ctx.mode.value,
            'columns': columns,
            'rows': rendered,
        }, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(columns)
        writer.writerows(rendered)

    values = [(f"{columns[0]}={a} {columns[1]}={b}", v) for a, b, v in rendered]
    return OutputRecord(f"table {args.quantity}", parameters, ctx.mode, values)


def _grid_specs(args: argparse.Namespace) -> List[GridSpec]:
    specs = load_config(args.config) if args.config else GridSpec.preset(args.preset)
    if args.identities:
        known = {identity_id.value for identity_id in IdentityId}
        unknown = [i for i in args.identities if i not in known]
        if unknown:
            raise ConfigError(f"unknown identity id(s): {', '.join(unknown)}")
        for spec in specs:
            selected = spec.identities if spec.identities is not None else args.identities
            spec.identities = [i for i in args.identities if i in selected]
    return specs


def cmd_verify(args: argparse.Namespace) -> Tuple[OutputRecord, int]:
    """Run the identity grid; exit code 0 iff every report passed."""
    mutation = Mutation(args.mutate) if args.mutate else Mutation.NONE
    reports = []
    for spec in _grid_specs(args):
        reports.extend(run_grid(spec, mutation))

    parameters = {
        'config': args.config,
        'preset': None if args.config else args.preset,
        'identities': args.identities,
        'mutation': mutation.value,
    }
    print(format_reports(reports, 'json' if args.json else 'text', parameters))

    all_passed = all(r.passed for r in reports)
    modes = {r.mode for r in reports}
    mode = modes.pop() if len(modes) == 1 else Mode.EXACT
    values = [(r.identity_id.value, 'passed' if r.passed else 'failed') for r in reports]
    return OutputRecord('verify', parameters, mode, values), EXIT_OK if all_passed else EXIT_FAILED


def _add_value_arguments(parser: argparse.ArgumentParser, quantities: Sequence[str]):
    parser.add_argument('quantity', choices=quantities, help='What to evaluate')
    parser.add_argument('--q', help='Base q: "a/b" (exact), "0.3" or "0.3@128" (numeric)')
    parser.add_argument('--mode', choices=[m.value for m in Mode],
                        help='Override the mode implied by the q literal')
    parser.add_argument('--precision', type=int, default=DEFAULT_PRECISION,
                        help=f'Working precision in bits (default: {DEFAULT_PRECISION})')
    parser.add_argument('--tolerance', type=float, default=DEFAULT_TOLERANCE,
                        help=f'Numeric tolerance (default: {DEFAULT_TOLERANCE})')
    parser.add_argument('--digits', type=int, help='Decimal digits of numeric output')
    parser.add_argument('--chi', default='principal:1',
                        help='Character: principal:d, quadratic:p, enum:d:k or d:v0,v1,...')
    parser.add_argument('--h', type=int, default=1, help='Weight h (default: 1)')
    parser.add_argument('--r', type=int, default=1, help='Order r (default: 1)')
    parser.add_argument('--n', default='0', help='Degree(s): integer, list or lo..hi range')
    parser.add_argument('--x', help='Argument(s): integers, "a/b" or decimals (default: 1 for l, else 0)')
    parser.add_argument('--i', help='Power-sum bracket exponent(s) (default: 0..n)')
    parser.add_argument('--w', type=int, default=1, help='Power-sum range w (default: 1)')
    parser.add_argument('--method', choices=['factored', 'naive'], default='factored',
                        help='Power-sum evaluation (default: factored)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hqeuler',
        description='hqeuler - (h,q)-Euler polynomials with Dirichlet characters and their symmetry identities',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # First five exact values at x = 0
  python hqeuler.py compute euler --n 0..4 --x 0 --q 1/2

  # An alternating q-power sum
  python hqeuler.py compute power-sum --n 2 --i 1 --w 3 --q 1/2

  # The l-function at s = 2.5 with a quadratic character
  python hqeuler.py compute l --s 2.5 --x 1 --h 3 --r 2 --chi quadratic:3 --q 0.3

  # Run the smoke grid, then the full acceptance grid as JSON
  python hqeuler.py verify
  python hqeuler.py verify --preset acceptance --json

  # CSV table of the classical limit polynomials
  python hqeuler.py table classical --n 0..5 --x 0..2 --chi quadratic:3
        """
    )
    parser.add_argument('--verbose', action='store_true', help='Log debug output to stderr')
    parser.add_argument('--version', action='store_true', help='Show version information')
    subparsers = parser.add_subparsers(dest='command')

    compute = subparsers.add_parser('compute', help='Evaluate E, S, the classical limit or l')
    _add_value_arguments(compute, ['euler', 'power-sum', 'classical', 'l'])
    compute.add_argument('--s', default='2', help='l-function argument(s), e.g. "2,3+1i"')
    compute.add_argument('--truncation', type=int,
                         help='Per-index limit M for l (default: chosen from the tolerance)')
    compute.add_argument('--format', choices=['text', 'json'], default='text',
                         help='Output format (default: text)')

    table = subparsers.add_parser('table', help='Emit a CSV or JSON table')
    _add_value_arguments(table, ['euler', 'classical', 'power-sum'])
    table.add_argument('--format', choices=['csv', 'json'], default='csv',
                       help='Output format (default: csv)')

    verify = subparsers.add_parser('verify', help='Check the identities over a grid')
    verify.add_argument('--config', help='Path to a grid configuration file (JSON format)')
    verify.add_argument('--preset', choices=['default', 'acceptance'], default='default',
                        help='Built-in grid when no config is given (default: default)')
    verify.add_argument('--identities', nargs='+', help='Restrict the run to these identity ids')
    verify.add_argument('--json', action='store_true', help='Emit the full reports as JSON')
    verify.add_argument('--mutate', choices=[m.value for m in Mutation if m is not Mutation.NONE],
                        help='Perturb every left side (checks that failures are detected)')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    if args.version:
        from . import __version__
        print(f"hqeuler version {__version__}")
        return EXIT_OK

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == 'compute':
            print(cmd_compute(args).format(args.format))
            return EXIT_OK
        if args.command == 'table':
            cmd_table(args)
            return EXIT_OK
        _, code = cmd_verify(args)
        return code
    except (HQEulerError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
