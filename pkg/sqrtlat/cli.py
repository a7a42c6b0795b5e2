# -*- coding: utf-8 -*-
"""Command-line interface.

Exit codes: ``0`` success, ``2`` invalid input (including usage errors and
unwritable outputs) or an unreachable precision, ``3`` a failed
``--check``.

"""

import argparse
import logging
import math
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, IO, List, Optional, Sequence, Tuple

from . import __version__
from .analysis import (count_zeros_delta, count_zeros_rectangle,
                       histogram_values, l2_sum, moment_fn, real_zeros,
                       verify_interpolation)
from .basis import build_solver, eval_collocation, evaluate, solver_for
from .config import Config, get_config, set_config
from .exceptions import SqrtLatError, ToleranceFailure
from .figures import (FigureSpec, emit_figure, figures, format_number,
                      grid, write_csv)
from .kloosterman import S, S_tilde, coeff_table
from .modular import g_expansion
from .special import phi, psi_moment, default_psi
from .utils import method_aliases, parse_method

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_TOLERANCE = 3


class UsageError(SqrtLatError, ValueError):
    """An argument combination argparse cannot express."""


CommandFunc = Callable[[argparse.Namespace, IO[str]], Optional[int]]


def arg(*names: str, **kwargs) -> Tuple[Tuple[str, ...], Dict[str, Any]]:
    """Arguments for :meth:`argparse.ArgumentParser.add_argument`."""
    return names, kwargs


class Command(object):
    """A subcommand: its name, handler and argument declarations."""

    def __init__(self, name: str, func: CommandFunc,
                 arguments: Sequence[Tuple[Tuple[str, ...], Dict[str, Any]]],
                 help: Optional[str]=None) -> None:
        self.name = name
        self.func = func
        self.arguments = list(arguments)
        self.help = help or (func.__doc__ or '').strip().split('\n')[0]

    def install(self, subparsers: Any) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help)
        for names, kwargs in self.arguments:
            parser.add_argument(*names, **kwargs)
        parser.set_defaults(command=self)
        return parser

    def __call__(self, args: argparse.Namespace, out: IO[str]) -> int:
        return self.func(args, out) or EXIT_OK

    def __repr__(self) -> str:
        return "{n}('{c}')".format(n=self.__class__.__name__, c=self.name)


class CommandRegistry(object):
    """Subcommands registered by decorator::

        commands = CommandRegistry()

        @commands('psi', arg('--x', type=float, required=True))
        def psi_command(args, out):
            ...

    """

    def __init__(self) -> None:
        self.commands = []  # type: List[Command]

    def __call__(self, name: str, *arguments,
                 help: Optional[str]=None) -> Callable[[CommandFunc],
                                                       CommandFunc]:
        def inner(func: CommandFunc) -> CommandFunc:
            self.commands.append(Command(name, func, arguments, help))
            return func
        return inner

    def __iter__(self):
        return iter(self.commands)

    def parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog='sqrtlat',
            description='Fourier interpolation basis for square roots of '
                        'integers.')
        parser.add_argument('--version', action='version',
                            version='%(prog)s ' + __version__)
        parser.add_argument('--config', help='key=value configuration file')
        parser.add_argument('--cache-dir', help='cache directory')
        parser.add_argument('--threads', type=int, help='worker threads')
        parser.add_argument('--check', action='store_true',
                            help='compare results with the tolerance table '
                                 '(exit 3 on failure)')
        parser.add_argument('-v', '--verbose', action='count', default=0)
        subparsers = parser.add_subparsers(dest='command_name')
        subparsers.required = True
        for command in self:
            command.install(subparsers)
        return parser

    def __repr__(self) -> str:
        return '{n}({c})'.format(n=self.__class__.__name__,
                                 c=[c.name for c in self])


commands = CommandRegistry()


def format_complex(z: complex) -> str:
    z = complex(z)
    return '{:.15g}{:+.15g}i'.format(z.real + 0.0, z.imag + 0.0)


def _emit(out: IO[str], header: Sequence[str],
          rows: Sequence[Sequence[Any]]) -> None:
    out.write(','.join(header) + '\n')
    for row in rows:
        out.write(','.join(format_number(v) for v in row) + '\n')


def _complex_arg(args: argparse.Namespace) -> complex:
    return complex(args.x, getattr(args, 'im', 0.0) or 0.0)


# -- basis --------------------------------------------------------------------

@commands('eval',
          arg('--n', type=int, required=True),
          arg('--x', type=float, required=True),
          arg('--im', type=float, default=0.0,
              help='imaginary part (contour and phi methods)'),
          arg('--method', default='collocation',
              choices=sorted(method_aliases())),
          arg('--N', type=int, help='collocation truncation'))
def eval_command(args, out):
    """Evaluate f_n at one point."""
    if args.N is not None and parse_method(args.method) == 'collocation':
        if args.im:
            raise UsageError('collocation needs a real --x')
        result = eval_collocation(args.n, [args.x], build_solver(args.N))[0]
    else:
        result = evaluate(args.n, _complex_arg(args), args.method)
    value = complex(result.value)
    shown = format_complex(value) if value.imag else value.real
    _emit(out, ['n', 'x', 'value', 'method', 'err'],
          [[result.n, result.x, shown, result.method, result.err]])
    if args.check and not args.im and args.x == round(args.x):
        expected = 1.0 if round(args.x) == args.n else 0.0
        get_config().check('delta_property', abs(value.real - expected),
                           upper='delta_property')


@commands('table',
          arg('--nmax', type=int, required=True),
          arg('--xmin', type=float, required=True),
          arg('--xmax', type=float, required=True),
          arg('--step', type=float, required=True),
          arg('--out', help='CSV path (default: stdout)'))
def table_command(args, out):
    """Collocation table n,x,value,method,err."""
    xs = grid(args.xmin, args.xmax, args.step)
    solver = solver_for(args.nmax)
    values = solver.values(xs)
    limit = solver.trusted_max
    rows = []
    for k, x in enumerate(xs):
        column = values[:limit + 1, k]
        err = float(abs(column.imag).max())
        for n in range(args.nmax + 1):
            rows.append([n, x, float(column[n].real), 'collocation', err])
    header = ['n', 'x', 'value', 'method', 'err']
    if args.out:
        write_csv(args.out, header, rows)
    else:
        _emit(out, header, rows)


# -- modular forms and coefficients -------------------------------------------

@commands('gn-expansion',
          arg('--n', type=int, required=True),
          arg('--order', type=int, required=True,
              help='exponents below order/8'))
def gn_expansion_command(args, out):
    """q-expansion of g_n: exponent,coefficient."""
    series = g_expansion(args.n, args.order)
    rows = [[str(Fraction(key, series.denom)), coefficient]
            for key, coefficient in series.items()]
    _emit(out, ['exponent', 'coefficient'], rows)


@commands('kloosterman',
          arg('--m', type=int, required=True),
          arg('--n', type=int, required=True),
          arg('--c', type=int, required=True),
          arg('--tilde', action='store_true',
              help='the sum between the cusps inf and 1'))
def kloosterman_command(args, out):
    """Kloosterman sum S(m, n, c) or S~(m, n, c)."""
    func = S_tilde if args.tilde else S
    out.write(format_complex(func(args.m, args.n, args.c)) + '\n')


@commands('coeff',
          arg('--m', type=int, required=True),
          arg('--n', type=int, required=True, nargs='+'),
          arg('--method', default='expansion',
              choices=['expansion', 'rademacher']),
          arg('--cmax', type=int),
          arg('--tilde', action='store_true',
              help='coefficients at the cusp 1'))
def coeff_command(args, out):
    """Fourier coefficients of g_m by one method."""
    kind = 'cusp_one' if args.tilde else 'cusp_inf'
    table = coeff_table(kind, args.m, args.n, args.method, args.cmax)
    rows = [[nu, entry.value, entry.method, entry.err]
            for nu, entry in table]
    _emit(out, ['nu', 'value', 'method', 'err'], rows)
    if args.check and args.method == 'rademacher':
        exact = coeff_table(kind, args.m, args.n, 'expansion')
        for nu, (diff, _) in exact.compare(table).items():
            scale = max(1.0, abs(float(exact[nu].value)))
            get_config().check('coeff_rel a_{}'.format(nu), diff / scale,
                               upper='coeff_rel')


# -- special functions --------------------------------------------------------

@commands('phi',
          arg('--re', type=float, required=True),
          arg('--im', type=float, default=0.0))
def phi_command(args, out):
    """Phi at one complex point."""
    out.write(format_complex(phi(complex(args.re, args.im))) + '\n')


@commands('psi',
          arg('--x', type=float, required=True, nargs='+'))
def psi_command(args, out):
    """Psi at real points: x,value."""
    values = default_psi.values(args.x)
    _emit(out, ['x', 'value'], [[x, v] for x, v in zip(args.x, values)])


@commands('psi-moment',
          arg('--T', type=float, required=True),
          arg('--nodes', type=int, default=8))
def psi_moment_command(args, out):
    """Normalised second moment of Psi on [T, 2T]."""
    result = psi_moment(args.T, args.nodes)
    _emit(out, ['T', 'integral', 'normalized'],
          [[result.T, result.integral, result.normalized]])
    if args.check:
        get_config().check('psi_moment', result.normalized,
                           'psi_moment_lo', 'psi_moment_hi')


# -- analysis -----------------------------------------------------------------

@commands('zeros',
          arg('--n', type=int, required=True),
          arg('--t1', type=float),
          arg('--t2', type=float),
          arg('--rect', type=float, metavar='R'),
          arg('--real', type=float, nargs=2, metavar=('A', 'B')),
          arg('--step', type=float, default=0.05))
def zeros_command(args, out):
    """Zero counts in a Delta window, a rectangle, or on an interval."""
    config = get_config()
    if args.rect is not None:
        report = count_zeros_rectangle(args.n, args.rect)
        if args.check:
            ratio = report.count / math.sqrt(args.rect * args.n)
            config.check('rect_ratio', ratio, 'rect_ratio_lo',
                         'rect_ratio_hi')
    elif args.real is not None:
        report = real_zeros(args.n, args.real[0], args.real[1], args.step)
    elif args.t1 is not None and args.t2 is not None:
        report = count_zeros_delta(args.n, args.t1, args.t2)
        if args.check:
            config.check('delta_window', abs(report.count -
                                             (args.t2 - args.t1)),
                         upper='delta_window_slack')
    else:
        raise UsageError('zeros needs --t1/--t2, --rect or --real')
    _emit(out, ['n', 'kind', 'a', 'b', 'count'], [report.row()])
    if report.real_zeros:
        _emit(out, ['n', 'zero'], [[report.n, z] for z in report.real_zeros])
    for warning in report.warnings:
        logger.warning(warning)


@commands('moment',
          arg('--n', type=int, required=True),
          arg('--a', type=float, required=True),
          arg('--b', type=float, required=True))
def moment_command(args, out):
    """Integral of f_n^2 over [a, b]."""
    result = moment_fn(args.n, args.a, args.b)
    _emit(out, ['n', 'a', 'b', 'value', 'err'], [result.row()])
    if args.check:
        get_config().check('fnsecmom', result.value / math.log(args.n),
                           'fnsecmom_lo', 'fnsecmom_hi')


@commands('l2sum',
          arg('--xi', type=int, required=True),
          arg('--xcut', type=float))
def l2sum_command(args, out):
    """Sum over n <= xi of the integrals of f_n^2."""
    result = l2_sum(args.xi, args.xcut)
    _emit(out, ['xi', 'value', 'per_log', 'per_log2', 'err'],
          [[args.xi, result.moment.value, result.per_log, result.per_log2,
            result.moment.err]])
    if args.check:
        get_config().check('l2sum', result.per_log, 'l2sum_lo', 'l2sum_hi')


@commands('histogram',
          arg('--x0', type=float, default=0.63),
          arg('--nmax', type=int, default=2000),
          arg('--bins', type=int, default=50),
          arg('--out', help='CSV path (default: stdout)'))
def histogram_command(args, out):
    """Histogram of n^(1/4) f_n(x0): bin_lo,bin_hi,count."""
    hist = histogram_values(args.x0, args.nmax, args.bins)
    header = ['bin_lo', 'bin_hi', 'count']
    if args.out:
        write_csv(args.out, header, hist.rows())
    else:
        _emit(out, header, hist.rows())
    if args.check:
        get_config().check('histogram_symmetry',
                           abs(hist.mean) / hist.std,
                           upper='histogram_symmetry')


@commands('verify-interp',
          arg('--t', type=float, required=True),
          arg('--x', type=float, nargs='+', default=[0.2, 0.7, 1.3, 2.1]),
          arg('--ntrunc', type=int))
def verify_interp_command(args, out):
    """Interpolation error for a self-dual Gaussian pair."""
    report = verify_interpolation(args.t, args.x, args.ntrunc)
    _emit(out, ['x', 'error'], report.errors)
    out.write('max_error,{}\n'.format(format_number(report.max_error)))
    if args.check:
        get_config().check('interpolation', report.max_error,
                           upper='interp_max_error')


@commands('figure',
          arg('--id', required=True, dest='figure_id',
              choices=sorted(figures.names)),
          arg('--out-dir', default='.'),
          arg('--param', action='append', default=[], metavar='KEY=VALUE',
              help='override a figure parameter'))
def figure_command(args, out):
    """Reproduce a figure as CSV, SVG and a JSON sidecar."""
    params = {}
    for item in args.param:
        if '=' not in item:
            raise UsageError('--param expects KEY=VALUE, got {!r}'.format(
                item))
        key, value = item.split('=', 1)
        params[key.strip()] = value.strip()
    spec = FigureSpec(args.figure_id, args.out_dir, params)
    sidecar = emit_figure(spec)
    out.write('{}\n'.format(spec.csv_path))
    if args.check:
        config = get_config()
        if spec.id == 'bulk':
            config.check('bulk_max', sidecar['global_max'],
                         upper='bulk_max')
        elif spec.id == 'l2norms':
            config.check('l2norm_ratio', sidecar['min_ratio'],
                         'l2norm_ratio_lo')
            config.check('l2norm_ratio', sidecar['max_ratio'],
                         upper='l2norm_ratio_hi')


# -- entry points -------------------------------------------------------------

def _configure(args: argparse.Namespace) -> Config:
    overrides = {}  # type: Dict[str, Any]
    if args.cache_dir:
        overrides['cache_dir'] = args.cache_dir
    if args.threads:
        overrides['threads'] = args.threads
    if args.config:
        return Config.from_file(args.config, **overrides)
    return Config(**overrides)


def cli_dispatch(argv: Optional[Sequence[str]]=None,
                 out: Optional[IO[str]]=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    out = out or sys.stdout
    parser = commands.parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if not exc.code else EXIT_INVALID

    if not logging.getLogger().handlers:
        level = [logging.WARNING, logging.INFO, logging.DEBUG][
            min(args.verbose, 2)]
        logging.basicConfig(level=level,
                            format='%(levelname)s %(name)s: %(message)s')

    previous = get_config()
    try:
        set_config(_configure(args))
        return args.command(args, out)
    except ToleranceFailure as exc:
        logger.error('check failed: %s', exc)
        return EXIT_TOLERANCE
    except (SqrtLatError, OSError) as exc:
        logger.error('%s', exc)
        sys.stderr.write('sqrtlat: error: {}\n'.format(exc))
        return EXIT_INVALID
    finally:
        set_config(previous)


def main() -> None:
    sys.exit(cli_dispatch())
