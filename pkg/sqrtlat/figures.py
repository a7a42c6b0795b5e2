# -*- coding: utf-8 -*-
"""Figure drivers: each figure writes a CSV table (the contract), an SVG
rendering and a JSON sidecar with summary values.

"""

import csv
import json
import logging
import math
import os
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, \
    Sequence

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analysis import histogram_values, l2_norms, sup_scan  # noqa: E402
from .basis import eval_phi_approx, solver_for  # noqa: E402
from .config import get_config  # noqa: E402
from .exceptions import DomainError  # noqa: E402

logger = logging.getLogger(__name__)

plt.rcParams['svg.hashsalt'] = 'sqrtlat'


def format_number(value: Any) -> str:
    """17 significant digits for floats, plain text otherwise."""
    if isinstance(value, (float, np.floating)):
        return '{:.17g}'.format(float(value))
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return str(value)


def write_csv(path: str, header: Sequence[str],
              rows: Iterable[Sequence[Any]]) -> int:
    count = 0
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(v) for v in row])
            count += 1
    return count


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """``start, start + step, ..., stop`` with a count fixed by rounding."""
    count = int(round((stop - start) / step)) + 1
    return start + step * np.arange(count)


class Table(NamedTuple):
    name: str
    header: List[str]
    rows: List[List[Any]]


class FigureData(NamedTuple):
    tables: List[Table]
    draw: Callable[[Any], None]
    summary: Dict[str, Any]


class FigureSpec(object):
    """A figure id with its parameters and output directory.

    :param id:  A registered figure id.
    :param out_dir:  Directory for ``<id>.csv``, ``<id>.svg`` and
                     ``<id>.json``.
    :param params:  Overrides of the figure's default parameters.

    :raises DomainError:  For unknown ids or parameters.

    """

    def __init__(self, id: str, out_dir: str='.',
                 params: Optional[Dict[str, Any]]=None) -> None:
        if id not in figures:
            raise DomainError('figure id', 'one of {}'.format(
                sorted(figures.names)), id)
        self.id = id
        self.out_dir = out_dir
        self.params = dict(figures.defaults(id))
        for key, value in (params or {}).items():
            if key not in self.params:
                raise DomainError('figure parameter', 'one of {}'.format(
                    sorted(self.params)), key)
            kind = type(self.params[key])
            try:
                self.params[key] = kind(value)
            except (TypeError, ValueError):
                raise DomainError(key, 'of type {}'.format(kind.__name__),
                                  value)

    def path(self, suffix: str, name: Optional[str]=None) -> str:
        return os.path.join(self.out_dir, (name or self.id) + suffix)

    @property
    def csv_path(self) -> str:
        return self.path('.csv')

    @property
    def svg_path(self) -> str:
        return self.path('.svg')

    @property
    def sidecar_path(self) -> str:
        return self.path('.json')

    def __repr__(self) -> str:
        return "{n}('{i}', out_dir={o!r}, params={p!r})".format(
            n=self.__class__.__name__, i=self.id, o=self.out_dir,
            p=self.params)


class FigureRegistry(object):
    """Figure builders by id, registered with a decorator carrying the
    default parameters.

    """

    def __init__(self) -> None:
        self._builders = {}  # type: Dict[str, Callable[..., FigureData]]
        self._defaults = {}  # type: Dict[str, Dict[str, Any]]

    def __call__(self, id: str, **defaults) -> Callable:
        def inner(func: Callable[..., FigureData]) -> Callable:
            self._builders[id] = func
            self._defaults[id] = defaults
            return func
        return inner

    def __contains__(self, id: str) -> bool:
        return id in self._builders

    @property
    def names(self) -> List[str]:
        return list(self._builders)

    def defaults(self, id: str) -> Dict[str, Any]:
        return self._defaults[id]

    def build(self, spec: FigureSpec) -> FigureData:
        return self._builders[spec.id](**spec.params)


figures = FigureRegistry()


@figures('f500', n=500, x_min=350.0, x_max=700.0, step=0.1)
def f500(n: int, x_min: float, x_max: float, step: float) -> FigureData:
    """``f_n`` from collocation against the Phi approximation."""
    xs = grid(x_min, x_max, step)
    solver = solver_for(max(n, int(math.ceil(x_max))))
    f = solver.values(xs)[n].real
    approx = np.array([eval_phi_approx(n, x).value for x in xs])
    rows = [[x, v, a] for x, v, a in zip(xs, f, approx)]

    def draw(ax):
        ax.plot(xs, f, color='tab:blue', linewidth=0.6, label='f_{}'.format(n))
        ax.plot(xs, approx, color='tab:red', linewidth=0.6,
                label='Phi approximation')
        ax.set_xlabel('x')
        ax.legend()

    summary = {'max_abs_difference': float(np.max(np.abs(f - approx)))}
    return FigureData([Table('f500', ['x', 'f', 'phi_approx'], rows)], draw,
                      summary)


@figures('bulk', n_min=100, n_max=150, x_min=0.0, x_max=2.0, step=0.01)
def bulk(n_min: int, n_max: int, x_min: float, x_max: float,
         step: float) -> FigureData:
    """``f_n`` for a block of indices on a short interval."""
    xs = grid(x_min, x_max, step)
    solver = solver_for(n_max)
    values = solver.values(xs)[n_min:n_max + 1].real
    ns = list(range(n_min, n_max + 1))
    header = ['x'] + ['f_{}'.format(n) for n in ns]
    rows = [[x] + list(values[:, k]) for k, x in enumerate(xs)]
    scan = sup_scan(n_min, n_max, xs, solver)

    def draw(ax):
        for series in values:
            ax.plot(xs, series, linewidth=0.4)
        ax.set_xlabel('x')

    return FigureData([Table('bulk', header, rows)], draw,
                      {'global_max': scan.global_max, 'series': len(ns)})


@figures('histogram', x0=0.63, n_max=2000, bins=50)
def histogram(x0: float, n_max: int, bins: int) -> FigureData:
    """Histogram of ``n^(1/4) f_n(x0)``."""
    hist = histogram_values(x0, n_max, bins)
    value_rows = [[n, v] for n, v in enumerate(hist.values, start=1)]

    def draw(ax):
        ax.hist(hist.values, bins=hist.edges, color='tab:blue')
        ax.set_xlabel('n^(1/4) f_n({})'.format(x0))

    summary = {'values': len(hist.values), 'mean': hist.mean,
               'std': hist.std,
               'max_abs': float(np.max(np.abs(hist.values)))}
    return FigureData([Table('histogram', ['bin_lo', 'bin_hi', 'count'],
                             [list(r) for r in hist.rows()]),
                       Table('histogram_values', ['n', 'value'], value_rows)],
                      draw, summary)


@figures('l2norms', n_min=2, n_max=300)
def l2norms(n_min: int, n_max: int) -> FigureData:
    """``int f_n^2`` against ``c log n`` with ``c`` the
    ``l2norm_coefficient`` setting (0.6 by default).

    """
    moments = l2_norms(n_max, n_min)
    ns = np.array([m.index for m in moments])
    values = np.array([m.value for m in moments])
    coefficient = get_config().tolerance('l2norm_coefficient')
    reference = coefficient * np.log(ns)
    rows = [[n, v, r] for n, v, r in zip(ns, values, reference)]

    def draw(ax):
        ax.plot(ns, values, color='tab:blue', linewidth=0.8,
                label='integral')
        ax.plot(ns, reference, color='tab:red', linewidth=0.8,
                label='{:g} log n'.format(coefficient))
        ax.set_xlabel('n')
        ax.legend()

    ratios = values / reference
    summary = {'coefficient': coefficient,
               'min_ratio': float(ratios.min()),
               'max_ratio': float(ratios.max())}
    return FigureData([Table('l2norms', ['n', 'integral', '0.6log_n'], rows)],
                      draw, summary)


def emit_figure(spec: FigureSpec) -> Dict[str, Any]:
    """Build a figure and write its files.

    :returns:  The sidecar document.
    :raises OSError:  If the output directory is not writable.

    """
    os.makedirs(spec.out_dir, exist_ok=True)
    data = figures.build(spec)

    counts = {}
    for table in data.tables:
        path = spec.path('.csv', table.name)
        counts[table.name] = write_csv(path, table.header, table.rows)
        logger.info('wrote %s (%d rows)', path, counts[table.name])

    fig, ax = plt.subplots(figsize=(10, 4))
    try:
        data.draw(ax)
        ax.set_title(spec.id)
        fig.savefig(spec.svg_path, format='svg', metadata={'Date': None})
    finally:
        plt.close(fig)

    sidecar = {'id': spec.id, 'params': spec.params, 'rows': counts}
    sidecar.update(data.summary)
    with open(spec.sidecar_path, 'w') as handle:
        json.dump(sidecar, handle, indent=2, sort_keys=True)
    return sidecar
