# -*- coding: utf-8 -*-
"""Zeros, moments and value statistics of the basis functions.

``h_n(x) = f_n(x) / sin(pi (x - n))`` removes the sine-type zeros at the
integers; its zeros are the extraneous zeros of ``f_n``.

"""

import cmath
import logging
import math
from typing import Any, Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .basis import (THIRD_REGIME_CONSTANT, CollocationSolver, arc_quadrature,
                    h_laplace, h_phi_approx, phi_approx_error, solver_for)
from .config import get_config
from .exceptions import DomainError, NearZeroError
from .quadrature import PANEL_NODES
from .utils import at_least_or_error, int_or_error, nonnegative_or_error, \
    positive_or_error

logger = logging.getLogger(__name__)

#: Half-width of the excluded neighbourhood of each integer.
INTEGER_GAP = 1e-3


class Window(NamedTuple):
    kind: str
    bounds: Tuple[float, ...]


class ZeroReport(NamedTuple):
    n: int
    window: Window
    count: int
    real_zeros: List[float]
    winding_samples: int
    warnings: List[str] = []

    def row(self) -> List[Any]:
        """``n,kind,a,b,count``; ``a, b`` are the first two bounds."""
        return [self.n, self.window.kind, self.window.bounds[0],
                self.window.bounds[1], self.count]


class MomentResult(NamedTuple):
    index: int
    interval: Tuple[float, float]
    value: float
    panels: int
    err: float

    def row(self) -> List[Any]:
        """``n,a,b,value,err``."""
        return [self.index, self.interval[0], self.interval[1], self.value,
                self.err]


def _near_integer(x: float) -> bool:
    return abs(x - round(x)) < INTEGER_GAP


class HEvaluator(object):
    """``h_n`` on the positive real axis, by the cheapest method whose
    error is below ``tol``: the Phi approximation, the cusp-1 series for
    ``x > n``, or a collocation value divided by the sine (averaged over
    ``x +- 1e-3`` next to integers).

    :param n:  The basis index.
    :param solver:  Collocation solver to start with; widened on demand.
    :param tol:  Error budget of the series methods (default: the
                 ``h_method_error`` tolerance).

    """

    def __init__(self, n: int, solver: Optional[CollocationSolver]=None,
                 tol: Optional[float]=None, eps: float=0.05) -> None:
        self.n = nonnegative_or_error('n', int_or_error('n', n))
        self._solver = solver
        self.tol = tol if tol is not None else \
            get_config().tolerance('h_method_error')
        self.eps = eps

    def solver(self, x_max: float=0.0) -> CollocationSolver:
        """A solver trusted for ``n`` and resolving abscissas ``<= x_max``."""
        needed = max(self.n, int(math.ceil(x_max)))
        if self._solver is None or self._solver.trusted_max < needed:
            self._solver = solver_for(needed)
        return self._solver

    def _phi_valid(self, x: float) -> bool:
        n = self.n
        return (n >= 1 and math.sqrt(x) > (1 / 3 + self.eps) * math.sqrt(n)
                and phi_approx_error(n, x) < self.tol)

    def method_for(self, x: float) -> str:
        if self._phi_valid(x):
            return 'phi_approx'
        n = self.n
        if (x > n and n <= get_config().exact_max_n and
                math.sqrt(x) - math.sqrt(n) >= 0.5):
            return 'laplace'
        return 'collocation'

    def _collocation_h(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        shifted = xs.copy()
        near = np.array([_near_integer(x) for x in xs], dtype=bool)
        shifted[near] = np.round(xs[near])
        points = np.concatenate([shifted[~near], shifted[near] - INTEGER_GAP,
                                 shifted[near] + INTEGER_GAP])
        if not len(points):
            return np.empty(0)
        f = self.solver(points.max()).values(points)[self.n].real
        h = f / np.sin(np.pi * (points - self.n))

        out = np.empty(len(xs))
        k = int((~near).sum())
        m = int(near.sum())
        out[~near] = h[:k]
        out[near] = (h[k:k + m] + h[k + m:]) / 2
        return out

    def values(self, xs: Sequence[float]) -> Tuple[np.ndarray, List[str]]:
        """``h_n`` on an array and the method used for each point."""
        xs = np.asarray(xs, dtype=float).ravel()
        if np.any(xs < 0):
            raise DomainError('x', 'non-negative', float(xs.min()))
        methods = [self.method_for(x) for x in xs]
        out = np.empty(len(xs))
        colloc = np.array([m == 'collocation' for m in methods], dtype=bool)
        if colloc.any():
            out[colloc] = self._collocation_h(xs[colloc])
        for i in np.flatnonzero(~colloc):
            if methods[i] == 'phi_approx':
                out[i] = h_phi_approx(self.n, xs[i], self.eps).value
            else:
                out[i] = h_laplace(self.n, xs[i]).value
        return out, methods

    def __call__(self, x: float) -> float:
        return float(self.values([x])[0][0])

    def f_values(self, xs: Sequence[float]) -> np.ndarray:
        """``f_n = sin(pi (x - n)) h_n``, with collocation values used as
        they are.

        """
        xs = np.asarray(xs, dtype=float).ravel()
        h, methods = self.values(xs)
        out = np.sin(np.pi * (xs - self.n)) * h
        colloc = np.array([m == 'collocation' for m in methods], dtype=bool)
        if colloc.any():
            points = xs[colloc]
            out[colloc] = self.solver(points.max()).values(points)[self.n].real
        return out

    def complex_value(self, z: complex) -> complex:
        """``h_n(z)`` off the real axis: the Phi approximation where it is
        accurate to ``1e-6``, contour quadrature divided by the sine
        elsewhere.

        """
        z = complex(z)
        n = self.n
        root = cmath.sqrt(z)
        if (n >= 1 and root.real > (1 / 3 + self.eps) * math.sqrt(n) and
                phi_approx_error(n, z) < 1e-6):
            return complex(h_phi_approx(n, z, self.eps).value)
        value = arc_quadrature(n)(z)
        return value / cmath.sin(math.pi * (z - n))

    def __repr__(self) -> str:
        return '{}(n={}, tol={})'.format(self.__class__.__name__, self.n,
                                         self.tol)


# -- real zeros ---------------------------------------------------------------

def _bisect(func: Callable[[float], float], lo: float, hi: float,
            f_lo: float, tol: float=1e-10) -> float:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        f_mid = func(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2


def real_zeros(n: int, a: float, b: float, grid_step: float=0.05,
               evaluator: Optional[HEvaluator]=None) -> ZeroReport:
    """Real zeros of ``h_n`` in ``[a, b]`` by a sign-change scan refined
    with bisection to ``1e-10``.

    Grid points within ``1e-3`` of an integer are moved off it. Sign
    changes whose refined point does not satisfy ``|h_n| <
    h_zero_residual`` (the pole at ``x = n``) are reported as warnings.

    :raises DomainError:  Unless ``0 < a < b`` and ``grid_step > 0``.

    """
    n = nonnegative_or_error('n', int_or_error('n', n))
    if not 0 < a < b:
        raise DomainError('(a, b)', 'ordered with 0 < a < b', (a, b))
    grid_step = positive_or_error('grid_step', grid_step)
    hev = evaluator or HEvaluator(n)
    residual = get_config().tolerance('h_zero_residual')

    grid = np.arange(a, b + grid_step / 2, grid_step)
    grid = np.array([x + INTEGER_GAP if _near_integer(x) else x
                     for x in grid])
    grid = grid[grid <= b]
    values, _ = hev.values(grid)

    zeros, warnings = [], []  # type: List[float], List[str]
    for i in range(len(grid) - 1):
        lo, hi = grid[i], grid[i + 1]
        if values[i] == 0:
            zeros.append(float(lo))
            continue
        if (values[i] > 0) == (values[i + 1] > 0):
            continue
        root = _bisect(hev, lo, hi, values[i])
        if abs(hev(root)) < residual:
            if not zeros or root - zeros[-1] > 1e-6:
                zeros.append(root)
        else:
            message = 'sign change without a zero in [{:.6g}, {:.6g}]'.format(
                lo, hi)
            warnings.append(message)
            logger.warning('h_%d: %s', n, message)

    return ZeroReport(n, Window('real_interval', (a, b)), len(zeros), zeros,
                      len(grid), warnings)


# -- winding numbers ----------------------------------------------------------

class _Tracker(object):
    """Accumulates the argument of ``func`` along a polygon, splitting
    segments until each increment is below ``pi/2``.

    """

    def __init__(self, func: Callable[[complex], complex],
                 min_length: float=1e-6, max_depth: int=40) -> None:
        self.func = func
        self.min_length = min_length
        self.max_depth = max_depth
        self.samples = 0

    def value(self, z: complex) -> complex:
        self.samples += 1
        f = complex(self.func(z))
        if f == 0 or not cmath.isfinite(f):
            raise NearZeroError(z)
        return f

    def segment(self, p: complex, fp: complex, q: complex, fq: complex,
                depth: int=0) -> float:
        delta = cmath.phase(fq / fp)
        if abs(delta) < math.pi / 2:
            return delta
        if abs(q - p) < self.min_length or depth >= self.max_depth:
            raise NearZeroError((p + q) / 2)
        mid = (p + q) / 2
        fm = self.value(mid)
        return (self.segment(p, fp, mid, fm, depth + 1) +
                self.segment(mid, fm, q, fq, depth + 1))

    def winding(self, vertices: Sequence[complex],
                samples_per_edge: int) -> float:
        points = []  # type: List[complex]
        closed = list(vertices) + [vertices[0]]
        for start, end in zip(closed, closed[1:]):
            for k in range(samples_per_edge):
                points.append(start + (end - start) * k / samples_per_edge)
        values = [self.value(z) for z in points]
        points.append(points[0])
        values.append(values[0])
        total = 0.0
        for i in range(len(points) - 1):
            total += self.segment(points[i], values[i], points[i + 1],
                                  values[i + 1])
        return total / (2 * math.pi)


def _count(func: Callable[[complex], complex], vertices: Sequence[complex],
           samples_per_edge: int) -> Tuple[int, int]:
    integrality = get_config().tolerance('winding_integrality')
    for attempt in range(3):
        tracker = _Tracker(func)
        raw = tracker.winding(vertices, samples_per_edge)
        count = int(round(raw))
        if abs(raw - count) <= integrality:
            return count, tracker.samples
        logger.debug('winding %.6f not integral, refining', raw)
        samples_per_edge *= 2
    raise NearZeroError(vertices[0])


def _nudged(build: Callable[[float], Tuple[Callable, List[complex]]],
            samples_per_edge: int, retries: int=5) -> Tuple[int, int, int]:
    for attempt in range(retries + 1):
        func, vertices = build(attempt * 1e-3)
        try:
            count, samples = _count(func, vertices, samples_per_edge)
            return count, samples, attempt
        except NearZeroError as exc:
            if attempt == retries:
                raise
            logger.info('zero near the contour at %s, nudging', exc.point)


def count_zeros_delta(n: int, t1: float, t2: float,
                      samples_per_edge: int=64) -> ZeroReport:
    """Number of zeros of ``h_n`` in the region whose image under
    ``w = (sqrt z - sqrt n)^2`` is ``t1 < Re w < t2, |Im w| < log n``.

    The boundary is traversed in the ``w`` coordinate; on a near-contour
    zero the rectangle is nudged by ``1e-3`` (up to five times).

    :raises DomainError:  Unless ``3 <= t1 < t2 <= n/2``.

    """
    n = positive_or_error('n', int_or_error('n', n))
    if not 3 <= t1 < t2 <= n / 2:
        raise DomainError('(t1, t2)', 'with 3 <= t1 < t2 <= n/2', (t1, t2))
    hev = HEvaluator(n)
    root_n = math.sqrt(n)

    def build(shift):
        lo, hi, height = t1 + shift, t2 + shift, math.log(n) + shift

        def func(w):
            return hev.complex_value((root_n - cmath.sqrt(w)) ** 2)

        return func, [complex(lo, -height), complex(hi, -height),
                      complex(hi, height), complex(lo, height)]

    count, samples, nudges = _nudged(build, samples_per_edge)
    warnings = ['contour nudged {} times'.format(nudges)] if nudges else []
    return ZeroReport(n, Window('delta_window', (t1, t2)), count, [], samples,
                      warnings)


def count_zeros_rectangle(n: int, r: float,
                          samples_per_edge: Optional[int]=None) -> ZeroReport:
    """Number of zeros of ``f_n`` (the integer zeros included) in
    ``-1e-3 <= Re z <= r + 1e-3, |Im z| <= r`` from contour values.

    The quadrature table is calibrated once at the corner with the largest
    cancellation and reused along the boundary.

    :raises DomainError:  Unless ``10 <= r <= n/8``.

    """
    n = positive_or_error('n', int_or_error('n', n))
    if not 10 <= r <= n / 8:
        raise DomainError('r', 'in [10, n/8]', r)
    quad = arc_quadrature(n)
    corner = complex(-INTEGER_GAP, r)
    calibrated = quad.evaluate(corner)
    panels = calibrated.nodes // PANEL_NODES
    samples_per_edge = samples_per_edge or int(4 * r) + 16

    def build(shift):
        lo, hi, height = -INTEGER_GAP - shift, r + INTEGER_GAP + shift, \
            r + shift

        def func(z):
            return quad.sample(z, panels, calibrated.bits)

        return func, [complex(lo, -height), complex(hi, -height),
                      complex(hi, height), complex(lo, height)]

    count, samples, nudges = _nudged(build, samples_per_edge)
    warnings = ['contour nudged {} times'.format(nudges)] if nudges else []
    return ZeroReport(n, Window('rectangle', (-INTEGER_GAP, r + INTEGER_GAP,
                                              -r, r)),
                      count, [], samples, warnings)


# -- moments ------------------------------------------------------------------

def _panel_nodes(a: float, b: float, width: float,
                 nodes: int) -> Tuple[np.ndarray, np.ndarray, int]:
    t, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.arange(a, b, width)
    widths = np.minimum(edges + width, b) - edges
    xs = (edges[:, None] + widths[:, None] * (t[None, :] + 1) / 2).ravel()
    weights = (widths[:, None] * w[None, :] / 2).ravel()
    return xs, weights, len(edges)


def _squared_integrals(solver: CollocationSolver, rows: Sequence[int],
                       a: float, b: float, width: float,
                       nodes: int) -> Tuple[np.ndarray, int]:
    xs, weights, panels = _panel_nodes(a, b, width, nodes)
    values = solver.values(xs)[list(rows)].real
    return (values ** 2) @ weights, panels


def moment_fn(n: int, a: float, b: float,
              solver: Optional[CollocationSolver]=None,
              nodes: int=8) -> MomentResult:
    """``int_a^b f_n(x)^2 dx`` by Gauss-Legendre on unit panels from
    collocation values; ``err`` is the change under panel halving.

    :raises DomainError:  Unless ``0 <= a <= b``.

    """
    n = nonnegative_or_error('n', int_or_error('n', n))
    if not 0 <= a <= b:
        raise DomainError('(a, b)', 'ordered with 0 <= a <= b', (a, b))
    if a == b:
        return MomentResult(n, (a, b), 0.0, 0, 0.0)
    solver = solver or solver_for(max(n, int(math.ceil(b))))
    coarse, _ = _squared_integrals(solver, [n], a, b, 1.0, nodes)
    fine, panels = _squared_integrals(solver, [n], a, b, 0.5, nodes)
    err = abs(float(fine[0] - coarse[0]))
    return MomentResult(n, (a, b), float(fine[0]), panels, err)


def default_cut(n: int) -> float:
    return n + 40 * math.sqrt(n)


def third_regime_tail(n: int, x_cut: float) -> float:
    """``int_{x_cut}^inf`` of the squared third-regime approximation,
    averaged over the sine: ``c^2/n e^(-k(U - sqrt n)) (U/k + 1/k^2)``
    with ``U = sqrt(x_cut)``, ``k = 2 pi sqrt 3``.

    """
    k = 2 * math.pi * math.sqrt(3)
    U = math.sqrt(x_cut)
    return THIRD_REGIME_CONSTANT ** 2 / max(n, 1) * \
        math.exp(-k * (U - math.sqrt(n))) * (U / k + 1 / k ** 2)


def l2_norm(n: int, x_cut: Optional[float]=None,
            solver: Optional[CollocationSolver]=None) -> MomentResult:
    """``int_0^x_cut f_n^2`` with the analytic tail beyond ``x_cut``
    (default ``n + 40 sqrt n``) added to ``err``.

    """
    x_cut = x_cut if x_cut is not None else default_cut(n)
    result = moment_fn(n, 0.0, x_cut, solver)
    return result._replace(err=result.err + third_regime_tail(n, x_cut))


class L2Sum(NamedTuple):
    moment: MomentResult
    per_log: float
    per_log2: float


def l2_sum(xi: int, x_cut: Optional[float]=None, nodes: int=8) -> L2Sum:
    """``sum_{n <= xi} int_0^x_cut f_n^2`` from one batched solve, with the
    value divided by ``xi log xi`` and by ``xi log^2 xi``.

    :raises DomainError:  If ``xi < 2``.

    """
    xi = at_least_or_error('xi', int_or_error('xi', xi), 2)
    x_cut = x_cut if x_cut is not None else default_cut(xi)
    solver = solver_for(max(xi, int(math.ceil(x_cut))))
    rows = list(range(xi + 1))
    coarse, _ = _squared_integrals(solver, rows, 0.0, x_cut, 1.0, nodes)
    fine, panels = _squared_integrals(solver, rows, 0.0, x_cut, 0.5, nodes)
    value = float(fine.sum())
    tail = sum(third_regime_tail(n, x_cut) for n in rows)
    err = float(abs(fine.sum() - coarse.sum())) + tail
    moment = MomentResult(xi, (0.0, x_cut), value, panels, err)
    log = math.log(xi)
    return L2Sum(moment, value / (xi * log), value / (xi * log ** 2))


# -- histogram, interpolation, sup scan ---------------------------------------

class Histogram(NamedTuple):
    values: np.ndarray
    edges: np.ndarray
    counts: np.ndarray

    def rows(self) -> List[Tuple[float, float, int]]:
        """``bin_lo,bin_hi,count``."""
        return [(float(lo), float(hi), int(c)) for lo, hi, c in
                zip(self.edges[:-1], self.edges[1:], self.counts)]

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def std(self) -> float:
        return float(np.std(self.values))


def histogram_values(x0: float, n_max: int, bins: int=50,
                     solver: Optional[CollocationSolver]=None) -> Histogram:
    """``n^(1/4) f_n(x0)`` for ``1 <= n <= n_max`` from one solve, binned on
    ``[-max|v|, max|v|]``.

    :raises DomainError:  If ``x0 < 0`` or ``n_max < 100``.

    """
    x0 = nonnegative_or_error('x0', x0)
    n_max = at_least_or_error('n_max', int_or_error('n_max', n_max), 100)
    bins = positive_or_error('bins', int_or_error('bins', bins))
    solver = solver or solver_for(n_max)
    column = solver.values([x0])[1:n_max + 1, 0].real
    n = np.arange(1, n_max + 1)
    values = n ** 0.25 * column
    top = float(np.max(np.abs(values)))
    counts, edges = np.histogram(values, bins=bins, range=(-top, top))
    return Histogram(values, edges, counts)


def gaussian_pair(t: float, x: Any) -> Any:
    """``e^(-pi t x^2) + t^(-1/2) e^(-pi x^2 / t)``, its own Fourier
    transform.

    """
    return np.exp(-np.pi * t * x ** 2) + np.exp(-np.pi * x ** 2 / t) / \
        np.sqrt(t)


def interpolation_truncation(t: float, tail: float=1e-10) -> int:
    rate = math.pi * min(t, 1 / t)
    return int(math.ceil(math.log(10 / tail) / rate)) + 1


class InterpolationReport(NamedTuple):
    t: float
    n_trunc: int
    max_error: float
    errors: List[Tuple[float, float]]


def verify_interpolation(t: float, x_grid: Sequence[float],
                         n_trunc: Optional[int]=None,
                         solver: Optional[CollocationSolver]=None
                         ) -> InterpolationReport:
    """``max |G(x) - sum_{n <= n_trunc} G(sqrt n) f_n(x^2)|`` over
    ``x_grid`` for the self-dual Gaussian pair ``G`` of parameter ``t``.

    :raises DomainError:  If ``t <= 0``.

    """
    t = positive_or_error('t', t)
    n_trunc = n_trunc or interpolation_truncation(t)
    xs = np.asarray(x_grid, dtype=float)
    solver = solver or solver_for(max(n_trunc, int(math.ceil(xs.max() ** 2))))
    if n_trunc > solver.trusted_max:
        raise DomainError('n_trunc', '<= {}'.format(solver.trusted_max),
                          n_trunc)
    samples = gaussian_pair(t, np.sqrt(np.arange(n_trunc + 1)))
    values = solver.values(xs ** 2)[:n_trunc + 1].real
    approx = samples @ values
    errors = np.abs(gaussian_pair(t, xs) - approx)
    return InterpolationReport(t, n_trunc, float(errors.max()),
                               [(float(x), float(e)) for x, e in
                                zip(xs, errors)])


class SupScan(NamedTuple):
    ns: List[int]
    maxima: List[float]

    @property
    def global_max(self) -> float:
        return max(self.maxima)


def sup_scan(n_lo: int, n_hi: int, x_grid: Sequence[float],
             solver: Optional[CollocationSolver]=None) -> SupScan:
    """``max_x |f_n(x)|`` over ``x_grid`` for ``n_lo <= n <= n_hi``."""
    n_lo = nonnegative_or_error('n_lo', int_or_error('n_lo', n_lo))
    n_hi = at_least_or_error('n_hi', int_or_error('n_hi', n_hi), n_lo)
    solver = solver or solver_for(n_hi)
    values = solver.values(x_grid)[n_lo:n_hi + 1].real
    maxima = np.max(np.abs(values), axis=1)
    return SupScan(list(range(n_lo, n_hi + 1)), [float(m) for m in maxima])


def l2_norms(n_max: int, n_min: int=2,
             x_cut: Optional[float]=None) -> List[MomentResult]:
    """``int_0^x_cut f_n^2`` for ``n_min <= n <= n_max`` from one batched
    solve, cut at ``n_max + 40 sqrt(n_max)`` by default.

    """
    n_min = nonnegative_or_error('n_min', int_or_error('n_min', n_min))
    n_max = at_least_or_error('n_max', int_or_error('n_max', n_max), n_min)
    x_cut = x_cut if x_cut is not None else default_cut(n_max)
    solver = solver_for(max(n_max, int(math.ceil(x_cut))))
    rows = list(range(n_min, n_max + 1))
    coarse, _ = _squared_integrals(solver, rows, 0.0, x_cut, 1.0, 8)
    fine, panels = _squared_integrals(solver, rows, 0.0, x_cut, 0.5, 8)
    return [MomentResult(n, (0.0, x_cut), float(v), panels,
                         float(abs(v - c)) + third_regime_tail(n, x_cut))
            for n, v, c in zip(rows, fine, coarse)]
