# -*- coding: utf-8 -*-
"""Evaluation of the interpolation basis ``f_n``.

Four routes are available:

* ``collocation``: truncate the functional equation of the generating
  function ``F(tau, x) = sum_n f_n(x) e^(pi i n tau)`` and enforce it at
  equally spaced points of a horizontal segment. One factorization serves
  every ``x >= 0``.
* ``contour``: ``f_n(z) = 1/2 int g_n(w) e^(pi i w z) dw`` over the upper
  unit semicircle, in multi-precision arithmetic, for any complex ``z``.
* ``laplace``: the cusp-1 expansion of ``g_n`` integrated termwise, for
  ``x > n``.
* ``phi_approx``: ``sin(pi (z - n)) Phi(sqrt z - sqrt n) / sqrt n``, for
  ``Re sqrt z > (1/3 + eps) sqrt n``.

"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.linalg.lapack import zgecon

from .cache import Memo, store
from .config import get_config
from .exceptions import ConditioningError, DomainError, PoleError
from .group import as_point
from .modular import as_mp, g_cusp1_coefficients, g_value, kernel_K
from .quadrature import ArcQuadrature
from .special import default_phi
from .utils import (at_least_or_error, int_or_error, nonnegative_or_error,
                    parse_method, positive_or_error)

logger = logging.getLogger(__name__)

#: Relative margin of the third-regime formula over the Phi series' first
#: term: ``Phi(w) ~ e^(-pi sqrt(3) w) / sqrt(3/4)``.
THIRD_REGIME_CONSTANT = 2 / math.sqrt(3)


class EvalResult(NamedTuple):
    """One value of ``f_n``.

    ``err`` is a heuristic error estimate; ``trusted`` is False for
    collocation entries inside the truncation buffer.

    """
    n: int
    x: Any
    value: Any
    method: str
    err: float
    trusted: bool = True


def trusted_max(N: int) -> int:
    """Largest index a truncation ``N`` solve is trusted for."""
    return min(N - 50, int(N / 1.2))


def truncation_for(n_max: int) -> int:
    """Smallest truncation whose trusted range reaches ``n_max``."""
    return max(n_max + 50, int(math.ceil(1.2 * n_max)))


class CollocationSolver(object):
    """The factored collocation system for truncation ``N``.

    :param N:  Truncation: unknowns ``f_0 .. f_N``.
    :param height:  Imaginary part of the nodes, default from the config
                    (``10/N``).
    :param condition_max:  Largest accepted 1-norm condition estimate of
                           the column-equilibrated matrix.

    :raises DomainError:  If ``N < 8`` or ``height <= 0``.
    :raises ConditioningError:  If the condition estimate is too large.

    """

    def __init__(self, N: int, height: Optional[float]=None,
                 condition_max: Optional[float]=None) -> None:
        config = get_config()
        self.N = at_least_or_error('N', int_or_error('N', N), 8)
        self.height = positive_or_error(
            'height', height if height is not None else config.height(N))
        limit = condition_max or config.tolerance('condition_max')

        j = np.arange(N + 1)
        self.nodes = -1 + 2 * j / N + 1j * self.height
        self.indices = np.arange(N + 1)
        self.column_scale = np.exp(np.pi * self.indices * self.height)

        matrix = self._basis(self.indices) * self.column_scale[None, :]
        self.factored = lu_factor(matrix)
        anorm = np.linalg.norm(matrix, 1)
        rcond, info = zgecon(self.factored[0], anorm, norm='1')
        self.cond_estimate = float('inf') if rcond == 0 else 1 / rcond
        logger.debug('collocation N=%d height=%.4g cond=%.3e', self.N,
                     self.height, self.cond_estimate)
        if not self.cond_estimate <= limit:
            raise ConditioningError(self.N, self.height, self.cond_estimate,
                                    limit)

    @property
    def trusted_max(self) -> int:
        return trusted_max(self.N)

    def _basis(self, frequencies: np.ndarray) -> np.ndarray:
        tau = self.nodes[:, None]
        freq = np.asarray(frequencies, dtype=complex)[None, :]
        return (np.exp(1j * np.pi * freq * tau) +
                (tau / 1j) ** -0.5 * np.exp(-1j * np.pi * freq / tau))

    def solve(self, xs: np.ndarray) -> np.ndarray:
        """Solve for one batch of abscissas; returns ``(N + 1, len(xs))``
        complex coefficients.

        """
        rhs = self._basis(xs)
        return lu_solve(self.factored, rhs) * self.column_scale[:, None]

    def values(self, xs: Sequence[float], chunk: int=256) -> np.ndarray:
        """``f_n(x)`` for ``n = 0 .. N`` and every ``x``, complex (the
        imaginary part is the realness residual).

        """
        xs = np.asarray(xs, dtype=float).ravel()
        if np.any(xs < 0):
            raise DomainError('x', 'non-negative for collocation',
                              float(xs.min()))
        threads = get_config().threads
        if threads == 1 or len(xs) <= chunk:
            return self.solve(xs)
        parts = [xs[i:i + chunk] for i in range(0, len(xs), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return np.hstack(list(pool.map(self.solve, parts)))

    def feq_residual(self, coefficients: np.ndarray, tau: complex,
                     x: float) -> float:
        """Residual of ``F(tau) + (tau/i)^(-1/2) F(-1/tau) = e^(pi i x tau)
        + (tau/i)^(-1/2) e^(-pi i x / tau)`` for truncated coefficients.

        """
        tau = complex(tau)
        n = np.arange(len(coefficients))
        factor = (tau / 1j) ** -0.5
        lhs = (np.sum(coefficients * np.exp(1j * np.pi * n * tau)) +
               factor * np.sum(coefficients * np.exp(-1j * np.pi * n / tau)))
        rhs = np.exp(1j * np.pi * x * tau) + \
            factor * np.exp(-1j * np.pi * x / tau)
        return float(abs(lhs - rhs))

    def metadata(self) -> Dict[str, Any]:
        return {'N': self.N, 'height': self.height,
                'cond_estimate': self.cond_estimate}

    def __repr__(self) -> str:
        return '{n}(N={N}, height={h:.6g}, cond={c:.3e})'.format(
            n=self.__class__.__name__, N=self.N, h=self.height,
            c=self.cond_estimate)


_solvers = Memo('collocation_solvers')


def build_solver(N: int, height: Optional[float]=None) -> CollocationSolver:
    """A (memoised) :class:`CollocationSolver`; metadata is written to the
    cache as ``solver_{N}.json``.

    """
    key = (N, height)

    def build():
        solver = CollocationSolver(N, height)
        store.save('solver_{}'.format(solver.N), solver.metadata())
        return solver

    return _solvers.get_or_compute(key, build)


def solver_for(n_max: int, height: Optional[float]=None) -> CollocationSolver:
    """A solver whose trusted range covers ``0 .. n_max``."""
    n_max = nonnegative_or_error('n_max', int_or_error('n_max', n_max))
    return build_solver(max(truncation_for(n_max), 8), height)


def _realness(column: np.ndarray, limit: int) -> float:
    return float(np.max(np.abs(column[:limit + 1].imag)))


def eval_all(solver: CollocationSolver, x: float) -> List[EvalResult]:
    """``f_n(x)`` for ``n = 0 .. N``.

    :raises DomainError:  If ``x < 0`` (use :func:`eval_contour`).

    """
    x = nonnegative_or_error('x', float(x))
    column = solver.values([x])[:, 0]
    limit = solver.trusted_max
    worst = _realness(column, limit)
    if worst > get_config().tolerance('imag_residual'):
        logger.warning('collocation at x=%s: imaginary residual %.3e', x,
                       worst)
    return [EvalResult(n, x, float(value.real), 'collocation',
                       max(worst, abs(value.imag)), n <= limit)
            for n, value in enumerate(column)]


def eval_collocation(n: int, xs: Sequence[float],
                     solver: Optional[CollocationSolver]=None
                     ) -> List[EvalResult]:
    """``f_n`` at many abscissas through one factorization."""
    n = nonnegative_or_error('n', int_or_error('n', n))
    solver = solver or solver_for(n)
    if n > solver.N:
        raise DomainError('n', '<= N = {}'.format(solver.N), n)
    values = solver.values(xs)
    limit = solver.trusted_max
    rv = []
    for k, x in enumerate(np.asarray(xs, dtype=float).ravel()):
        column = values[:, k]
        err = max(_realness(column, limit), abs(column[n].imag))
        rv.append(EvalResult(n, float(x), float(column[n].real),
                             'collocation', err, n <= limit))
    return rv


_arcs = Memo('basis_arcs')


def arc_quadrature(n: int) -> ArcQuadrature:
    """The semicircle quadrature of ``g_n``, memoised per ``n``."""
    n = nonnegative_or_error('n', int_or_error('n', n))
    return _arcs.get_or_compute(n, lambda: ArcQuadrature(
        lambda w: g_value(n, w), order=n, name='f_{}'.format(n)))


def eval_contour(n: int, z: Any, precision_bits: Optional[int]=None,
                 tol: float=1e-12) -> EvalResult:
    """``f_n(z)`` for complex ``z`` by quadrature of ``g_n`` over the
    upper unit semicircle.

    :raises PrecisionError:  If the estimates do not settle below the
                             precision or node cap.

    """
    z = complex(z)
    quad = arc_quadrature(n)
    result = quad.evaluate(z, tol=tol, min_bits=precision_bits)
    value, err = result.value, result.err
    if z.imag == 0:
        err = max(err, abs(value.imag))
        value = value.real
    return EvalResult(n, z.real if z.imag == 0 else z, value, 'contour', err)


def contour_derivative(n: int, z: Any, tol: float=1e-12) -> complex:
    """``f_n'(z)`` by the same quadrature."""
    return arc_quadrature(n).derivative(z, tol)


def _laplace_terms(n: int, x: float, nu_max: int) -> List[Any]:
    coeffs = g_cusp1_coefficients(n, nu_max + 2)
    with mpmath.workprec(96):
        terms = []
        for nu, a in enumerate(coeffs):
            r = mpmath.sqrt(2 * (nu + mpmath.mpf(3) / 8))
            decay = mpmath.exp(-2 * mpmath.pi * mpmath.sqrt(x) * r)
            terms.append(as_mp(a) * decay / r)
    return terms


def default_nu_max(n: int, x: float, cap: int=4000) -> int:
    gap = math.sqrt(x) - math.sqrt(n)
    return min(cap, int((40 / (2 * math.pi * gap)) ** 2 / 2) + 8)


def eval_laplace(n: int, x: float, nu_max: Optional[int]=None) -> EvalResult:
    """``f_n(x)`` for ``x > n`` from the cusp-1 coefficients:
    ``sin(pi x) sum_nu a~_{n,nu} e^(-2 pi sqrt(2 x (nu + 3/8))) /
    sqrt(2 (nu + 3/8))``. The first omitted term is the error estimate.

    :raises DomainError:  If ``x <= n``.

    """
    n = nonnegative_or_error('n', int_or_error('n', n))
    x = float(x)
    if not x > n:
        raise DomainError('x', '> n = {}'.format(n), x)
    if nu_max is None:
        nu_max = default_nu_max(n, x)
    nu_max = nonnegative_or_error('nu_max', int_or_error('nu_max', nu_max))

    if x == int(x):
        return EvalResult(n, x, 0.0, 'laplace', 0.0)
    sine = math.sin(math.pi * x)
    terms = _laplace_terms(n, x, nu_max)
    value = float(mpmath.fsum(terms[:nu_max + 1])) * sine
    err = abs(float(terms[nu_max + 1]) * sine)
    return EvalResult(n, x, value, 'laplace', err)


def h_laplace(n: int, x: float, nu_max: Optional[int]=None) -> EvalResult:
    """``f_n(x) / sin(pi (x - n))`` from the cusp-1 series (no division)."""
    n = nonnegative_or_error('n', int_or_error('n', n))
    x = float(x)
    if not x > n:
        raise DomainError('x', '> n = {}'.format(n), x)
    if nu_max is None:
        nu_max = default_nu_max(n, x)
    terms = _laplace_terms(n, x, nu_max)
    sign = -1 if n % 2 else 1
    value = sign * float(mpmath.fsum(terms[:nu_max + 1]))
    return EvalResult(n, x, value, 'laplace', abs(float(terms[nu_max + 1])))


def phi_approx_error(n: int, z: Any) -> float:
    """``10 e^(pi sqrt(3) (sqrt(n)/3 - Re sqrt(z)))``."""
    root = cmath.sqrt(complex(z))
    return 10 * math.exp(math.pi * math.sqrt(3) *
                         (math.sqrt(n) / 3 - root.real))


def _phi_region_or_error(n: int, z: complex, eps: float) -> complex:
    root = cmath.sqrt(z)
    bound = (1 / 3 + eps) * math.sqrt(n)
    if not root.real > bound:
        raise DomainError('Re sqrt(z)', '> (1/3 + {}) sqrt(n) = {:.6g}'.format(
            eps, bound), root.real)
    return root


def h_phi_approx(n: int, z: Any, eps: float=0.05) -> EvalResult:
    """``Phi(sqrt z - sqrt n) / sqrt n``, the approximation of
    ``f_n(z) / sin(pi (z - n))``.

    :raises PoleError:  At ``z = n``.

    """
    n = positive_or_error('n', int_or_error('n', n))
    z = complex(z)
    root = _phi_region_or_error(n, z, eps)
    value = default_phi(root - math.sqrt(n)) / math.sqrt(n)
    return EvalResult(n, _plain(z), _plain(value, z), 'phi_approx',
                      phi_approx_error(n, z))


def eval_phi_approx(n: int, z: Any, eps: float=0.05) -> EvalResult:
    """``f_n(z)`` from the Phi approximation; the removable point ``z = n``
    is handled by the quotient form
    ``[sinc(d) (sqrt z + sqrt n) / 2 + sin(pi d) Phi_reg(w)] / sqrt n``
    with ``d = z - n`` and ``w = sqrt z - sqrt n``.

    :raises DomainError:  Outside ``Re sqrt z > (1/3 + eps) sqrt n``.

    """
    n = positive_or_error('n', int_or_error('n', n))
    z = complex(z)
    root = _phi_region_or_error(n, z, eps)
    w = root - math.sqrt(n)
    d = z - n
    if abs(w) <= 0.5:
        sinc = complex(np.sinc(d))
        value = (sinc * (root + math.sqrt(n)) / 2 +
                 cmath.sin(math.pi * d) * default_phi.regular_part(w))
    else:
        value = cmath.sin(math.pi * d) * default_phi(w)
    value /= math.sqrt(n)
    return EvalResult(n, _plain(z), _plain(value, z), 'phi_approx',
                      phi_approx_error(n, z))


def _plain(value: complex, like: Optional[complex]=None) -> Any:
    reference = value if like is None else like
    if complex(reference).imag == 0:
        return complex(value).real
    return value


def generating_F(tau: Any, x: float, N: Optional[int]=None,
                 solver: Optional[CollocationSolver]=None
                 ) -> Tuple[complex, float]:
    """``F(tau, x) = sum_n f_n(x) e^(pi i n tau)`` over the trusted range of
    a truncation ``N`` solve, with the functional-equation residual.

    :raises DomainError:  If ``e^(-pi n Im tau)`` at the trusted range (at
                          ``tau`` or ``-1/tau``) exceeds ``1e-20``.

    """
    point = as_point(tau)
    solver = solver or build_solver(N or get_config().default_N)
    limit = solver.trusted_max
    t = complex(point)
    lowest = min(t.imag, (-1 / t).imag)
    if math.exp(-math.pi * limit * lowest) >= 1e-20:
        raise DomainError('Im tau', 'large enough for the truncation '
                          '(trusted range {})'.format(limit), t.imag)
    coeffs = solver.values([x])[:limit + 1, 0]
    n = np.arange(limit + 1)
    value = complex(np.sum(coeffs * np.exp(1j * np.pi * n * t)))
    return value, solver.feq_residual(coeffs, t, x)


def generating_F_kernel(tau: Any, z: Any, tol: float=1e-12) -> complex:
    """``F(tau, z) = 1/2 int K(tau, w) e^(pi i w z) dw`` over the
    semicircle, for ``tau`` with ``Im tau > 1``.

    """
    point = as_point(tau)
    if not point.im > 1:
        raise DomainError('Im tau', '> 1 for the kernel route', point.im)
    quad = ArcQuadrature(lambda w: kernel_K(point.tau, w), order=0,
                         name='F({})'.format(complex(point)))
    return quad.evaluate(z, tol=tol).value


class RegimeEstimate(NamedTuple):
    """Leading behaviour of ``f_n(x) / sin(pi (x - n))``; in the ``bound``
    regime ``value`` is the size of the bound, not an approximation.

    """
    regime: str
    value: float
    kind: str


def regime_asymptotic(n: int, x: float) -> RegimeEstimate:
    """The three regimes of ``h_n(x) = f_n(x) / sin(pi (x - n))`` for
    ``n/8 <= x``.

    :raises PoleError:  At ``x = n``, where the middle formula is singular.

    """
    n = positive_or_error('n', int_or_error('n', n))
    x = float(x)
    root_n = math.sqrt(n)
    if x < n - root_n:
        scale = ((n - x) / root_n) ** 0.216 / root_n
        return RegimeEstimate('small', scale, 'bound')
    if x <= n + root_n:
        if x == n:
            raise PoleError('middle regime', x)
        return RegimeEstimate(
            'middle', 1 / (2 * math.pi * root_n * (math.sqrt(x) - root_n)),
            'approximation')
    value = THIRD_REGIME_CONSTANT * \
        math.exp(-math.pi * math.sqrt(3) * (math.sqrt(x) - root_n)) / root_n
    return RegimeEstimate('third', value, 'approximation')


def negative_asymptotic(n: int, x: float) -> float:
    """``e^(2 pi sqrt(n |x|)) / (2 sqrt(n))``, the size of ``f_n(-|x|)``."""
    n = positive_or_error('n', int_or_error('n', n))
    return math.exp(2 * math.pi * math.sqrt(n * abs(x))) / (2 * math.sqrt(n))


def small_x_bound_ratio(n: int, xs: Sequence[float],
                        solver: Optional[CollocationSolver]=None) -> float:
    """``max |f_n(x)| / ((1 + log^2 n) n^(1/4) (1 + x)^(-1/4))``."""
    results = eval_collocation(n, xs, solver)
    scale = (1 + math.log(n) ** 2) * n ** 0.25
    return max(abs(r.value) * (1 + r.x) ** 0.25 / scale for r in results)


def global_bound_ratio(n: int, zs: Sequence[complex]) -> float:
    """``max |f_n(z)| e^(-pi |y| - 2 pi sqrt(n) Re sqrt(-z)) /
    (n^(1/4) (1 + log^2 n))`` with contour values.

    """
    scale = n ** 0.25 * (1 + math.log(n) ** 2)
    worst = 0.0
    for z in zs:
        z = complex(z)
        value = eval_contour(n, z).value
        weight = math.exp(-math.pi * abs(z.imag) -
                          2 * math.pi * math.sqrt(n) * cmath.sqrt(-z).real)
        worst = max(worst, abs(value) * weight / scale)
    return worst


def evaluate(n: int, x: Any, method: str='collocation') -> EvalResult:
    """Dispatch on a method name or alias (see
    :func:`~sqrtlat.utils.method_aliases`).

    """
    method = parse_method(method)
    if method == 'collocation':
        if complex(x).imag != 0:
            raise DomainError('x', 'real for collocation', x)
        return eval_collocation(n, [float(complex(x).real)])[0]
    if method == 'contour':
        return eval_contour(n, x)
    if method == 'laplace':
        return eval_laplace(n, float(complex(x).real))
    return eval_phi_approx(n, x)
