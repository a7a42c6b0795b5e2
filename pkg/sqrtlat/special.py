# -*- coding: utf-8 -*-
"""The function ``Phi`` and the exponential sum ``Psi``.

``Phi(z) = sum_{nu >= 0} exp(-2 pi z r_nu) / r_nu`` with
``r_nu = sqrt(2 (nu + 3/8))`` for ``Re z > 0`` continues to a meromorphic
function with a single simple pole at ``0``. ``Psi(x) = Phi(sqrt x) +
Phi(-sqrt x)`` is the entire function
``sum_{n >= 1} 2 cos(pi ((3n - 1)/4 - x/n)) / sqrt(n)``.

"""

import logging
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, List, NamedTuple, Optional, Tuple

import mpmath
import numpy as np

from .cache import Memo
from .config import get_config
from .exceptions import DomainError, PoleError, PrecisionError
from .utils import at_least_or_error, int_or_error, positive_or_error, \
    unit_interval_or_error

logger = logging.getLogger(__name__)

#: Chunk size (x count times n count) of the vectorised ``Psi`` sums.
CHUNK_ELEMENTS = 1 << 22

#: Most terms the direct ``Phi`` series may take; smaller real parts go
#: through the Taylor expansion.
MAX_DIRECT_TERMS = 1 << 21


def direct_terms(re: float) -> int:
    """Terms the direct ``Phi`` series needs at real part ``re > 0``."""
    return int((40 / (2 * math.pi * re)) ** 2 / 2) + 16


def _em_settings(prec: int, terms: int, offset: int) -> Tuple[int, int]:
    terms = max(terms, prec // 5 + 1)
    return terms, max(offset, 2 * terms)


def hurwitz_zeta(s: Any, a: Any, terms: int=12, offset: int=50) -> Any:
    """The Hurwitz zeta function ``zeta(s, a)`` for real ``s <= 1/2`` at
    the current mpmath working precision.

    Non-positive integers use Bernoulli polynomials, other negative ``s``
    use Hurwitz's formula (Clausen sums), and ``0 < s <= 1/2`` uses
    Euler-Maclaurin summation with ``terms`` correction terms after
    ``offset`` direct terms (both raised with the working precision).

    :raises DomainError:  If ``s > 1/2`` or ``a`` is not in ``(0, 1)``.

    """
    s = mpmath.mpf(s) if not isinstance(s, Fraction) else \
        mpmath.mpf(s.numerator) / s.denominator
    a = mpmath.mpf(a) if not isinstance(a, Fraction) else \
        mpmath.mpf(a.numerator) / a.denominator
    if s > 0.5:
        raise DomainError('s', '<= 1/2', s)
    unit_interval_or_error('a', a)

    if s <= 0 and s == int(s):
        k = int(1 - s)
        return -mpmath.bernpoly(k, a) / k

    if s < 0:
        t = 1 - s
        cos_part = mpmath.cospi(t / 2) * mpmath.clcos(t, 2 * a, pi=True)
        sin_part = mpmath.sinpi(t / 2) * mpmath.clsin(t, 2 * a, pi=True)
        return 2 * mpmath.gamma(t) / (2 * mpmath.pi) ** t * \
            (cos_part + sin_part)

    terms, N = _em_settings(mpmath.mp.prec, terms, offset)
    total = mpmath.fsum((n + a) ** -s for n in range(N))
    base = N + a
    total += base ** (1 - s) / (s - 1) + base ** -s / 2
    power = base ** (-s - 1)
    rising = s
    for j in range(1, terms + 1):
        total += mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * \
            rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= base * base
    return total


class _TaylorTable(object):
    """Taylor coefficients of the regular part of ``Phi`` at one precision,
    extended on demand.

    """

    def __init__(self, prec: int) -> None:
        self.prec = prec
        self.coeffs = []  # type: List[Any]
        self._lock = threading.Lock()

    def coefficient(self, k: int) -> Any:
        a = mpmath.mpf(3) / 8
        zeta = hurwitz_zeta(mpmath.mpf(1 - k) / 2, a)
        return (mpmath.mpf(2) ** (mpmath.mpf(k - 1) / 2) * zeta *
                (-2 * mpmath.pi) ** k / mpmath.factorial(k))

    def upto(self, count: int) -> List[Any]:
        if len(self.coeffs) >= count:
            return self.coeffs
        with self._lock:
            with mpmath.workprec(self.prec + 10):
                for k in range(len(self.coeffs), count):
                    self.coeffs.append(self.coefficient(k))
            logger.debug('Phi Taylor table at %d bits: %d terms', self.prec,
                         len(self.coeffs))
        return self.coeffs


_tables = Memo('phi_taylor')


def _taylor_table(bits: int) -> _TaylorTable:
    bucket = -(-bits // 64) * 64
    return _tables.get_or_compute(bucket, lambda: _TaylorTable(bucket))


class PhiEvaluator(object):
    """Evaluates ``Phi`` by the direct series, the Taylor expansion about
    the pole, or the functional equation ``Phi(z) = Psi(z^2) - Phi(-z)``.

    Every ``z != 0`` has a route: see :meth:`region`.

    :param r_direct:  Real parts ``>= r_direct`` use the direct series and
                      real parts ``<= -r_direct`` (with ``|z| > 1``) the
                      functional equation.
    :param r_taylor:  Radius of the disk in which the Taylor expansion is
                      preferred for the remaining points.
    :param k_max:  Base number of Taylor terms, raised for larger ``|z|``.
    :param guard_bits:  Extra bits on top of the cancellation estimate.

    """

    methods = ('direct', 'taylor', 'feq')

    def __init__(self, r_direct: float=0.25, r_taylor: float=6.0,
                 k_max: int=200, guard_bits: int=20) -> None:
        self.r_direct = positive_or_error('r_direct', r_direct)
        self.r_taylor = at_least_or_error('r_taylor', r_taylor, 1)
        self.k_max = positive_or_error('k_max', int_or_error('k_max', k_max))
        self.guard_bits = guard_bits
        self._psi = None  # type: Optional[PsiEvaluator]

    @property
    def psi(self) -> 'PsiEvaluator':
        if self._psi is None:
            self._psi = PsiEvaluator(phi=self)
        return self._psi

    @property
    def taylor(self) -> List[float]:
        """The Taylor coefficients ``k = 0 .. k_max`` in double precision."""
        return [float(t) for t in _taylor_table(64).upto(self.k_max + 1)]

    def region(self, z: complex) -> str:
        """The route :meth:`__call__` takes at ``z``.

        Outside the Taylor disk a small nonzero real part still goes
        through the direct series (or, when negative, the functional
        equation) while the series stays within :data:`MAX_DIRECT_TERMS`;
        the rest falls back to the Taylor sum at raised precision.

        """
        z = complex(z)
        if z == 0:
            raise PoleError('Phi', z)
        if z.real >= self.r_direct:
            return 'direct'
        if z.real <= -self.r_direct and abs(z) > 1:
            return 'feq'
        if abs(z) <= self.r_taylor:
            return 'taylor'
        if z.real != 0 and direct_terms(abs(z.real)) <= MAX_DIRECT_TERMS:
            return 'direct' if z.real > 0 else 'feq'
        return 'taylor'

    def __call__(self, z: Any, method: Optional[str]=None) -> complex:
        z = complex(z)
        if z == 0:
            raise PoleError('Phi', z)
        method = method or self.region(z)
        if method == 'direct':
            return self.direct(z)
        if method == 'taylor':
            return 1 / (2 * math.pi * z) + self._taylor_sum(z)
        if method == 'feq':
            return self.psi(z * z) - self.direct(-z)
        raise DomainError('method', 'one of {}'.format(self.methods), method)

    def direct(self, z: complex) -> complex:
        """The defining series, summed with numpy until the terms drop
        below double precision.

        """
        z = complex(z)
        if z.real <= 0:
            raise DomainError('Re z', 'positive for the direct series', z)
        count = direct_terms(z.real)
        if count > MAX_DIRECT_TERMS:
            raise DomainError('Re z', 'large enough for at most {} terms'
                              .format(MAX_DIRECT_TERMS), z)
        r = np.sqrt(2 * (np.arange(count) + 0.375))
        return complex(np.sum(np.exp(-2 * np.pi * z * r) / r))

    def _taylor_sum(self, z: complex, step: int=1) -> complex:
        """``sum t_k z^k`` over ``k`` divisible by ``step``; ``z`` is the
        expansion variable raised to ``step``.

        """
        radius = abs(z) ** (1 / step)
        x = math.pi * radius * radius
        bits = int(53 + x / math.log(2)) + self.guard_bits
        if bits > get_config().precision_cap_bits:
            raise PrecisionError('Phi Taylor sum at |z| = {:g}'.format(radius),
                                 bits)
        cap = max(self.k_max, int(6 * x) + 120)
        K = min(cap, int(2 * math.e * x) + 48)
        table = _taylor_table(bits)

        with mpmath.workprec(bits):
            zm = mpmath.mpc(z)
            while True:
                coeffs = table.upto(K + 16 + 1)
                total, tail = mpmath.mpc(0), mpmath.mpc(0)
                power = mpmath.mpc(1)
                for k in range(0, K + 17, step):
                    term = coeffs[k] * power
                    if k <= K:
                        total += term
                    else:
                        tail += term
                    power *= zm
                scale = max(1.0, abs(complex(total)))
                if abs(complex(tail)) <= 2.0 ** -53 * scale:
                    return complex(total + tail)
                if K >= cap:
                    raise PrecisionError('Phi Taylor sum', bits,
                                         complex(total + tail),
                                         abs(complex(tail)))
                logger.debug('Phi Taylor sum at %r: raising K from %d', z, K)
                K = min(cap, K + 32)

    def regular_part(self, w: Any) -> complex:
        """``Phi(w) - 1/(2 pi w)``, analytic at ``w = 0``."""
        w = complex(w)
        if abs(w) <= self.r_taylor:
            return self._taylor_sum(w)
        return self(w) - 1 / (2 * math.pi * w)

    def even_part(self, x: Any) -> complex:
        """``Phi(z) + Phi(-z)`` as a function of ``x = z^2``, for small
        ``|x|``.

        """
        return 2 * self._taylor_sum(complex(x), step=2)

    def __repr__(self) -> str:
        return '{n}(r_direct={d}, r_taylor={t}, k_max={k})'.format(
            n=self.__class__.__name__, d=self.r_direct, t=self.r_taylor,
            k=self.k_max)


def _omega(n: np.ndarray, sign: int) -> np.ndarray:
    return np.exp(sign * 1j * np.pi * (3 * n - 1) / 4)


class PsiEvaluator(object):
    """Evaluates ``Psi`` and its partial sums.

    The sum is split at ``N = max(beta |x|, min_head)`` (rounded up to a
    multiple of the phase period 8). The head is summed directly; in the
    tail the periodic phases are summed by parts ``depth`` times, each
    pass subtracting the block mean and differencing the amplitudes.

    :param beta:  Direct-summation multiplier.
    :param depth:  Number of block-averaging passes.
    :param min_head:  Smallest split point.
    :param tail_terms:  Terms kept after the averaging passes.
    :param phi:  The :class:`PhiEvaluator` used for ``|x| < 1``.

    """

    block_size = 8

    def __init__(self, beta: float=4.0, depth: int=3, min_head: int=2048,
                 tail_terms: int=1024,
                 phi: Optional[PhiEvaluator]=None) -> None:
        self.beta = positive_or_error('beta', beta)
        self.depth = int_or_error('depth', depth)
        self.min_head = positive_or_error('min_head', min_head)
        self.tail_terms = positive_or_error('tail_terms', tail_terms)
        self.phi = phi if phi is not None else PhiEvaluator()
        if self.phi._psi is None:
            self.phi._psi = self

    def head_length(self, x: Any) -> int:
        N = max(int(math.ceil(self.beta * abs(x))), self.min_head)
        return -(-N // self.block_size) * self.block_size

    def _head(self, xs: np.ndarray, N: int, sign: int) -> np.ndarray:
        n = np.arange(1, N + 1, dtype=float)
        weights = _omega(n, sign) / np.sqrt(n)
        rows = max(1, CHUNK_ELEMENTS // max(N, 1))
        out = np.empty(len(xs), dtype=complex)
        for i in range(0, len(xs), rows):
            block = xs[i:i + rows]
            phases = np.exp(-sign * 1j * np.pi * np.outer(block, 1 / n))
            out[i:i + rows] = phases @ weights
        return out

    def _tail(self, xs: np.ndarray, N: int, sign: int) -> np.ndarray:
        n = np.arange(N + 1, N + 1 + self.tail_terms + self.depth,
                      dtype=float)
        a = _omega(n, sign)
        h = np.exp(-sign * 1j * np.pi * np.outer(xs, 1 / n)) / np.sqrt(n)
        boundary = np.zeros(len(xs), dtype=complex)
        for _ in range(self.depth):
            A = np.cumsum(a)
            mean = A[:self.block_size].mean()
            boundary += mean * h[:, 0]
            a = (A - mean)[:-1]
            h = h[:, :-1] - h[:, 1:]
        return boundary + h @ a

    def _sums(self, xs: np.ndarray, N: int, sign: int) -> Tuple[np.ndarray,
                                                                np.ndarray]:
        return self._head(xs, N, sign), self._tail(xs, N, sign)

    def theta_sum(self, x: Any, y_cut: Optional[int]=None) -> Tuple[complex,
                                                                     complex]:
        """The partial sum ``sum_{n <= y_cut} e((3n-1)/8 - x/(2n)) / sqrt(n)``
        and its accelerated tail, separately. For real ``x``,
        ``Psi(x) = 2 Re(head + tail)``.

        """
        if y_cut is None:
            y_cut = self.head_length(x)
        y_cut = positive_or_error('y_cut', int_or_error('y_cut', y_cut))
        xs = np.array([x], dtype=complex)
        head, tail = self._sums(xs, y_cut, 1)
        return complex(head[0]), complex(tail[0])

    def __call__(self, x: Any) -> Any:
        return self.values(np.array([x]))[0]

    def values(self, xs: Any) -> np.ndarray:
        """``Psi`` on an array; real input gives real output."""
        xs = np.asarray(xs)
        is_real = not np.iscomplexobj(xs)
        xs = xs.astype(complex).ravel()
        out = np.empty(len(xs), dtype=complex)

        small = np.abs(xs) < 1
        for i in np.flatnonzero(small):
            out[i] = self.phi.even_part(xs[i])

        large = np.flatnonzero(~small)
        if len(large):
            N = self.head_length(np.max(np.abs(xs[large])))
            plus = sum(self._sums(xs[large], N, 1))
            if is_real:
                out[large] = 2 * plus.real
            else:
                out[large] = plus + sum(self._sums(xs[large], N, -1))

        if is_real:
            return out.real
        return out

    def __repr__(self) -> str:
        return '{n}(beta={b}, depth={d})'.format(
            n=self.__class__.__name__, b=self.beta, d=self.depth)


default_phi = PhiEvaluator()
default_psi = default_phi.psi


def phi(z: Any, method: Optional[str]=None) -> complex:
    """``Phi(z)`` with the default evaluator.

    :raises PoleError:  At ``z = 0``.

    """
    return default_phi(z, method)


def psi(x: Any) -> Any:
    """``Psi(x)`` with the default evaluator."""
    return default_psi(x)


def theta_sum(x: Any, y_cut: Optional[int]=None) -> Tuple[complex, complex]:
    return default_psi.theta_sum(x, y_cut)


class PsiMoment(NamedTuple):
    T: float
    integral: float
    normalized: float


def psi_moment(T: float, nodes: int=8,
               evaluator: Optional[PsiEvaluator]=None,
               threads: Optional[int]=None) -> PsiMoment:
    """``(1 / (T log T)) int_T^{2T} Psi(x)^2 dx`` by Gauss-Legendre on unit
    panels.

    :raises DomainError:  If ``T <= 1``.

    """
    T = at_least_or_error('T', T, 1)
    if T == 1:
        raise DomainError('T', '> 1', T)
    evaluator = evaluator or default_psi
    threads = threads or get_config().threads

    t, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.arange(T, 2 * T, 1.0)
    widths = np.minimum(edges + 1, 2 * T) - edges
    xs = (edges[:, None] + widths[:, None] * (t[None, :] + 1) / 2).ravel()
    weights = (widths[:, None] * w[None, :] / 2).ravel()

    chunks = np.array_split(np.arange(len(xs)), max(1, threads * 4))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda idx: evaluator.values(xs[idx]), chunks))
    values = np.concatenate(parts)

    integral = float(np.sum(weights * values ** 2))
    normalized = integral / (T * math.log(T))
    logger.debug('Psi second moment at T=%s: %.6f', T, normalized)
    return PsiMoment(T, integral, normalized)


class GrowthScan(NamedTuple):
    xs: np.ndarray
    values: np.ndarray
    ratios: np.ndarray
    alpha: float

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratios))


def psi_growth_scan(x_max: float, points: int=2000, alpha: float=0.216,
                    evaluator: Optional[PsiEvaluator]=None) -> GrowthScan:
    """Running maxima ``max_{x' <= x} |Psi(x')| / x^alpha`` on a geometric
    grid in ``[1, x_max]``. Empirical data only.

    """
    x_max = at_least_or_error('x_max', x_max, 1)
    evaluator = evaluator or default_psi
    xs = np.geomspace(1, x_max, points)
    values = np.abs(evaluator.values(xs))
    ratios = np.maximum.accumulate(values) / xs ** alpha
    return GrowthScan(xs, values, ratios, alpha)
