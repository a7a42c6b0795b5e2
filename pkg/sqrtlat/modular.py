# -*- coding: utf-8 -*-
"""Theta constants, the Hauptmodul ``J`` of the theta group, the weight 3/2
forms ``g_n = theta^3 Q_n(J)`` and the generating kernel ``K``.

Exponents of q-expansions are counted in eighths (see
:mod:`sqrtlat.series`); ``q = exp(2 pi i tau)``.

"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import mpmath

from .cache import Memo, encode_value, decode_value, store
from .config import get_config
from .exceptions import DomainError, PoleError, PrecisionError, TruncationError
from .group import as_mpc, reduce_to_fundamental, S_STEP
from .series import HalfIntSeries
from .utils import int_or_error, nonnegative_or_error

logger = logging.getLogger(__name__)

# reduced points below this height are evaluated in the cusp-1 coordinate
CUSP_SWITCH_HEIGHT = 0.5
GUARD_BITS = 17

_expansions = Memo('q_expansions')
_g_expansions = Memo('g_expansion')
_q_polynomials = Memo('q_polynomial')
_mp_coeff_cache = Memo('q_polynomial_mp')


# -- pointwise theta constants ---------------------------------------------

def _direct_triple(z: mpmath.mpc) -> Tuple[Any, Any, Any]:
    """(theta_2, theta_3, theta_4) at ``z`` by their q-series; meant for
    ``Im z >= 1/2``.

    """
    q = mpmath.expjpi(z)
    absq = abs(q)
    tol = mpmath.ldexp(1, -(mpmath.mp.prec + GUARD_BITS))

    t3 = mpmath.mpc(1)
    t4 = mpmath.mpc(1)
    n = 1
    while True:
        term = 2 * mpmath.power(q, n * n)
        t3 += term
        t4 += term if n % 2 == 0 else -term
        if absq ** ((n + 1) ** 2) < tol:
            break
        n += 1

    t2 = mpmath.mpc(0)
    n = 0
    while True:
        t2 += mpmath.power(q, n * (n + 1))
        if absq ** ((n + 1) * (n + 2)) < tol * abs(t2):
            break
        n += 1
    t2 *= 2 * mpmath.expjpi(z / 4)
    return t2, t3, t4


def _reduced_triple(r: mpmath.mpc) -> Tuple[Any, Any, Any]:
    """Theta constants at a point of the closure of ``F``."""
    if mpmath.im(r) >= CUSP_SWITCH_HEIGHT:
        return _direct_triple(r)

    # near the cusp 1 (or -1 ~ 1): sigma = 1 - 1/w with Im w >= 1.8
    shifted = mpmath.re(r) < 0
    sigma = r + 2 if shifted else r
    w = 1 / (1 - sigma)
    s = mpmath.sqrt(w / mpmath.j)
    w2, w3, w4 = _direct_triple(w)
    t3 = s * w2
    t4 = s * w3
    t2 = mpmath.expjpi(mpmath.mpf(1) / 4) * s * w4
    if shifted:
        # theta_2(r + 2) = i theta_2(r)
        t2 = t2 / mpmath.j
    return t2, t3, t4


def theta_constants(tau: Any) -> Tuple[Any, Any, Any]:
    """``(theta_2, theta_3, theta_4)`` at ``tau``.

    ``tau`` is reduced to the fundamental domain, the constants are summed
    there, and the generator laws are unwound along the reduction word:
    under ``tau -> tau + 2`` only ``theta_2`` changes (by ``i``); under
    ``tau -> -1/tau`` the three are permuted and scaled by
    ``(tau/i)^(1/2)``.

    :raises DomainError:  If ``Im tau <= 0``.

    """
    z = as_mpc(tau)
    with mpmath.workprec(mpmath.mp.prec + GUARD_BITS):
        reduction = reduce_to_fundamental(z)

        points = [z]
        for letter, k in reduction.word:
            if letter == S_STEP:
                points.append(-1 / points[-1])
            else:
                points.append(points[-1] + 2 * k)

        t2, t3, t4 = _reduced_triple(points[-1])
        for index in range(len(reduction.word) - 1, -1, -1):
            letter, k = reduction.word[index]
            previous = points[index]
            if letter == S_STEP:
                s = mpmath.sqrt(previous / mpmath.j)
                t2, t3, t4 = t4 / s, t3 / s, t2 / s
            else:
                t2 = t2 * mpmath.power(mpmath.j, -k)
    return +t2, +t3, +t4


def theta(tau: Any) -> mpmath.mpc:
    """Jacobi's ``theta(tau) = sum_n exp(pi i n^2 tau)``."""
    return theta_constants(tau)[1]


def lambda_J(tau: Any) -> Tuple[mpmath.mpc, mpmath.mpc]:
    """``(lambda(tau), J(tau))`` with ``lambda = theta_2^4 / theta^4`` and
    ``J = 16 / (lambda (1 - lambda))``.

    """
    t2, t3, _ = theta_constants(tau)
    lam = (t2 / t3) ** 4
    return lam, 16 / (lam * (1 - lam))


# -- exact q-expansions -----------------------------------------------------

def _theta_series(order: int) -> HalfIntSeries:
    coeffs = {0: 1}
    n = 1
    while 4 * n * n < order:
        coeffs[4 * n * n] = 2
        n += 1
    return HalfIntSeries(coeffs, order)


def _theta2_series(order: int) -> HalfIntSeries:
    coeffs = {}
    k = 0
    while (2 * k + 1) ** 2 < order:
        coeffs[(2 * k + 1) ** 2] = 2
        k += 1
    return HalfIntSeries(coeffs, order)


def q_expansions(order: int) -> Dict[str, HalfIntSeries]:
    """Exact expansions of ``theta``, ``theta_2``, ``lambda`` and ``J``.

    ``theta``, ``theta_2`` and ``lambda`` are known below ``q^(order/8)``;
    ``J`` (valuation -1/2) below ``q^((order - 8)/8)``.

    :raises DomainError:  If ``order < 16``.

    """
    order = int_or_error('order', order)
    if order < 16:
        raise DomainError('order', '>= 16', order)

    def compute() -> Dict[str, HalfIntSeries]:
        th = _theta_series(order)
        th2 = _theta2_series(order)
        lam = th2 ** 4 * (th ** 4).reciprocal()
        J = 16 * (lam * (1 - lam)).reciprocal()
        return {'theta': th, 'theta2': th2, 'lambda': lam, 'J': J}

    return _expansions.get_or_compute(order, compute)


def cusp_one_expansions(order: int) -> Dict[str, HalfIntSeries]:
    """Expansions at the cusp 1 in the local variable of ``1 - 1/tau``,
    built from ``lambda(1 - 1/tau) = (lambda - 1) / lambda``.

    ``theta``: ``(1/2)(tau/i)^(-1/2) theta(1 - 1/tau) = theta_2 / 2``;
    ``J``: ``-2^-12 J(1 - 1/tau) = 2^-8 lambda^2 / (1 - lambda)``;
    ``one_minus_2lambda``: ``8 (1 - 2 lambda(1 - 1/tau)) = 8 (2 - lambda) /
    lambda``.

    """
    base = q_expansions(order)
    lam = base['lambda']
    return {
        'theta': base['theta2'] * Fraction(1, 2),
        'J': lam * lam * (1 - lam).reciprocal() * Fraction(1, 256),
        'one_minus_2lambda': 8 * (2 - lam) * lam.reciprocal(),
    }


# -- the forms g_n ------------------------------------------------------------

def _expansion_order(n: int, order: int) -> int:
    # theta^3 J^n is known below key O - 4n - 4
    return max(16, max(order, 1) + 4 * n + 4)


def _solve_g(n: int, order: int) -> Tuple[HalfIntSeries, List[Any]]:
    """``g_n`` below key ``order`` and the coefficients of ``Q_n``."""
    base = q_expansions(_expansion_order(n, order))
    th3 = base['theta'] ** 3
    J = base['J']

    config = get_config()
    if n > config.exact_max_n:
        prec = 64 + 10 * n
        logger.info('Q_%d in %d-bit floating point', n, prec)
        with mpmath.workprec(prec):
            th3 = th3.map(mpmath.mpf)
            J = J.map(mpmath.mpf)
            return _triangular_solve(n, order, th3, J)
    return _triangular_solve(n, order, th3, J)


def _triangular_solve(n: int, order: int, th3: HalfIntSeries,
                      J: HalfIntSeries) -> Tuple[HalfIntSeries, List[Any]]:
    basis = [th3]
    for _ in range(n):
        basis.append(basis[-1] * J)

    # B_j = q^(-j/2) + ..., so the conditions are triangular
    coeffs = [0] * (n + 1)  # type: List[Any]
    coeffs[n] = 1
    for j in range(n - 1, -1, -1):
        acc = 0
        for i in range(j + 1, n + 1):
            if coeffs[i] != 0:
                acc = acc + coeffs[i] * basis[i][-4 * j]
        coeffs[j] = -acc

    g = HalfIntSeries({}, order)
    for c, b in zip(coeffs, basis):
        if c != 0:
            g = g + b.truncate(order) * c
    return g.truncate(order), coeffs


def _cache_name(n: int, order: int) -> str:
    return 'g_expansion_{}_{}'.format(n, order)


def _to_document(n: int, order: int, g: HalfIntSeries,
                 coeffs: List[Any]) -> Dict[str, Any]:
    return {
        'n': n,
        'order': order,
        'entries': [[k, encode_value(v), 0] for k, v in g.items()],
        'q_coeffs': [encode_value(c) for c in coeffs],
    }


def _from_document(doc: Dict[str, Any]) -> Tuple[HalfIntSeries, List[Any]]:
    g = HalfIntSeries({k: decode_value(re) for k, re, _ in doc['entries']},
                      doc['order'])
    return g, [decode_value(c) for c in doc['q_coeffs']]


def _g_data(n: int, order: int) -> Tuple[HalfIntSeries, List[Any]]:
    def compute() -> Tuple[HalfIntSeries, List[Any]]:
        doc = store.load(_cache_name(n, order))
        if doc is not None and doc.get('n') == n and doc.get('order') == order:
            return _from_document(doc)
        g, coeffs = _solve_g(n, order)
        store.save(_cache_name(n, order), _to_document(n, order, g, coeffs))
        return g, coeffs

    data = _g_expansions.get_or_compute((n, order), compute)
    _q_polynomials.put(n, data[1])
    return data


def g_expansion(n: int, order: int) -> HalfIntSeries:
    """The q-expansion of ``g_n`` below ``q^(order/8)``.

    ``g_n = theta^3 Q_n(J)`` with ``Q_n`` of degree ``n`` fixed by
    ``g_n = q^(-n/2) + O(q^(1/2))``; the coefficient ``a_{n,nu}`` sits at key
    ``4 nu``.

    :raises DomainError:  If ``n < 0`` or ``order < 1``.

    """
    n = nonnegative_or_error('n', int_or_error('n', n))
    order = int_or_error('order', order)
    if order < 1:
        raise DomainError('order', '>= 1', order)
    return _g_data(n, order)[0]


def q_polynomial(n: int) -> List[Any]:
    """Coefficients ``[c_0, ..., c_n]`` of ``Q_n(J) = sum c_j J^j``."""
    n = nonnegative_or_error('n', int_or_error('n', n))
    cached = _q_polynomials.get(n)
    if cached is not None:
        return cached
    return _g_data(n, 8)[1]


def a_coefficients(n: int, count: int) -> List[Any]:
    """``[a_{n,1}, ..., a_{n,count}]``, the coefficients of ``q^(nu/2)``."""
    g = g_expansion(n, 4 * count + 4)
    return [g[4 * nu] for nu in range(1, count + 1)]


def g_cusp1_coefficients(m: int, count: int) -> List[Any]:
    """``[a~_{m,0}, ..., a~_{m,count-1}]``: the coefficients of
    ``q^(nu + 3/8)`` in ``(tau/i)^(-3/2) g_m(1 - 1/tau)``, which equals
    ``theta_2^3 Q_m(-16 lambda^2 / (1 - lambda))``.

    :raises DomainError:  If ``m`` or ``count`` is negative.

    """
    m = nonnegative_or_error('m', int_or_error('m', m))
    count = nonnegative_or_error('count', int_or_error('count', count))
    if count == 0:
        return []
    order = max(16, 8 * count)
    base = q_expansions(order)
    lam = base['lambda']
    J1 = -16 * lam * lam * (1 - lam).reciprocal()
    coeffs = q_polynomial(m)

    # valuations are non-negative: Horner keeps the order
    poly = HalfIntSeries({0: coeffs[-1]}, order)
    for c in reversed(coeffs[:-1]):
        poly = poly * J1
        if c != 0:
            poly = poly + c
    series = base['theta2'] ** 3 * poly
    if series.order <= 8 * (count - 1) + 3:
        raise TruncationError(8 * (count - 1) + 3, series.order)
    return [series[8 * nu + 3] for nu in range(count)]


# -- pointwise g_n and the kernel ---------------------------------------------

def as_mp(value: Any) -> Any:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpmathify(value)


def _polyval(coeffs: List[Any], x: Any) -> Tuple[Any, Any]:
    """Horner value and the largest term magnitude."""
    value = mpmath.mpc(0)
    for c in reversed(coeffs):
        value = value * x + c
    ax = abs(x)
    power = mpmath.mpf(1)
    largest = mpmath.mpf(0)
    for c in coeffs:
        largest = max(largest, abs(c) * power)
        power *= ax
    return value, largest


def _mp_coefficients(n: int) -> List[Any]:
    """``Q_n`` coefficients rounded to the working precision."""
    key = (n, mpmath.mp.prec)
    return _mp_coeff_cache.get_or_compute(
        key, lambda: [as_mp(c) for c in q_polynomial(n)])


def g_value(n: int, tau: Any, max_bits: Optional[int]=None) -> mpmath.mpc:
    """``g_n(tau) = theta(tau)^3 Q_n(J(tau))`` at the current precision.

    The polynomial is re-evaluated at a higher working precision while
    cancellation in ``Q_n(J)`` eats into the requested bits.

    :raises PrecisionError:  If ``max_bits`` (default: the configured cap)
                             does not suffice.

    """
    n = nonnegative_or_error('n', int_or_error('n', n))
    target = mpmath.mp.prec
    cap = max_bits or get_config().precision_cap_bits
    bits = target + GUARD_BITS
    while True:
        with mpmath.workprec(bits):
            t2, t3, _ = theta_constants(tau)
            lam = (t2 / t3) ** 4
            J = 16 / (lam * (1 - lam))
            value, largest = _polyval(_mp_coefficients(n), J)
            result = t3 ** 3 * value
            if value == 0:
                lost = bits
            else:
                lost = int(mpmath.log(largest / abs(value), 2)) + 1
        if lost <= bits - target - 8 or lost <= 0:
            return +result
        if bits >= cap:
            raise PrecisionError('g_{}({})'.format(n, tau), bits, result)
        bits = min(cap, target + lost + 2 * GUARD_BITS)


def kernel_K(tau: Any, z: Any) -> mpmath.mpc:
    """``K(tau, z) = theta^3(z) theta(tau) (1 - 2 lambda(tau)) J(tau) /
    (J(tau) - J(z))``.

    :raises PoleError:  If ``J(tau) = J(z)`` to working precision (the two
                        points are theta-group equivalent).

    """
    t2, t3, _ = theta_constants(tau)
    lam_tau = (t2 / t3) ** 4
    J_tau = 16 / (lam_tau * (1 - lam_tau))
    z2, z3, _ = theta_constants(z)
    lam_z = (z2 / z3) ** 4
    J_z = 16 / (lam_z * (1 - lam_z))

    gap = J_tau - J_z
    scale = max(abs(J_tau), abs(J_z), 1)
    if abs(gap) <= scale * mpmath.ldexp(1, -(mpmath.mp.prec - 10)):
        raise PoleError('K(tau, .)', z)
    return z3 ** 3 * t3 * (1 - 2 * lam_tau) * J_tau / gap
