# -*- coding: utf-8 -*-
"""The theta multiplier system, Kloosterman sums at the cusps ``inf`` and
``1``, and the Rademacher-type series for the Fourier coefficients of the
forms ``g_m``.

"""

import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple

import mpmath

from .cache import JsonStore, Memo, decode_value, encode_value, store
from .config import get_config
from .exceptions import DomainError
from .group import group_element
from .utils import (e, int_or_error, nonnegative_or_error, odd_or_error,
                    positive_or_error)

logger = logging.getLogger(__name__)

KINDS = ('cusp_inf', 'cusp_one')
METHODS = ('expansion', 'rademacher')


def kronecker(a: int, n: int) -> int:
    """The Kronecker symbol ``(a/n)``."""
    a = int_or_error('a', a)
    n = int_or_error('n', n)
    if n == 0:
        return 1 if abs(a) == 1 else 0

    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result

    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result

    # Jacobi symbol for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def epsilon(d: int) -> complex:
    """``eps_d``: 1 for ``d = 1 mod 4``, ``i`` for ``d = 3 mod 4``, 0 for
    even ``d`` (never reached by valid residues).

    """
    r = d % 4
    if r == 1:
        return 1 + 0j
    if r == 3:
        return 1j
    return 0j


class MultiplierValue(NamedTuple):
    """A value of the multiplier system, a unit complex number."""
    value: complex

    def __complex__(self) -> complex:
        return complex(self.value)

    def __pow__(self, k: int) -> complex:
        if k < 0:
            return self.value.conjugate() ** (-k)
        return self.value ** k


def _nu_cd(c: int, d: int) -> complex:
    if c == 0:
        return 1 + 0j if d == 1 else -1j
    if c < 0:
        return 1j * _nu_cd(-c, -d)
    if c % 2 == 0:
        return epsilon(d).conjugate() * kronecker(2 * c, d)
    return e(Fraction(-1, 8)) * epsilon(c) * kronecker(2 * d, c)


def nu_theta(gamma: Any) -> MultiplierValue:
    """The weight 1/2 multiplier of ``theta``:
    ``theta(gamma tau) = nu(gamma) j(gamma, tau)^(1/2) theta(tau)`` with
    the principal square root.

    :param gamma:  A :class:`~sqrtlat.group.GroupElement` or 4-tuple.

    :raises GroupMembershipError:  If ``gamma`` is not in the theta group.

    """
    a, b, c, d = group_element(*gamma)
    return MultiplierValue(_nu_cd(c, d))


# -- Kloosterman sums ---------------------------------------------------------

class KloostermanCache(object):
    """Memo of Kloosterman sums keyed by ``(m, n, c)``, mirrored to the
    JSON cache by :meth:`flush`.

    """

    def __init__(self, kind: str, json_store: JsonStore=store) -> None:
        self.kind = kind
        self.store = json_store
        self.memo = Memo('kloosterman_' + kind)
        self._loaded = False
        self._dirty = False

    @property
    def name(self) -> str:
        return 'kloosterman_' + self.kind

    def _load(self) -> None:
        if self._loaded:
            return
        self._loaded = True
        doc = self.store.load(self.name)
        if doc and doc.get('kind') == self.kind:
            for m, n, c, re, im in doc['entries']:
                self.memo.put((m, n, c), complex(re, im))

    def get(self, key: Tuple[int, int, int], func) -> complex:
        self._load()
        if key not in self.memo:
            self._dirty = True
        return self.memo.get_or_compute(key, func)

    def flush(self) -> bool:
        if not self._dirty:
            return False
        entries = [[m, n, c, v.real, v.imag]
                   for (m, n, c), v in sorted(self.memo.items())]
        self._dirty = False
        return self.store.save(self.name, {'kind': self.kind,
                                           'entries': entries})


_S_cache = KloostermanCache('S')
_S_tilde_cache = KloostermanCache('S_tilde')


def _S_even(m: int, n: int, c: int) -> complex:
    mod = 2 * c
    total = 0j
    for d in range(1, mod, 2):
        if math.gcd(d, c) != 1:
            continue
        a = pow(d, -1, mod)
        total += (epsilon(d).conjugate() * kronecker(2 * c, d) *
                  e(Fraction(m * a + n * d, mod)))
    return total


def _S_odd(m: int, n: int, c: int) -> complex:
    mod = 2 * c
    total = 0j
    for d in range(0, mod, 2):
        if math.gcd(d, c) != 1:
            continue
        a = pow(d, -1, c) if c > 1 else 0
        if a % 2:
            a += c
        total += kronecker(2 * d, c) * e(Fraction(m * a + n * d, mod))
    return e(Fraction(3, 8)) * epsilon(c) * total


def S(m: int, n: int, c: int) -> complex:
    """The Kloosterman sum of the cusp ``inf`` (weight 3/2, multiplier
    ``nu_theta^3``), enumerated over the ``O(c)`` residues ``d`` with the
    partner ``a`` from a modular inverse.

    :raises DomainError:  If ``c < 1``.

    """
    m, n = int_or_error('m', m), int_or_error('n', n)
    c = positive_or_error('c', int_or_error('c', c))
    func = _S_even if c % 2 == 0 else _S_odd
    return _S_cache.get((m, n, c), lambda: func(m, n, c))


def _S_tilde(m: int, n: int, c: int) -> complex:
    total = 0j
    for D in range(1, c + 1):
        if math.gcd(D, c) != 1:
            continue
        A = pow(D, -1, c) if c > 1 else 0
        if A % 2 == 0:
            A += c
        nu = _nu_cd(-D, c + D)
        total += (nu.conjugate() ** 3 *
                  e(Fraction(m * A, 2 * c) + Fraction((8 * n + 3) * D, 8 * c)))
    return total


def S_tilde(m: int, n: int, c: int) -> complex:
    """The Kloosterman sum between the cusps ``inf`` and ``1`` (``c`` odd),
    with ``n_+ = n + 3/8`` and the multiplier of the lower row
    ``(-D, c + D)``.

    :raises DomainError:  If ``c`` is even or not positive.

    """
    m, n = int_or_error('m', m), int_or_error('n', n)
    c = positive_or_error('c', odd_or_error('c', c))
    return _S_tilde_cache.get((m, n, c), lambda: _S_tilde(m, n, c))


def kloosterman_relation_residual(m: int, n: int, c: int) -> float:
    """``|e(-3/8) S(m, 8n+3, 2c) - sign sqrt(2) S~(m, n, c)|`` with sign
    ``-1`` for ``m = 0, 3 mod 4`` and ``+1`` otherwise.

    """
    sign = -1 if m % 4 in (0, 3) else 1
    lhs = e(Fraction(-3, 8)) * S(m, 8 * n + 3, 2 * c)
    return abs(lhs - sign * math.sqrt(2) * S_tilde(m, n, c))


def flush_cache() -> None:
    """Write memoised Kloosterman sums to the JSON cache."""
    _S_cache.flush()
    _S_tilde_cache.flush()


# -- Rademacher series --------------------------------------------------------

def _sinh(x: float) -> Any:
    return math.sinh(x) if x < 700 else mpmath.sinh(x)


def _assemble(prefactor: complex, terms: List[Tuple[int, Any]],
              c_max: int, what: str) -> Tuple[Any, float]:
    total = sum(t for _, t in terms) * prefactor
    block = [t for c, t in terms if 2 * c > c_max]
    block_sum = abs(sum(block)) if block else 0.0
    block_norm = math.sqrt(sum(abs(complex(t)) ** 2 for t in block))
    err = 4 * abs(prefactor) * max(float(block_sum), block_norm)

    value = total.real
    tolerance = get_config().tolerance('imag_residual')
    if abs(total.imag) > tolerance * max(abs(value), 1):
        logger.warning('%s: imaginary part %.3e of a real coefficient',
                       what, float(abs(total.imag)))
    return value, err


def rademacher_a(m: int, n: int, c_max: int) -> Tuple[Any, float]:
    """Partial sum over ``c <= c_max`` of the series for ``a_{m,n}``,
    ``e(-3/8) m^(-1/2) sum_c S(-m, n, c) c^(-1/2) sinh(2 pi sqrt(mn) / c)``,
    with a heuristic tail estimate (four times the larger of the last
    dyadic block's sum and its root-sum-square).

    :raises DomainError:  If ``m, n < 1`` or ``c_max < 1``.

    """
    m = positive_or_error('m', int_or_error('m', m))
    n = positive_or_error('n', int_or_error('n', n))
    c_max = positive_or_error('c_max', int_or_error('c_max', c_max))

    X = 2 * math.pi * math.sqrt(m * n)
    terms = [(c, S(-m, n, c) / math.sqrt(c) * _sinh(X / c))
             for c in range(1, c_max + 1)]
    prefactor = e(Fraction(-3, 8)) / math.sqrt(m)
    return _assemble(prefactor, terms, c_max, 'a_{},{}'.format(m, n))


def rademacher_a_tilde(m: int, n: int, c_max: int) -> Tuple[Any, float]:
    """Partial sum over odd ``c <= c_max`` of the series for ``a~_{m,n}``,
    ``2 m^(-1/2) sum_c S~(-m, n, c) c^(-1/2) sinh(2 pi sqrt(2m(n+3/8)) / c)``.
    The ``c = 1`` term is ``2 (-1)^m sinh(...)``.

    :raises DomainError:  If ``m < 1``, ``n < 0`` or ``c_max`` is even or
                          not positive.

    """
    m = positive_or_error('m', int_or_error('m', m))
    n = nonnegative_or_error('n', int_or_error('n', n))
    c_max = positive_or_error('c_max', odd_or_error('c_max', c_max))

    X = 2 * math.pi * math.sqrt(2 * m * (n + 0.375))
    terms = [(c, S_tilde(-m, n, c) / math.sqrt(c) * _sinh(X / c))
             for c in range(1, c_max + 1, 2)]
    return _assemble(2 / math.sqrt(m), terms, c_max,
                     'a~_{},{}'.format(m, n))


def leading_a_tilde(m: int, n: int) -> float:
    """``(-1)^m e^(2 pi sqrt(2m(n+3/8))) / sqrt(m)``."""
    X = 2 * math.pi * math.sqrt(2 * m * (n + 0.375))
    return (-1) ** m * math.exp(X) / math.sqrt(m)


def leading_a(m: int, n: int) -> float:
    """``e^(2 pi sqrt(mn)) / (2 sqrt(m))``."""
    return math.exp(2 * math.pi * math.sqrt(m * n)) / (2 * math.sqrt(m))


# -- coefficient tables -------------------------------------------------------

class CoeffEntry(NamedTuple):
    value: Any
    method: str
    c_max: Optional[int]
    err: float


class CoeffTable(object):
    """Fourier coefficients ``a_{m,nu}`` (``cusp_inf``) or ``a~_{m,nu}``
    (``cusp_one``) of one form ``g_m`` with their provenance.

    :param kind:  ``'cusp_inf'`` or ``'cusp_one'``.
    :param m:  The form index.

    """

    def __init__(self, kind: str, m: int) -> None:
        if kind not in KINDS:
            raise DomainError('kind', 'one of {}'.format(KINDS), kind)
        self.kind = kind
        self.m = int_or_error('m', m)
        self.entries = {}  # type: Dict[int, CoeffEntry]

    def add(self, nu: int, value: Any, method: str,
            c_max: Optional[int]=None, err: float=0.0) -> None:
        if method not in METHODS:
            raise DomainError('method', 'one of {}'.format(METHODS), method)
        self.entries[int(nu)] = CoeffEntry(value, method, c_max, float(err))

    def __getitem__(self, nu: int) -> CoeffEntry:
        return self.entries[nu]

    def __iter__(self):
        return iter(sorted(self.entries.items()))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def c_max(self) -> Optional[int]:
        values = [entry.c_max for entry in self.entries.values()
                  if entry.c_max is not None]
        return max(values) if values else None

    def compare(self, other: 'CoeffTable') -> Dict[int, Tuple[float, float]]:
        """``nu -> (|difference|, combined error bound)`` on the common
        indices.

        """
        if (self.kind, self.m) != (other.kind, other.m):
            raise DomainError('other', 'a table of the same kind and m',
                              (other.kind, other.m))
        rv = {}
        for nu in sorted(set(self.entries) & set(other.entries)):
            a, b = self.entries[nu], other.entries[nu]
            diff = abs(float(mpmath.mpf(_to_float(a.value)) -
                             mpmath.mpf(_to_float(b.value))))
            rv[nu] = (diff, a.err + b.err)
        return rv

    def violations(self, other: 'CoeffTable') -> List[int]:
        return [nu for nu, (diff, bound) in self.compare(other).items()
                if diff > bound]

    def to_document(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'm': self.m,
            'c_max': self.c_max,
            'methods': {str(nu): entry.method for nu, entry in self},
            'entries': [[nu, _encode(entry.value), entry.err]
                        for nu, entry in self],
        }

    @classmethod
    def from_document(cls, doc: Dict[str, Any]) -> 'CoeffTable':
        table = cls(doc['kind'], doc['m'])
        methods = doc.get('methods', {})
        for nu, value, err in doc['entries']:
            method = methods.get(str(nu), 'expansion')
            c_max = doc['c_max'] if method == 'rademacher' else None
            table.add(nu, decode_value(value), method, c_max, err)
        return table

    @property
    def cache_name(self) -> str:
        return 'coeff_{}_{}_{}'.format(self.kind, self.m, self.c_max or 0)

    def save(self, json_store: JsonStore=store) -> bool:
        return json_store.save(self.cache_name, self.to_document())

    def __repr__(self) -> str:
        return "{n}('{k}', {m}, entries={e})".format(
            n=self.__class__.__name__, k=self.kind, m=self.m, e=len(self))


def _to_float(value: Any) -> Any:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return value


def _encode(value: Any) -> Any:
    if isinstance(value, mpmath.mpf) or isinstance(value, (int, Fraction,
                                                           float)):
        return encode_value(value)
    return encode_value(float(value))


def coeff_table(kind: str, m: int, nus: Iterable[int],
                method: str='expansion',
                c_max: Optional[int]=None) -> CoeffTable:
    """Compute a :class:`CoeffTable` by one method.

    ``expansion`` reads exact coefficients off the q-expansions;
    ``rademacher`` sums the Kloosterman series up to ``c_max`` (default
    200 at ``inf`` and 199 at ``1``).

    """
    from .modular import a_coefficients, g_cusp1_coefficients

    nus = sorted(set(int(nu) for nu in nus))
    table = CoeffTable(kind, m)
    if method == 'expansion':
        if kind == 'cusp_inf':
            values = a_coefficients(m, max(nus)) if nus else []
            for nu in nus:
                table.add(nu, values[nu - 1], method)
        else:
            values = g_cusp1_coefficients(m, max(nus) + 1) if nus else []
            for nu in nus:
                table.add(nu, values[nu], method)
    elif method == 'rademacher':
        if kind == 'cusp_inf':
            c_max = c_max or 200
            for nu in nus:
                value, err = rademacher_a(m, nu, c_max)
                table.add(nu, value, method, c_max, err)
        else:
            c_max = c_max or 199
            for nu in nus:
                value, err = rademacher_a_tilde(m, nu, c_max)
                table.add(nu, value, method, c_max, err)
        flush_cache()
    else:
        raise DomainError('method', 'one of {}'.format(METHODS), method)
    logger.debug('built %r', table)
    return table
