# -*- coding: utf-8 -*-

import cmath
import math
import numbers
from fractions import Fraction
from typing import Any, Dict, Union

import mpmath

from .exceptions import DomainError

Real = Union[int, float, Fraction, mpmath.mpf]


def int_or_error(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(name, 'an integer', value)
    return int(value)


def nonnegative_or_error(name: str, value: Any) -> Any:
    if value < 0:
        raise DomainError(name, 'non-negative', value)
    return value


def positive_or_error(name: str, value: Any) -> Any:
    if not value > 0:
        raise DomainError(name, 'positive', value)
    return value


def odd_or_error(name: str, value: Any) -> int:
    value = int_or_error(name, value)
    if value % 2 == 0:
        raise DomainError(name, 'odd', value)
    return value


def at_least_or_error(name: str, value: Any, lower: Any) -> Any:
    if value < lower:
        raise DomainError(name, '>= {}'.format(lower), value)
    return value


def unit_interval_or_error(name: str, value: Any) -> Any:
    if not 0 < value < 1:
        raise DomainError(name, 'in the open interval (0, 1)', value)
    return value


def e(x: Real) -> complex:
    """``exp(2 pi i x)``.

    Rationals are reduced modulo 1 exactly before rounding, so values at
    huge numerators (Kloosterman phases) keep full double accuracy.

    """
    if isinstance(x, (int, Fraction)):
        x = Fraction(x) % 1
        if x == 0:
            return 1 + 0j
        if x == Fraction(1, 2):
            return -1 + 0j
        if x == Fraction(1, 4):
            return 1j
        if x == Fraction(3, 4):
            return -1j
    return cmath.exp(2j * math.pi * float(x))


def method_aliases() -> Dict[str, str]:
    """Short names accepted wherever an evaluation method is requested.

    """
    rv = {}  # type: Dict[str, str]
    for key in ('collocation', 'contour', 'laplace', 'phi_approx'):
        rv[key] = key
    rv['phi'] = 'phi_approx'
    rv['solve'] = 'collocation'
    rv['quad'] = 'contour'
    rv['cusp'] = 'laplace'
    return rv


def parse_method(method: str) -> str:
    """Resolve a method name or alias.

    :raises DomainError:  If the name is not a method or an alias.

    """
    aliases = method_aliases()
    if method not in aliases:
        raise DomainError('method', 'one of {}'.format(sorted(aliases)),
                          method)
    return aliases[method]
