# -*- coding: utf-8 -*-
"""Truncated q-expansions with exponents in ``(1/8)Z``.

A :class:`HalfIntSeries` stores the coefficient of ``q^(k/8)``,
``q = exp(2 pi i tau)``, under the integer key ``k`` for every ``k`` below
its ``order``. Coefficients may be ints, :class:`fractions.Fraction`,
floats or mpmath numbers; integer and rational inputs stay exact.

"""

import numbers
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Tuple

import mpmath

from .exceptions import DomainError, PoleError, TruncationError

DENOM = 8


def _normalize(value: Any) -> Any:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _inverse(value: Any) -> Any:
    if isinstance(value, (int, Fraction)):
        return _normalize(Fraction(1) / value)
    return 1 / value


def _is_scalar(value: Any) -> bool:
    return isinstance(value, (numbers.Number, mpmath.mpf, mpmath.mpc))


def exponent_key(exponent: Any) -> int:
    """The integer key of an exponent given as a rational number.

    :raises DomainError:  If ``exponent`` is not a multiple of 1/8.

    """
    scaled = Fraction(exponent) * DENOM
    if scaled.denominator != 1:
        raise DomainError('exponent', 'a multiple of 1/8', exponent)
    return scaled.numerator


class HalfIntSeries(object):
    """A truncated Laurent series in ``q^(1/8)``.

    :param coeffs:  Map from key ``k`` (exponent ``k/8``) to coefficient.
    :param order:  Keys ``>= order`` are unknown and dropped.

    """
    denom = DENOM

    def __init__(self, coeffs: Mapping[int, Any], order: int) -> None:
        self.order = int(order)
        self._coeffs = {}  # type: Dict[int, Any]
        for key, value in coeffs.items():
            key = int(key)
            if key < self.order and value != 0:
                self._coeffs[key] = _normalize(value)

    @classmethod
    def from_exponents(cls, coeffs: Mapping[Any, Any], order: Any
                       ) -> 'HalfIntSeries':
        """Build from rational exponents, e.g. ``{Fraction(-1, 2): 1}``."""
        return cls({exponent_key(k): v for k, v in coeffs.items()},
                   exponent_key(order))

    @classmethod
    def one(cls, order: int) -> 'HalfIntSeries':
        return cls({0: 1}, order)

    @property
    def valuation(self) -> int:
        """Smallest key with a nonzero coefficient (``order`` if none)."""
        return min(self._coeffs) if self._coeffs else self.order

    @property
    def leading(self) -> Tuple[int, Any]:
        if not self._coeffs:
            raise PoleError('reciprocal of a zero series')
        key = self.valuation
        return key, self._coeffs[key]

    def __getitem__(self, key: int) -> Any:
        if key >= self.order:
            raise TruncationError(key, self.order)
        return self._coeffs.get(key, 0)

    def coefficient(self, exponent: Any) -> Any:
        """The coefficient of ``q^exponent``."""
        return self[exponent_key(exponent)]

    def items(self) -> List[Tuple[int, Any]]:
        return sorted(self._coeffs.items())

    def keys(self) -> List[int]:
        return sorted(self._coeffs)

    def __iter__(self) -> Iterator[Tuple[int, Any]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def truncate(self, order: int) -> 'HalfIntSeries':
        return HalfIntSeries(self._coeffs, min(order, self.order))

    def shift(self, key: int) -> 'HalfIntSeries':
        """Multiply by ``q^(key/8)``."""
        return HalfIntSeries({k + key: v for k, v in self._coeffs.items()},
                             self.order + key)

    def map(self, func) -> 'HalfIntSeries':
        """Apply ``func`` to every coefficient."""
        return HalfIntSeries({k: func(v) for k, v in self._coeffs.items()},
                             self.order)

    def _coerce(self, other: Any) -> 'HalfIntSeries':
        if isinstance(other, HalfIntSeries):
            return other
        if _is_scalar(other):
            if self.order <= 0:
                raise TruncationError(0, self.order)
            return HalfIntSeries({0: other}, self.order)
        return NotImplemented

    def __add__(self, other: Any) -> 'HalfIntSeries':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        coeffs = dict(self._coeffs)
        for key, value in other._coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + value
        return HalfIntSeries(coeffs, order)

    __radd__ = __add__

    def __neg__(self) -> 'HalfIntSeries':
        return HalfIntSeries({k: -v for k, v in self._coeffs.items()},
                             self.order)

    def __sub__(self, other: Any) -> 'HalfIntSeries':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Any) -> 'HalfIntSeries':
        return (-self) + other

    def __mul__(self, other: Any) -> 'HalfIntSeries':
        if _is_scalar(other) and not isinstance(other, HalfIntSeries):
            return HalfIntSeries(
                {k: v * other for k, v in self._coeffs.items()}, self.order)
        if not isinstance(other, HalfIntSeries):
            return NotImplemented

        va, vb = self.valuation, other.valuation
        order = min(self.order + min(vb, 0), other.order + min(va, 0))
        coeffs = {}  # type: Dict[int, Any]
        right = other.items()
        for ka, ca in self.items():
            if ka + vb >= order:
                break
            for kb, cb in right:
                key = ka + kb
                if key >= order:
                    break
                coeffs[key] = coeffs.get(key, 0) + ca * cb
        return HalfIntSeries(coeffs, order)

    __rmul__ = __mul__

    def reciprocal(self) -> 'HalfIntSeries':
        """The multiplicative inverse.

        With valuation ``v`` the result has valuation ``-v`` and order
        ``order - 2v``.

        :raises PoleError:  If the series is zero to its order.

        """
        v, lead = self.leading
        inv_lead = _inverse(lead)
        length = self.order - v
        unit = [(k - v, c * inv_lead) for k, c in self.items() if k > v]
        inverse = [0] * length  # type: List[Any]
        inverse[0] = 1
        for k in range(1, length):
            acc = 0
            for j, c in unit:
                if j > k:
                    break
                b = inverse[k - j]
                if b != 0:
                    acc = acc + c * b
            inverse[k] = _normalize(-acc) if acc != 0 else 0
        return HalfIntSeries(
            {k - v: c * inv_lead for k, c in enumerate(inverse) if c != 0},
            length - v)

    def __pow__(self, exponent: int) -> 'HalfIntSeries':
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = HalfIntSeries.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __truediv__(self, other: Any) -> 'HalfIntSeries':
        if isinstance(other, HalfIntSeries):
            return self * other.reciprocal()
        if _is_scalar(other):
            return self * _inverse(other)
        return NotImplemented

    def evaluate(self, tau: Any) -> Any:
        """Sum the stored terms at ``tau`` (an mpmath number is returned)."""
        if not self._coeffs:
            return mpmath.mpc(0)
        tau = mpmath.mpmathify(tau)
        base = mpmath.expjpi(tau / 4)
        total = mpmath.mpc(0)
        for key, value in self.items():
            if isinstance(value, Fraction):
                value = mpmath.mpf(value.numerator) / value.denominator
            total += value * mpmath.power(base, key)
        return total

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, HalfIntSeries):
            return NotImplemented
        return self.order == other.order and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        head = ' + '.join('{}*q^({}/8)'.format(v, k)
                          for k, v in self.items()[:4])
        return '{n}({h}{more} + O(q^({o}/8)))'.format(
            n=self.__class__.__name__,
            h=head or '0',
            more=' + ...' if len(self) > 4 else '',
            o=self.order
        )
