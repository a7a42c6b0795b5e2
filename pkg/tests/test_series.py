#!/usr/bin/env python
# -*- coding: utf-8 -*-

from fractions import Fraction

import mpmath
import pytest

from sqrtlat.exceptions import DomainError, PoleError, TruncationError
from sqrtlat.series import HalfIntSeries, exponent_key


def test_exponent_key():
    assert exponent_key(Fraction(-1, 2)) == -4
    assert exponent_key(Fraction(3, 8)) == 3
    assert exponent_key(2) == 16

    with pytest.raises(DomainError):
        exponent_key(Fraction(1, 3))


class TestHalfIntSeries(object):

    def test_truncation(self):
        s = HalfIntSeries({0: 1, 4: 2, 16: 5}, 16)
        assert len(s) == 2
        assert s[4] == 2
        assert s[8] == 0
        assert s.coefficient(Fraction(1, 2)) == 2

        with pytest.raises(TruncationError):
            s[16]

    def test_arithmetic(self):
        one_plus = HalfIntSeries({0: 1, 8: 1}, 32)
        square = one_plus * one_plus
        assert square.items() == [(0, 1), (8, 2), (16, 1)]
        assert (square - one_plus).items() == [(8, 1), (16, 1)]
        assert (2 * one_plus + 1).items() == [(0, 3), (8, 2)]

    def test_reciprocal(self):
        # 1 / (1 - q) = 1 + q + q^2 + ...
        s = HalfIntSeries({0: 1, 8: -1}, 40)
        inverse = s.reciprocal()
        assert inverse.items() == [(k, 1) for k in range(0, 40, 8)]
        assert (s * inverse).items() == [(0, 1)]

    def test_laurent(self):
        s = HalfIntSeries({-4: 1, 0: 24}, 16)
        inverse = s.reciprocal()
        assert inverse.valuation == 4
        assert inverse.order == 24
        assert inverse[4] == 1
        assert inverse[8] == -24

    def test_fractions_stay_exact(self):
        s = HalfIntSeries({0: 3, 8: 1}, 24) / 3
        assert s[8] == Fraction(1, 3)
        assert s[0] == 1
        assert isinstance(s[0], int)

    def test_power(self):
        s = HalfIntSeries({0: 1, 8: 1}, 32)
        assert (s ** 3).items() == [(0, 1), (8, 3), (16, 3), (24, 1)]
        assert (s ** 0).items() == [(0, 1)]
        assert (s ** -1 * s).items() == [(0, 1)]

    def test_zero_reciprocal(self):
        with pytest.raises(PoleError):
            HalfIntSeries({}, 8).reciprocal()

    def test_shift_and_map(self):
        s = HalfIntSeries({0: 2}, 8).shift(3)
        assert s.items() == [(3, 2)]
        assert s.order == 11
        assert s.map(lambda v: v * 5).items() == [(3, 10)]

    def test_evaluate(self):
        # q^(1/2) at tau = i is e^(-pi)
        s = HalfIntSeries({4: 1}, 8)
        assert abs(s.evaluate(1j) - mpmath.exp(-mpmath.pi)) < 1e-14

    def test_from_exponents(self):
        s = HalfIntSeries.from_exponents({Fraction(-1, 2): 1, 0: 30}, 1)
        assert s == HalfIntSeries({-4: 1, 0: 30}, 8)
