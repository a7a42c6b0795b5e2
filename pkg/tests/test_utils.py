#!/usr/bin/env python
# -*- coding: utf-8 -*-

import cmath
from fractions import Fraction

import pytest

from sqrtlat.exceptions import DomainError
from sqrtlat import utils


def test_int_or_error():
    assert utils.int_or_error('n', 3) == 3

    with pytest.raises(DomainError):
        utils.int_or_error('n', 3.0)

    with pytest.raises(DomainError):
        utils.int_or_error('n', True)


def test_range_validators():
    assert utils.nonnegative_or_error('x', 0) == 0
    assert utils.positive_or_error('x', 2) == 2
    assert utils.odd_or_error('c', 7) == 7
    assert utils.at_least_or_error('N', 8, 8) == 8
    assert utils.unit_interval_or_error('a', 0.375) == 0.375

    with pytest.raises(DomainError):
        utils.nonnegative_or_error('x', -1)

    with pytest.raises(DomainError):
        utils.positive_or_error('x', 0)

    with pytest.raises(DomainError):
        utils.odd_or_error('c', 4)

    with pytest.raises(DomainError):
        utils.at_least_or_error('N', 4, 8)

    with pytest.raises(DomainError):
        utils.unit_interval_or_error('a', 1)


def test_e():
    assert utils.e(0) == 1
    assert utils.e(Fraction(1, 2)) == -1
    assert utils.e(Fraction(5, 4)) == 1j
    assert utils.e(Fraction(-1, 4)) == -1j
    assert abs(utils.e(Fraction(3, 8)) - cmath.exp(0.75j * cmath.pi)) < 1e-15
    # huge numerators are reduced exactly
    big = Fraction(10 ** 30 + 1, 8)
    assert abs(utils.e(big) - utils.e(Fraction(1, 8))) < 1e-15


def test_method_aliases():
    aliases = utils.method_aliases()
    assert aliases['phi'] == 'phi_approx'
    assert aliases['collocation'] == 'collocation'
    assert set(aliases.values()) == {'collocation', 'contour', 'laplace',
                                     'phi_approx'}


def test_parse_method():
    assert utils.parse_method('quad') == 'contour'

    with pytest.raises(DomainError):
        utils.parse_method('newton')
