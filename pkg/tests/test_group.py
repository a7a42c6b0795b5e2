#!/usr/bin/env python
# -*- coding: utf-8 -*-

import random

import mpmath
import pytest

from sqrtlat.exceptions import DomainError, GroupMembershipError
from sqrtlat import group


def _oracle(tau, steps=10000):
    """Step-by-step reduction counting inversions."""
    z = complex(tau)
    inversions = 0
    for _ in range(steps):
        while z.real > 1:
            z -= 2
        while z.real <= -1:
            z += 2
        if abs(z) < 1:
            z = -1 / z
            inversions += 1
        else:
            return z, inversions
    raise AssertionError('oracle did not terminate')


def test_as_point():
    point = group.as_point(1 + 2j)
    assert point.re == 1
    assert complex(point) == 1 + 2j

    with pytest.raises(DomainError):
        group.as_point(1 - 1j)

    with pytest.raises(DomainError):
        group.as_point(3)


def test_group_element():
    gamma = group.group_element(1, 2, 0, 1)
    assert gamma == group.T2()
    assert group.group_element(0, -1, 1, 0) == group.S

    # (1, 1; 0, 1) is in SL2(Z) but not in the theta group
    with pytest.raises(GroupMembershipError):
        group.group_element(1, 1, 0, 1)

    with pytest.raises(GroupMembershipError):
        group.group_element(2, 0, 0, 1)


def test_group_law():
    gamma = group.group_element(1, 2, 2, 5)
    assert (gamma @ gamma.inverse()).is_identity
    tau = mpmath.mpc(0.3, 0.7)
    composed = (gamma @ group.S).act(tau)
    assert abs(composed - gamma.act(group.S.act(tau))) < 1e-14


class TestReduce(object):

    def test_identity(self):
        reduced = group.reduce_to_fundamental(2j)
        assert reduced.gamma.is_identity
        assert complex(reduced.reduced) == 2j
        assert reduced.height == 2
        assert reduced.inversions == 0

    def test_translation(self):
        reduced = group.reduce_to_fundamental(2 + 2j)
        assert reduced.gamma == group.T2(-1)
        assert complex(reduced.reduced) == 2j
        assert reduced.height == 2

    def test_oracle(self):
        reduced = group.reduce_to_fundamental(0.1 + 0.1j)
        z, inversions = _oracle(0.1 + 0.1j)
        assert abs(complex(reduced.reduced) - z) < 1e-12
        assert reduced.inversions == inversions
        assert abs(reduced.gamma.act(0.1 + 0.1j) - reduced.reduced.tau) < \
            1e-12

    def test_random_points(self):
        rng = random.Random(11)
        for _ in range(50):
            tau = complex(rng.uniform(-5, 5), rng.uniform(0.01, 2))
            reduced = group.reduce_to_fundamental(tau)
            z = complex(reduced.reduced)
            assert -1 < z.real <= 1
            assert abs(z) >= 1 - 1e-12
            assert abs(reduced.gamma.act(tau) - reduced.reduced.tau) < 1e-9

    def test_invariant_height(self):
        rng = random.Random(5)
        tau = mpmath.mpc(0.2, 0.9)
        for length in (1, 3, 6):
            gamma = group.random_element(length, rng)
            moved = gamma.act(tau)
            assert abs(group.height(moved) - group.height(tau)) < 1e-10

    def test_unit_arc_ties(self):
        reduced = group.reduce_to_fundamental(mpmath.expjpi(0.75))
        assert mpmath.re(reduced.reduced.tau) >= 0
