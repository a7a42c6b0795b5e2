# -*- coding: utf-8 -*-
"""The theta group and reduction of points of the upper half-plane to its
fundamental domain ``F = {|Re tau| <= 1, |tau| >= 1}``.

"""

import logging
import random
from typing import Any, List, NamedTuple, Optional, Tuple

import mpmath

from .exceptions import DomainError, GroupMembershipError

logger = logging.getLogger(__name__)

# letters of a reduction word
S_STEP = 'S'
T_STEP = 'T'


class UpperHalfPoint(NamedTuple):
    """A point ``re + i*im`` with ``im > 0``.

    Build through :func:`as_point`, which validates.

    """
    re: Any
    im: Any

    @property
    def tau(self) -> mpmath.mpc:
        return mpmath.mpc(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def as_point(tau: Any) -> UpperHalfPoint:
    """Validate and wrap ``tau`` (complex, mpmath number or point).

    :raises DomainError:  If ``Im tau <= 0``.

    """
    if isinstance(tau, UpperHalfPoint):
        re, im = tau.re, tau.im
    else:
        value = mpmath.mpmathify(tau)
        re, im = mpmath.re(value), mpmath.im(value)
    if not im > 0:
        raise DomainError('tau', 'in the upper half-plane (Im > 0)', tau)
    return UpperHalfPoint(re, im)


def as_mpc(tau: Any) -> mpmath.mpc:
    """``tau`` as an mpmath complex number, checking ``Im tau > 0``."""
    return as_point(tau).tau


class GroupElement(NamedTuple):
    """An integer matrix ``(a, b; c, d)`` of the theta group.

    Build through :func:`group_element`, which validates.

    """
    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: 'GroupElement') -> 'GroupElement':
        a, b, c, d = self
        e, f, g, h = other
        return GroupElement(a * e + b * g, a * f + b * h,
                            c * e + d * g, c * f + d * h)

    def __neg__(self) -> 'GroupElement':
        return GroupElement(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> 'GroupElement':
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def act(self, tau: Any) -> mpmath.mpc:
        """The Mobius action ``(a tau + b) / (c tau + d)``."""
        tau = mpmath.mpmathify(tau)
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def j(self, tau: Any) -> mpmath.mpc:
        """The automorphy factor ``c tau + d``."""
        return self.c * mpmath.mpmathify(tau) + self.d

    @property
    def is_identity(self) -> bool:
        return self in (IDENTITY, -IDENTITY)


def group_element(a: int, b: int, c: int, d: int) -> GroupElement:
    """Validate and build a theta-group element.

    :raises GroupMembershipError:  If ``ad - bc != 1`` or the matrix is not
                                   congruent to the identity or to ``S``
                                   modulo 2.

    """
    entries = (a, b, c, d)
    if any(isinstance(x, bool) or int(x) != x for x in entries):
        raise GroupMembershipError(entries)
    a, b, c, d = (int(x) for x in entries)
    if a * d - b * c != 1:
        raise GroupMembershipError(entries)
    parity = (a % 2, b % 2, c % 2, d % 2)
    if parity not in ((1, 0, 0, 1), (0, 1, 1, 0)):
        raise GroupMembershipError(entries)
    return GroupElement(a, b, c, d)


IDENTITY = GroupElement(1, 0, 0, 1)
S = GroupElement(0, -1, 1, 0)


def T2(k: int=1) -> GroupElement:
    """Translation by ``2k``."""
    return GroupElement(1, 2 * k, 0, 1)


class ReducedPoint(NamedTuple):
    """Reduction data of a point.

    ``reduced == gamma.act(original)`` lies in the closure of ``F``;
    ``inversions`` counts the ``S`` letters of ``gamma``'s word (the larger
    count when the reduced point lies on the unit arc); ``height`` is
    ``Im(reduced)``. ``word`` lists the generator steps applied, oldest
    first, as ``('T', k)`` for translation by ``2k`` and ``('S', 0)``.

    """
    original: UpperHalfPoint
    gamma: GroupElement
    reduced: UpperHalfPoint
    inversions: int
    height: Any
    word: Tuple[Tuple[str, int], ...]


def _even_shift(re: Any) -> int:
    """``k`` with ``re - 2k`` in ``(-1, 1]``."""
    return int(mpmath.ceil((re - 1) / 2))


def reduce_to_fundamental(tau: Any, max_steps: int=100000) -> ReducedPoint:
    """Reduce ``tau`` to the closure of the fundamental domain.

    Translations by even integers bring ``Re tau`` into ``(-1, 1]``; the
    inversion ``S`` is applied while ``|tau| < 1`` (each such step raises
    ``Im tau``). A point on the unit arc with ``Re tau < 0`` is moved to its
    mirror image by one more ``S``.

    :param tau:  A point of the upper half-plane.
    :param max_steps:  Guard on the word length.

    :raises DomainError:  If ``Im tau <= 0``.

    """
    point = as_point(tau)
    z = point.tau
    gamma = IDENTITY
    word = []  # type: List[Tuple[str, int]]
    inversions = 0

    for _ in range(max_steps):
        k = _even_shift(mpmath.re(z))
        if k:
            z = z - 2 * k
            gamma = T2(-k) @ gamma
            word.append((T_STEP, -k))
        if abs(z) < 1:
            z = -1 / z
            gamma = S @ gamma
            word.append((S_STEP, 0))
            inversions += 1
            continue
        break
    else:
        raise DomainError('tau', 'reducible within {} steps'.format(
            max_steps), tau)

    on_arc = mpmath.almosteq(abs(z), 1, rel_eps=mpmath.eps * 16)
    if on_arc:
        if mpmath.re(z) < 0:
            z = -1 / z
            gamma = S @ gamma
            word.append((S_STEP, 0))
            inversions += 1
        else:
            # the mirror representative differs by one S letter
            last_is_s = bool(word) and word[-1][0] == S_STEP
            if not last_is_s:
                inversions += 1

    reduced = UpperHalfPoint(mpmath.re(z), mpmath.im(z))
    logger.debug('reduced %s in %d steps (%d inversions)', tau, len(word),
                 inversions)
    return ReducedPoint(point, gamma, reduced, inversions, reduced.im,
                        tuple(word))


def height(tau: Any) -> Any:
    """The invariant height ``Im`` of the reduced point."""
    return reduce_to_fundamental(tau).height


def random_element(length: int, rng: Optional[random.Random]=None,
                   max_shift: int=3) -> GroupElement:
    """A random word in ``S`` and ``T^(2k)`` of the given length, with sign
    normalized so the lower-left entry is non-negative.

    """
    rng = rng or random.Random()
    gamma = IDENTITY
    for i in range(length):
        if i % 2:
            gamma = S @ gamma
        else:
            k = 0
            while k == 0:
                k = rng.randint(-max_shift, max_shift)
            gamma = T2(k) @ gamma
    if gamma.c < 0 or (gamma.c == 0 and gamma.d < 0):
        gamma = -gamma
    return gamma
