# -*- coding: utf-8 -*-

from typing import Any, Optional


class SqrtLatError(Exception):
    """The base exception class."""
    pass


class DomainError(SqrtLatError, ValueError):
    """Raised if an argument lies outside the domain of an operation.

    :param name:  The argument name.
    :param condition:  What the argument must satisfy.
    :param value:  The offending value.

    """

    def __init__(self, name: str, condition: str, value: Any=None) -> None:
        self.name = name
        self.condition = condition
        self.value = value
        super().__init__(
            '{} must be {}, got {!r}'.format(name, condition, value)
        )


class GroupMembershipError(DomainError):
    """Raised if a matrix is not an element of the theta group."""

    def __init__(self, value: Any) -> None:
        super().__init__(
            'gamma', 'an element of the theta group', value
        )


class TruncationError(SqrtLatError, ValueError):
    """Raised if a truncated series cannot answer a request."""

    def __init__(self, needed: int, order: int) -> None:
        self.needed = needed
        self.order = order
        super().__init__(
            'series known below q^({}/8) only, q^({}/8) requested'.format(
                order, needed)
        )


class PoleError(SqrtLatError, ZeroDivisionError):
    """Raised when evaluating at (or too near) a pole."""

    def __init__(self, what: str, where: Any=None) -> None:
        self.where = where
        super().__init__('{} has a pole at {!r}'.format(what, where))


class ConditioningError(SqrtLatError, ArithmeticError):
    """Raised when a collocation matrix is too ill-conditioned to solve.

    :param N:  The truncation of the system.
    :param height:  The height of the collocation segment.
    :param cond:  The 1-norm condition estimate.
    :param limit:  The largest accepted estimate.

    """

    def __init__(self, N: int, height: float, cond: float,
                 limit: float) -> None:
        self.N = N
        self.height = height
        self.cond = cond
        self.limit = limit
        super().__init__(
            'collocation system N={} height={:.6g} has condition estimate '
            '{:.3e} > {:.1e}'.format(N, height, cond, limit)
        )


class PrecisionError(SqrtLatError, ArithmeticError):
    """Raised if a tolerance is unreachable at the precision cap.

    The best available estimate is kept on :attr:`best`.

    """

    def __init__(self, what: str, bits: int, best: Any=None,
                 spread: Optional[float]=None) -> None:
        self.bits = bits
        self.best = best
        self.spread = spread
        super().__init__(
            '{} did not converge at {} bits (last spread {})'.format(
                what, bits, spread)
        )


class NearZeroError(SqrtLatError, ArithmeticError):
    """Raised if argument tracking meets a zero on (or next to) a contour."""

    def __init__(self, point: Any) -> None:
        self.point = point
        super().__init__('contour passes too close to a zero near {!r}'.format(
            point))


class ToleranceFailure(SqrtLatError, AssertionError):
    """Raised when a checked quantity falls outside its tolerance."""

    def __init__(self, name: str, value: Any, bound: Any) -> None:
        self.name = name
        self.value = value
        self.bound = bound
        super().__init__(
            '{}: {!r} outside tolerance {!r}'.format(name, value, bound)
        )


class ConfigError(SqrtLatError, KeyError):
    """Raised for unknown tolerance names and malformed config files."""

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)

    def __str__(self) -> str:
        return self.message
