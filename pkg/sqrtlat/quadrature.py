# -*- coding: utf-8 -*-
"""Gauss-Legendre quadrature over the upper unit semicircle.

Integrals ``1/2 int kernel(w) exp(pi i w z) dw`` along the arc from
``-1`` to ``1`` are computed with composite Gauss-Legendre panels in the
angle ``phi`` (``w = exp(i phi)``). The kernel is sampled once per
(panel count, precision) so every further ``z`` costs only exponentials.

"""

import logging
import math
import threading
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

import mpmath
from mpmath.calculus.quadrature import GaussLegendre

from .config import get_config
from .exceptions import PrecisionError

logger = logging.getLogger(__name__)

#: Gauss-Legendre degree of one panel (``3 * 2**(degree - 1)`` nodes).
PANEL_DEGREE = 4
PANEL_NODES = 3 * 2 ** (PANEL_DEGREE - 1)
MAX_NODES = 4096
MIN_BITS = 128
EXTRA_BITS = 80


class ArcTable(NamedTuple):
    """Sampled kernel: ``exps[k] = i pi w_k`` and ``weights[k] =
    -kernel(w_k) i w_k dphi_k / 2``.

    """
    panels: int
    bits: int
    exps: List[Any]
    weights: List[Any]


class ArcValue(NamedTuple):
    value: complex
    err: float
    bits: int
    nodes: int


class ArcQuadrature(object):
    """Quadrature of ``kernel`` against ``exp(pi i w z)`` on the arc.

    :param kernel:  Called with an ``mpmath.mpc`` at the working precision.
    :param order:  Size parameter of the kernel: ``|kernel| <= e^(pi
                   order)`` on the arc. Sets the starting precision and
                   node count.
    :param name:  Used in log records and errors.

    """

    def __init__(self, kernel: Callable[[Any], Any], order: float=0,
                 name: str='kernel') -> None:
        self.kernel = kernel
        self.order = order
        self.name = name
        self._tables = {}  # type: Dict[Tuple[int, int], ArcTable]
        self._lock = threading.Lock()

    def start_bits(self, z: complex) -> int:
        spread = max(abs(z.imag), -z.real, 0.0)
        bits = math.pi * (self.order + spread) / math.log(2) + EXTRA_BITS
        return max(MIN_BITS, int(bits))

    def start_panels(self, z: complex) -> int:
        target = max(64, 6 * self.order + 4 * math.pi * abs(z) + 64)
        panels = 1
        while panels * PANEL_NODES < target:
            panels *= 2
        return panels

    def table(self, panels: int, bits: int) -> ArcTable:
        key = (panels, bits)
        if key in self._tables:
            return self._tables[key]
        with self._lock:
            if key not in self._tables:
                self._tables[key] = self._build(panels, bits)
        return self._tables[key]

    def _build(self, panels: int, bits: int) -> ArcTable:
        logger.debug('%s: sampling %d nodes at %d bits', self.name,
                     panels * PANEL_NODES, bits)
        exps, weights = [], []
        with mpmath.workprec(bits):
            rule = GaussLegendre(mpmath.mp)
            step = mpmath.pi / panels
            for p in range(panels):
                a = step * p
                for phi, weight in rule.get_nodes(a, a + step, PANEL_DEGREE,
                                                  bits):
                    w = mpmath.expj(phi)
                    exps.append(1j * mpmath.pi * w)
                    weights.append(-self.kernel(w) * 1j * w * weight / 2)
        return ArcTable(panels, bits, exps, weights)

    def sample(self, z: Any, panels: int, bits: int,
               derivative: bool=False) -> complex:
        """One estimate with a fixed node table, no refinement."""
        return complex(self._sum(self.table(panels, bits), z, derivative))

    def _sum(self, table: ArcTable, z: Any, derivative: bool) -> Any:
        with mpmath.workprec(table.bits):
            z = mpmath.mpc(z)
            total = mpmath.mpc(0)
            for c, weight in zip(table.exps, table.weights):
                term = weight * mpmath.exp(c * z)
                total += c * term if derivative else term
            return total

    def evaluate(self, z: Any, tol: float=1e-12,
                 derivative: bool=False, min_bits: Optional[int]=None,
                 max_bits: Optional[int]=None) -> ArcValue:
        """The integral at ``z`` (or its ``z``-derivative).

        Panels and precision are raised together until two successive
        estimates agree to ``tol`` relative to ``max(1, |value|)``.

        :raises PrecisionError:  If the node or precision cap is reached
                                 first; carries the best estimate.

        """
        z = complex(z)
        cap = max_bits or get_config().precision_cap_bits
        bits = min(cap, max(self.start_bits(z), min_bits or 0))
        panels = self.start_panels(z)
        previous = self._sum(self.table(panels, bits), z, derivative)

        while True:
            next_panels = panels * 2
            next_bits = min(cap, bits + max(32, bits // 4))
            if next_panels * PANEL_NODES > MAX_NODES:
                what = '{} quadrature at {}'.format(self.name, z)
                raise PrecisionError(what, bits, complex(previous))
            current = self._sum(self.table(next_panels, next_bits), z,
                                derivative)
            spread = abs(complex(current - previous))
            scale = max(1.0, abs(complex(current)))
            if spread <= tol * scale:
                return ArcValue(complex(current), spread, next_bits,
                                next_panels * PANEL_NODES)
            logger.debug('%s at %r: spread %.3e with %d nodes', self.name, z,
                         spread, next_panels * PANEL_NODES)
            panels, bits, previous = next_panels, next_bits, current

    def __call__(self, z: Any, tol: float=1e-12) -> complex:
        return self.evaluate(z, tol).value

    def derivative(self, z: Any, tol: float=1e-12) -> complex:
        return self.evaluate(z, tol, derivative=True).value

    def __repr__(self) -> str:
        return '{n}({name!r}, order={o})'.format(
            n=self.__class__.__name__, name=self.name, o=self.order)
