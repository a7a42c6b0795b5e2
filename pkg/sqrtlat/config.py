# -*- coding: utf-8 -*-
"""Run-time configuration: cache location, solver defaults, the thread
budget and the table of acceptance tolerances.

"""

import logging
import os
import threading
from typing import Any, Dict, Iterable, Optional

from .exceptions import ConfigError, DomainError, ToleranceFailure

logger = logging.getLogger(__name__)

CACHE_ENV = 'SQRTLAT_CACHE'
THREADS_ENV = 'SQRTLAT_THREADS'

DEFAULT_TOLERANCES = {
    'condition_max': 1e12,
    'delta_property': 1e-6,
    'coeff_rel': 1e-6,
    'kloosterman_relation': 1e-12,
    'phi_feq': 1e-8,
    'phi_residue': 1e-3,
    'phi_approx_agreement': 1e-6,
    'middle_regime_scale': 5.0,
    'third_regime_rel': 0.1,
    'negint_rel': 1e-3,
    'fnsecmom_lo': 0.3,
    'fnsecmom_hi': 1.5,
    'psi_moment_lo': 0.6,
    'psi_moment_hi': 1.4,
    'delta_window_slack': 4.0,
    'rect_ratio_lo': 0.2,
    'rect_ratio_hi': 5.0,
    'bulk_max': 1.0,
    'l2norm_ratio_lo': 0.5,
    'l2norm_ratio_hi': 2.0,
    'l2norm_coefficient': 0.6,
    'histogram_symmetry': 0.1,
    'l2sum_lo': 0.2,
    'l2sum_hi': 3.0,
    'interp_max_error': 1e-6,
    'h_zero_residual': 1e-8,
    'h_method_error': 1e-10,
    'winding_integrality': 1e-3,
    'imag_residual': 1e-9,
}  # type: Dict[str, float]

#: Names the package itself reads; the remaining entries bracket the test
#: suite.
REQUIRED_TOLERANCES = frozenset([
    'condition_max', 'delta_property', 'coeff_rel', 'fnsecmom_lo',
    'fnsecmom_hi', 'psi_moment_lo', 'psi_moment_hi', 'delta_window_slack',
    'rect_ratio_lo', 'rect_ratio_hi', 'bulk_max', 'l2norm_ratio_lo',
    'l2norm_ratio_hi', 'l2norm_coefficient', 'histogram_symmetry',
    'l2sum_lo', 'l2sum_hi', 'interp_max_error', 'h_zero_residual',
    'h_method_error', 'winding_integrality', 'imag_residual',
])


def _parse_height_rule(value: Any) -> Any:
    if value is None or value == '10/N':
        return '10/N'
    try:
        height = float(value)
    except (TypeError, ValueError):
        raise ConfigError('height_rule must be "10/N" or a number, '
                          'got {!r}'.format(value))
    if not height > 0:
        raise ConfigError('height_rule must be positive, got {!r}'.format(
            value))
    return height


class Config(object):
    """Configuration for computations and the command line.

    Values come from, lowest priority first: built-in defaults, the
    environment (``SQRTLAT_CACHE``, ``SQRTLAT_THREADS``), an optional
    ``key=value`` file, and keyword arguments.

    :param cache_dir:  Directory of the JSON cache.
    :param default_N:  Collocation truncation used when none is given.
    :param height_rule:  ``'10/N'`` or an explicit segment height.
    :param precision_cap_bits:  Largest working precision of the
                                multiprecision routes.
    :param threads:  Worker budget for batched solves.
    :param exact_max_n:  Largest ``n`` whose ``Q_n`` is found in exact
                         arithmetic.
    :param tolerances:  Overrides for entries of the tolerance table.

    """

    def __init__(self, cache_dir: Optional[str]=None, default_N: int=128,
                 height_rule: Any='10/N', precision_cap_bits: int=4096,
                 threads: Optional[int]=None, exact_max_n: int=400,
                 tolerances: Optional[Dict[str, float]]=None) -> None:

        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV, os.path.join('.', 'cache'))
        if threads is None:
            threads = int(os.environ.get(THREADS_ENV, '1') or 1)

        self.cache_dir = cache_dir
        self.default_N = int(default_N)
        self.height_rule = _parse_height_rule(height_rule)
        self.precision_cap_bits = int(precision_cap_bits)
        self.threads = max(1, int(threads))
        self.exact_max_n = int(exact_max_n)
        self.tolerances = dict(DEFAULT_TOLERANCES)
        if tolerances:
            for key, value in tolerances.items():
                self.set_tolerance(key, value)

    def tolerance(self, name: str) -> float:
        """Look up a tolerance by name.

        :raises ConfigError:  If the name is not in the table.

        """
        try:
            return self.tolerances[name]
        except KeyError:
            raise ConfigError('unknown tolerance {!r}'.format(name))

    def set_tolerance(self, name: str, value: Any) -> None:
        if name not in DEFAULT_TOLERANCES:
            raise ConfigError('unknown tolerance {!r}'.format(name))
        try:
            self.tolerances[name] = float(value)
        except (TypeError, ValueError):
            raise ConfigError('tolerance {} must be a number, got {!r}'.format(
                name, value))

    def height(self, N: int) -> float:
        """The collocation height for truncation ``N``."""
        if self.height_rule == '10/N':
            return 10.0 / N
        return self.height_rule

    @classmethod
    def from_lines(cls, lines: Iterable[str], **overrides) -> 'Config':
        """Build a config from ``key=value`` lines.

        Blank lines and ``#`` comments are skipped; ``tolerance.<name>``
        keys address the tolerance table.

        """
        kwargs = {}  # type: Dict[str, Any]
        tolerances = {}  # type: Dict[str, Any]
        for number, raw in enumerate(lines, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigError('line {}: expected key=value, got {!r}'
                                  .format(number, raw.rstrip()))
            key, value = (part.strip() for part in line.split('=', 1))
            if key.startswith('tolerance.'):
                tolerances[key[len('tolerance.'):]] = value
            elif key in ('cache_dir', 'height_rule'):
                kwargs[key] = value
            elif key in ('default_N', 'precision_cap_bits', 'threads',
                         'exact_max_n'):
                try:
                    kwargs[key] = int(value)
                except ValueError:
                    raise ConfigError('line {}: {} must be an integer'.format(
                        number, key))
            else:
                raise ConfigError('line {}: unknown key {!r}'.format(
                    number, key))

        tolerances.update(overrides.pop('tolerances', None) or {})
        kwargs.update(overrides)
        return cls(tolerances=tolerances, **kwargs)

    @classmethod
    def from_file(cls, path: str, **overrides) -> 'Config':
        logger.debug('reading config from %s', path)
        try:
            with open(path) as handle:
                return cls.from_lines(handle.readlines(), **overrides)
        except OSError as exc:
            raise ConfigError('cannot read config {}: {}'.format(path, exc))

    def check(self, name: str, value: float, lower: Optional[str]=None,
              upper: Optional[str]=None) -> float:
        """Compare ``value`` against tolerance names.

        With only ``upper`` given the comparison is ``value < tol``.

        :raises ToleranceFailure:  If the value falls outside.

        """
        lo = self.tolerance(lower) if lower is not None else None
        hi = self.tolerance(upper) if upper is not None else None
        if (lo is not None and value < lo) or (hi is not None and
                                               not value < hi):
            raise ToleranceFailure(name, value, (lo, hi))
        return value

    def __repr__(self) -> str:
        return ("{n}(cache_dir={c!r}, default_N={N}, height_rule={h!r}, "
                "precision_cap_bits={p}, threads={t})".format(
                    n=self.__class__.__name__,
                    c=self.cache_dir,
                    N=self.default_N,
                    h=self.height_rule,
                    p=self.precision_cap_bits,
                    t=self.threads
                ))


_config = None  # type: Optional[Config]
_config_lock = threading.Lock()


def get_config() -> Config:
    """The process-wide configuration, created from the environment on
    first use.

    """
    global _config
    if _config is None:
        with _config_lock:
            if _config is None:
                _config = Config()
    return _config


def set_config(config: Optional[Config]) -> None:
    """Install ``config`` as the process-wide configuration (``None``
    resets to environment defaults on next use).

    """
    global _config
    if config is not None and not isinstance(config, Config):
        raise DomainError('config', 'a Config instance', config)
    with _config_lock:
        _config = config
