# -*- coding: utf-8 -*-
"""In-memory memo tables and the on-disk JSON cache.

Memo tables follow a read-mostly contract: lookups take no lock, the
first computation of a key runs under the table's lock so concurrent
callers compute it once.

"""

import json
import logging
import os
import tempfile
import threading
from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, List, Optional, Tuple

import mpmath

from .config import get_config

logger = logging.getLogger(__name__)


def encode_value(value: Any) -> Any:
    """Encode a number for JSON without losing bits.

    Integers stay JSON integers of any size, floats use their shortest
    round-trip representation, rationals become ``'p/q'`` and mpmath
    reals are stored by mantissa and exponent.

    """
    if isinstance(value, bool):
        raise TypeError('refusing to encode bool {!r}'.format(value))
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return '{}/{}'.format(value.numerator, value.denominator)
    if isinstance(value, float):
        return value
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp
        return 'mpf:{}:{}'.format(man, exp)
    raise TypeError('cannot encode {!r}'.format(value))


def decode_value(value: Any) -> Any:
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        if value.startswith('mpf:'):
            _, man, exp = value.split(':')
            return mpmath.mpf((int(man), int(exp)))
        num, den = value.split('/')
        return Fraction(int(num), int(den))
    raise TypeError('cannot decode {!r}'.format(value))


class JsonStore(object):
    """A directory of JSON documents.

    Writes go through a temporary file and :func:`os.replace`, so readers
    never see a partial document. A cache that cannot be written is
    logged and otherwise ignored.

    :param directory:  The cache directory, created on first write.

    """

    def __init__(self, directory: Optional[str]=None) -> None:
        self._directory = directory

    @property
    def directory(self) -> str:
        if self._directory is None:
            return get_config().cache_dir
        return self._directory

    def path(self, name: str) -> str:
        return os.path.join(self.directory, name + '.json')

    def load(self, name: str) -> Optional[Dict[str, Any]]:
        path = self.path(name)
        try:
            with open(path) as handle:
                data = json.load(handle)
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            logger.warning('ignoring unreadable cache file %s: %s', path, exc)
            return None
        logger.debug('cache hit %s', path)
        return data

    def save(self, name: str, data: Dict[str, Any]) -> bool:
        path = self.path(name)
        try:
            os.makedirs(self.directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix='.tmp')
            try:
                with os.fdopen(fd, 'w') as handle:
                    json.dump(data, handle, sort_keys=True)
                os.replace(tmp, path)
            except BaseException:
                # no half-written temp files are left behind
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise
        except OSError as exc:
            logger.warning('could not write cache file %s: %s', path, exc)
            return False
        logger.debug('cache write %s', path)
        return True

    def __repr__(self) -> str:
        return "{n}({d!r})".format(n=self.__class__.__name__,
                                   d=self._directory)


class Memo(object):
    """A named memo table.

    :param name:  Used in log records only.

    """

    def __init__(self, name: str) -> None:
        self.name = name
        self._values = {}  # type: Dict[Hashable, Any]
        self._lock = threading.RLock()

    def get_or_compute(self, key: Hashable, func: Callable[[], Any]) -> Any:
        try:
            return self._values[key]
        except KeyError:
            pass
        with self._lock:
            if key in self._values:
                return self._values[key]
            logger.debug('%s: computing %r', self.name, key)
            value = func()
            self._values[key] = value
            return value

    def get(self, key: Hashable, default: Any=None) -> Any:
        return self._values.get(key, default)

    def put(self, key: Hashable, value: Any) -> None:
        with self._lock:
            self._values[key] = value

    def items(self) -> List[Tuple[Hashable, Any]]:
        with self._lock:
            return list(self._values.items())

    def clear(self) -> None:
        with self._lock:
            self._values.clear()

    def __contains__(self, key: Hashable) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return "{n}({m!r}, entries={e})".format(
            n=self.__class__.__name__, m=self.name, e=len(self))


store = JsonStore()
