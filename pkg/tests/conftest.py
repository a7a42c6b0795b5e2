# -*- coding: utf-8 -*-

import pytest

from sqrtlat import config as config_module
from sqrtlat.basis import build_solver


@pytest.fixture(scope='session', autouse=True)
def cache_dir(tmp_path_factory):
    """Every test session gets an empty cache directory."""
    path = tmp_path_factory.mktemp('cache')
    previous = config_module._config
    config_module.set_config(config_module.Config(cache_dir=str(path)))
    yield path
    config_module.set_config(previous)


@pytest.fixture(scope='session')
def solver64():
    return build_solver(64)


@pytest.fixture(scope='session')
def solver128():
    return build_solver(128)
