#!/usr/bin/env python
# -*- coding: utf-8 -*-

import csv
import json
import math
import os

import numpy as np
import pytest

from sqrtlat import config as config_module
from sqrtlat.exceptions import DomainError
from sqrtlat import figures


def test_format_number():
    assert figures.format_number(0.1) == '0.10000000000000001'
    assert figures.format_number(np.float64(2.5)) == '2.5'
    assert figures.format_number(np.int64(7)) == '7'
    assert figures.format_number('x') == 'x'


def test_write_csv(tmp_path):
    path = str(tmp_path / 'table.csv')
    count = figures.write_csv(path, ['n', 'value'], [[1, 0.5], [2, 0.25]])
    assert count == 2
    with open(path) as handle:
        assert handle.read() == 'n,value\n1,0.5\n2,0.25\n'


def test_grid():
    xs = figures.grid(350.0, 700.0, 0.1)
    assert len(xs) == 3501
    assert xs[0] == 350.0
    assert abs(xs[-1] - 700.0) < 1e-9


class TestFigureSpec(object):

    def test_defaults(self):
        spec = figures.FigureSpec('histogram')
        assert spec.params == {'x0': 0.63, 'n_max': 2000, 'bins': 50}
        assert spec.csv_path == os.path.join('.', 'histogram.csv')
        assert spec.svg_path.endswith('histogram.svg')
        assert spec.sidecar_path.endswith('histogram.json')
        assert 'histogram' in repr(spec)

    def test_coercion(self):
        spec = figures.FigureSpec('histogram', params={'n_max': '100',
                                                       'x0': '0.5'})
        assert spec.params['n_max'] == 100
        assert spec.params['x0'] == 0.5

    def test_errors(self):
        with pytest.raises(DomainError):
            figures.FigureSpec('nope')

        with pytest.raises(DomainError):
            figures.FigureSpec('histogram', params={'colour': 'red'})

        with pytest.raises(DomainError):
            figures.FigureSpec('histogram', params={'n_max': 'many'})

    def test_registry(self):
        assert set(figures.figures.names) == {'f500', 'bulk', 'histogram',
                                              'l2norms'}
        assert 'bulk' in figures.figures
        assert figures.figures.defaults('l2norms') == {'n_min': 2,
                                                       'n_max': 300}


class TestEmit(object):

    def test_histogram(self, tmp_path):
        spec = figures.FigureSpec('histogram', str(tmp_path / 'out'),
                                  {'n_max': 100, 'bins': 10})
        sidecar = figures.emit_figure(spec)
        assert sidecar['values'] == 100
        assert sidecar['rows'] == {'histogram': 10, 'histogram_values': 100}

        for path in (spec.csv_path, spec.svg_path, spec.sidecar_path,
                     spec.path('.csv', 'histogram_values')):
            assert os.path.exists(path)

        with open(spec.sidecar_path) as handle:
            assert json.load(handle)['id'] == 'histogram'

    def test_svg_is_reproducible(self, tmp_path):
        params = {'n_min': 2, 'n_max': 6, 'x_max': 1.0, 'step': 0.1}
        first = figures.FigureSpec('bulk', str(tmp_path / 'a'), params)
        second = figures.FigureSpec('bulk', str(tmp_path / 'b'), params)
        figures.emit_figure(first)
        figures.emit_figure(second)
        with open(first.svg_path) as a, open(second.svg_path) as b:
            assert a.read() == b.read()

    def test_bulk_summary(self, tmp_path):
        spec = figures.FigureSpec('bulk', str(tmp_path),
                                  {'n_min': 2, 'n_max': 6, 'x_max': 1.0,
                                   'step': 0.1})
        sidecar = figures.emit_figure(spec)
        assert sidecar['series'] == 5
        assert sidecar['rows'] == {'bulk': 11}
        assert sidecar['global_max'] < 1

    def test_l2norms_coefficient(self, tmp_path, cache_dir):
        previous = config_module._config
        config_module.set_config(config_module.Config(
            cache_dir=str(cache_dir),
            tolerances={'l2norm_coefficient': 1.0}))
        try:
            spec = figures.FigureSpec('l2norms', str(tmp_path),
                                      {'n_min': 2, 'n_max': 8})
            sidecar = figures.emit_figure(spec)
        finally:
            config_module.set_config(previous)

        assert sidecar['coefficient'] == 1.0
        with open(spec.csv_path) as handle:
            rows = list(csv.reader(handle))[1:]
        assert len(rows) == 7
        for n, _, reference in rows:
            assert abs(float(reference) - math.log(int(n))) < 1e-12
