#!/usr/bin/env python
# -*- coding: utf-8 -*-

import io
import os

import pytest

from sqrtlat import cli
from sqrtlat.config import get_config


@pytest.fixture()
def run(tmp_path):
    def inner(*argv):
        out = io.StringIO()
        code = cli.cli_dispatch(['--cache-dir', str(tmp_path / 'cache')] +
                                list(argv), out)
        return code, out.getvalue()
    return inner


def test_format_complex():
    assert cli.format_complex(1 - 1j) == '1-1i'
    assert cli.format_complex(-0.0 + 0.5j) == '0+0.5i'


def test_version(capsys):
    assert cli.cli_dispatch(['--version']) == cli.EXIT_OK
    assert 'sqrtlat' in capsys.readouterr().out


def test_usage_errors(run):
    assert run()[0] == cli.EXIT_INVALID
    assert run('unknown')[0] == cli.EXIT_INVALID
    assert run('eval', '--n', '1')[0] == cli.EXIT_INVALID
    assert run('eval', '--n', '1', '--x', '1', '--method', 'guess')[0] == \
        cli.EXIT_INVALID
    assert run('zeros', '--n', '3')[0] == cli.EXIT_INVALID


def test_registry():
    names = [c.name for c in cli.commands]
    for name in ('eval', 'table', 'gn-expansion', 'kloosterman', 'coeff',
                 'phi', 'psi', 'psi-moment', 'zeros', 'moment', 'l2sum',
                 'histogram', 'verify-interp', 'figure'):
        assert name in names


def test_kloosterman(run):
    assert run('kloosterman', '--m', '-1', '--n', '1', '--c', '2') == \
        (cli.EXIT_OK, '1-1i\n')


def test_domain_error(run, capsys):
    code, output = run('kloosterman', '--m', '1', '--n', '1', '--c', '0')
    assert code == cli.EXIT_INVALID
    assert output == ''
    assert 'sqrtlat: error:' in capsys.readouterr().err


def test_pole(run):
    assert run('phi', '--re', '0')[0] == cli.EXIT_INVALID


def test_phi(run):
    code, output = run('phi', '--re', '1')
    assert code == cli.EXIT_OK
    assert output.startswith('0.0050228')
    assert output.endswith('+0i\n')


def test_gn_expansion(run):
    code, output = run('gn-expansion', '--n', '1', '--order', '8')
    assert code == cli.EXIT_OK
    assert output.splitlines() == ['exponent,coefficient', '-1/2,1',
                                   '1/2,252']


def test_psi(run):
    code, output = run('psi', '--x', '4', '25')
    lines = output.splitlines()
    assert code == cli.EXIT_OK
    assert lines[0] == 'x,value'
    assert len(lines) == 3


def test_eval(run):
    code, output = run('--check', 'eval', '--n', '0', '--x', '0')
    assert code == cli.EXIT_OK
    header, row = output.splitlines()
    assert header == 'n,x,value,method,err'
    fields = row.split(',')
    assert fields[0] == '0'
    assert abs(float(fields[2]) - 1) < 1e-6
    assert fields[3] == 'collocation'


def test_eval_contour(run):
    code, output = run('eval', '--n', '2', '--x', '1.5', '--im', '0.5',
                       '--method', 'quad')
    assert code == cli.EXIT_OK
    assert output.splitlines()[1].split(',')[3] == 'contour'


def test_check_failure(run, tmp_path):
    path = tmp_path / 'strict.cfg'
    path.write_text('# nothing passes\ntolerance.delta_property = 0\n')
    code, _ = run('--config', str(path), '--check', 'eval', '--n', '2',
                  '--x', '3')
    assert code == cli.EXIT_TOLERANCE


def test_bad_config(run, tmp_path):
    path = tmp_path / 'bad.cfg'
    path.write_text('colour = red\n')
    assert run('--config', str(path), 'phi', '--re', '1')[0] == \
        cli.EXIT_INVALID
    assert run('--config', str(tmp_path / 'missing.cfg'), 'phi', '--re',
               '1')[0] == cli.EXIT_INVALID


def test_config_restored(run):
    previous = get_config()
    run('phi', '--re', '1')
    assert get_config() is previous


def test_histogram(run, tmp_path):
    path = str(tmp_path / 'hist.csv')
    code, output = run('histogram', '--nmax', '100', '--bins', '10',
                       '--out', path)
    assert code == cli.EXIT_OK
    assert output == ''
    with open(path) as handle:
        assert len(handle.readlines()) == 11


def test_figure(run, tmp_path):
    out_dir = str(tmp_path / 'figures')
    code, output = run('figure', '--id', 'histogram', '--out-dir', out_dir,
                       '--param', 'n_max=100', '--param', 'bins=10')
    assert code == cli.EXIT_OK
    assert output.strip() == os.path.join(out_dir, 'histogram.csv')
    assert os.path.exists(os.path.join(out_dir, 'histogram.svg'))

    assert run('figure', '--id', 'histogram', '--param', 'n_max')[0] == \
        cli.EXIT_INVALID
    assert run('figure', '--id', 'histogram', '--param', 'depth=3')[0] == \
        cli.EXIT_INVALID


def test_verify_interp(run):
    code, output = run('--check', 'verify-interp', '--t', '1', '--ntrunc',
                       '60')
    assert code == cli.EXIT_OK
    assert output.splitlines()[-1].startswith('max_error,')


def test_eval_at_own_index(run):
    code, output = run('--check', 'eval', '--n', '3', '--x', '3')
    assert code == cli.EXIT_OK
    assert abs(float(output.splitlines()[1].split(',')[2]) - 1) < 1e-6


@pytest.mark.slow
def test_figure_f500(run, tmp_path):
    out_dir = str(tmp_path)
    code, _ = run('figure', '--id', 'f500', '--out-dir', out_dir,
                  '--param', 'x_min=480', '--param', 'x_max=490',
                  '--param', 'step=0.5')
    assert code == cli.EXIT_OK
    with open(os.path.join(out_dir, 'f500.csv')) as handle:
        lines = handle.read().splitlines()
    assert lines[0] == 'x,f,phi_approx'
    assert len(lines) == 22
