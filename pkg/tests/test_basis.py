#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math
import os

import numpy as np
import pytest

from sqrtlat.config import get_config
from sqrtlat.exceptions import ConditioningError, DomainError, PoleError
from sqrtlat.special import phi
from sqrtlat import basis


def test_truncation_rules():
    for n in (0, 10, 60, 250, 1000):
        N = basis.truncation_for(n)
        assert basis.trusted_max(N) >= n
    assert basis.trusted_max(128) == 78


class TestCollocationSolver(object):

    def test_guards(self):
        with pytest.raises(DomainError):
            basis.CollocationSolver(4)

        with pytest.raises(DomainError):
            basis.CollocationSolver(64, height=-0.1)

        with pytest.raises(ConditioningError):
            basis.CollocationSolver(64, condition_max=1.0)

    def test_metadata(self, solver64, cache_dir):
        assert solver64.metadata()['N'] == 64
        assert solver64.height == 10 / 64
        assert os.path.exists(os.path.join(str(cache_dir), 'solver_64.json'))

    def test_residual(self, solver64):
        coefficients = solver64.values([0.5])[:, 0]
        spacing = 2 / 64
        for j in range(20):
            tau = -1 + (3 * j + 1.5) * spacing + 1j * solver64.height
            assert solver64.feq_residual(coefficients, tau, 0.5) < 1e-8

    def test_refinement(self, solver128):
        coarse = solver128.values([0.5])[:41, 0].real
        fine = basis.build_solver(160).values([0.5])[:41, 0].real
        assert np.max(np.abs(coarse - fine)) < 1e-8

    def test_negative_x(self, solver64):
        with pytest.raises(DomainError):
            solver64.values([-1.0])

    def test_memo(self):
        assert basis.build_solver(64) is basis.build_solver(64)
        assert basis.solver_for(10).N == 60


class TestCollocation(object):

    def test_delta_property(self, solver128):
        values = solver128.values(np.arange(61))[:61].real
        assert np.max(np.abs(values - np.eye(61))) < 1e-6

    def test_f0_at_zero(self, solver128):
        results = basis.eval_all(solver128, 0.0)
        assert abs(results[0].value - 1) < 1e-8
        assert results[0].method == 'collocation'
        assert results[10].trusted
        assert not results[100].trusted

    def test_eval_collocation(self, solver128):
        results = basis.eval_collocation(3, [0.5, 3.0, 7.25], solver128)
        assert [r.x for r in results] == [0.5, 3.0, 7.25]
        assert abs(results[1].value - 1) < 1e-6
        assert all(r.err < 1e-6 for r in results)

        with pytest.raises(DomainError):
            basis.eval_all(solver128, -0.5)

    def test_bulk_bound(self):
        solver = basis.solver_for(150)
        xs = np.arange(0, 201) * 0.01
        values = solver.values(xs)[100:151].real
        assert np.max(np.abs(values)) < 1


class TestContour(object):

    def test_matches_collocation(self, solver128):
        colloc = basis.eval_collocation(3, [2.5], solver128)[0].value
        contour = basis.eval_contour(3, 2.5)
        assert contour.method == 'contour'
        assert abs(contour.value - colloc) < 1e-9

    def test_negative_integer(self):
        value = basis.eval_contour(1, -1).value
        expected = math.exp(2 * math.pi) / 2
        assert abs(value - expected) / expected < 0.15

    def test_complex(self):
        z = 2.5 + 0.75j
        value = basis.eval_contour(2, z).value
        assert isinstance(value, complex)
        conj = basis.eval_contour(2, z.conjugate()).value
        assert abs(value - conj.conjugate()) < 1e-9 * max(1, abs(value))

    def test_derivative(self):
        h = 1e-4
        slope = (basis.eval_contour(2, 1.5 + h).value -
                 basis.eval_contour(2, 1.5 - h).value) / (2 * h)
        derivative = basis.contour_derivative(2, 1.5)
        assert abs(derivative - slope) < 1e-6 * max(1, abs(slope))

    @pytest.mark.slow
    @pytest.mark.parametrize('m', range(5, 11))
    def test_negative_asymptotic(self, m):
        n = 10
        value = basis.eval_contour(n, -m, precision_bits=256).value
        scaled = value * 2 * math.sqrt(n) * \
            math.exp(-2 * math.pi * math.sqrt(n * m))
        tol = get_config().tolerance('negint_rel')
        assert abs(scaled - 1) < tol
        assert abs(value / basis.negative_asymptotic(n, -m) - 1) < tol


class TestLaplace(object):

    def test_integer(self):
        result = basis.eval_laplace(3, 10.0)
        assert result.value == 0
        assert result.err == 0

    def test_matches_collocation(self, solver128):
        colloc = basis.eval_collocation(3, [10.5], solver128)[0].value
        laplace = basis.eval_laplace(3, 10.5)
        assert abs(laplace.value - colloc) < 1e-8
        assert laplace.err < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            basis.eval_laplace(5, 4.5)

    def test_h(self):
        f = basis.eval_laplace(4, 12.3).value
        h = basis.h_laplace(4, 12.3).value
        assert abs(h * math.sin(math.pi * (12.3 - 4)) - f) < 1e-12

    def test_third_regime(self):
        h = basis.h_laplace(100, 250.0).value
        estimate = basis.regime_asymptotic(100, 250.0)
        assert estimate.regime == 'third'
        assert abs(h - estimate.value) / estimate.value < \
            get_config().tolerance('third_regime_rel')


class TestPhiApprox(object):

    def test_region(self):
        with pytest.raises(DomainError):
            basis.eval_phi_approx(500, 40.0)

        with pytest.raises(PoleError):
            basis.h_phi_approx(100, 100.0)

    def test_removable_point(self):
        assert abs(basis.eval_phi_approx(100, 100.0).value - 1) < 1e-6
        for z in (100 - 1e-4, 100 + 1e-4):
            assert abs(basis.eval_phi_approx(100, z).value - 1) < 1e-3

    def test_quotient_form(self):
        # away from z = n the two forms agree
        n, z = 100, 103.7
        direct = math.sin(math.pi * (z - n)) * \
            phi(math.sqrt(z) - math.sqrt(n)).real / math.sqrt(n)
        assert abs(basis.eval_phi_approx(n, z).value - direct) < 1e-10

    def test_complex(self):
        result = basis.eval_phi_approx(200, 210 + 0.5j)
        assert isinstance(result.value, complex)
        assert result.err < 1e-6

    @pytest.mark.parametrize('x', [410.5, 389.5])
    def test_middle_regime(self, x):
        n = 400
        h = basis.h_phi_approx(n, x).value
        estimate = basis.regime_asymptotic(n, x)
        assert estimate.regime == 'middle'
        scale = get_config().tolerance('middle_regime_scale')
        assert abs(h - estimate.value) < scale / math.sqrt(n)

    def test_small_regime(self):
        estimate = basis.regime_asymptotic(400, 100.0)
        assert estimate.regime == 'small'
        assert estimate.kind == 'bound'

        with pytest.raises(PoleError):
            basis.regime_asymptotic(400, 400.0)

    @pytest.mark.slow
    def test_against_collocation(self):
        n = 500
        solver = basis.solver_for(601)
        delta = 1e-3
        for x in (350.0, 450.0, 520.5, 600.5):
            if x == round(x):
                points = [x - delta, x + delta]
            else:
                points = [x]
            values = solver.values(points)[n].real
            h = np.mean(values / np.sin(np.pi * (np.array(points) - n)))
            expected = basis.h_phi_approx(n, x).value
            assert abs(h - expected) < \
                get_config().tolerance('phi_approx_agreement')


class TestGeneratingFunction(object):

    def test_residual(self):
        value, residual = basis.generating_F(0.3 + 0.5j, 1.7, N=200)
        assert residual < 1e-8
        assert np.isfinite(value)

    def test_kernel_route(self, solver128):
        tau = 0.2 + 1.5j
        colloc, _ = basis.generating_F(tau, 0.8, solver=solver128)
        kernel = basis.generating_F_kernel(tau, 0.8)
        assert abs(colloc - kernel) < 1e-8

    def test_guards(self, solver64):
        with pytest.raises(DomainError):
            basis.generating_F(0.3 + 0.01j, 1.0, solver=solver64)

        with pytest.raises(DomainError):
            basis.generating_F_kernel(0.5j, 1.0)


class TestBounds(object):

    def test_small_x(self, solver128):
        ratio = basis.small_x_bound_ratio(50, np.linspace(0, 40, 81),
                                          solver128)
        assert 0 < ratio < 1

    def test_global(self):
        ratio = basis.global_bound_ratio(4, [-5, 3 + 2j, 10j])
        assert 0 < ratio < 10


class TestEvaluate(object):

    def test_dispatch(self, solver128):
        assert basis.evaluate(3, 2.5, 'solve').method == 'collocation'
        assert basis.evaluate(3, 2.5, 'quad').method == 'contour'
        assert basis.evaluate(3, 10.5, 'cusp').method == 'laplace'
        assert basis.evaluate(300, 320.5, 'phi').method == 'phi_approx'

    def test_errors(self):
        with pytest.raises(DomainError):
            basis.evaluate(3, 1 + 1j, 'collocation')

        with pytest.raises(DomainError):
            basis.evaluate(3, 2.5, 'newton')
