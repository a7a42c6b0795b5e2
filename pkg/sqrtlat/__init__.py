# -*- coding: utf-8 -*-

__author__ = 'Michael Housh'
__email__ = 'mhoush@houshhomeenergy.com'
__version__ = '0.1.0'

from .exceptions import (SqrtLatError, DomainError, GroupMembershipError,
                         TruncationError, PoleError, ConditioningError,
                         PrecisionError, NearZeroError, ToleranceFailure,
                         ConfigError)
from .config import Config, get_config, set_config
from .series import HalfIntSeries
from .group import (UpperHalfPoint, GroupElement, group_element, T2,
                    reduce_to_fundamental, height)
from .modular import (theta, lambda_J, q_expansions, cusp_one_expansions,
                      g_expansion, q_polynomial, g_value, kernel_K)
from .kloosterman import (nu_theta, S, S_tilde, rademacher_a,
                          rademacher_a_tilde, CoeffTable, coeff_table)
from .special import (hurwitz_zeta, PhiEvaluator, PsiEvaluator, phi, psi,
                      theta_sum, psi_moment, psi_growth_scan)
from .quadrature import ArcQuadrature
from .basis import (EvalResult, CollocationSolver, build_solver, solver_for,
                    eval_all, eval_collocation, eval_contour, eval_laplace,
                    h_laplace, h_phi_approx, eval_phi_approx, generating_F,
                    generating_F_kernel, regime_asymptotic, evaluate)
from .analysis import (HEvaluator, real_zeros, count_zeros_delta,
                       count_zeros_rectangle, moment_fn, l2_norm, l2_sum,
                       histogram_values, verify_interpolation, sup_scan)
from .utils import method_aliases, parse_method


__all__ = [
    # exceptions
    'SqrtLatError', 'DomainError', 'GroupMembershipError', 'TruncationError',
    'PoleError', 'ConditioningError', 'PrecisionError', 'NearZeroError',
    'ToleranceFailure', 'ConfigError',

    # config
    'Config', 'get_config', 'set_config',

    # modular core
    'HalfIntSeries', 'UpperHalfPoint', 'GroupElement', 'group_element', 'T2',
    'reduce_to_fundamental', 'height', 'theta', 'lambda_J', 'q_expansions',
    'cusp_one_expansions', 'g_expansion', 'q_polynomial', 'g_value',
    'kernel_K',

    # kloosterman
    'nu_theta', 'S', 'S_tilde', 'rademacher_a', 'rademacher_a_tilde',
    'CoeffTable', 'coeff_table',

    # special functions
    'hurwitz_zeta', 'PhiEvaluator', 'PsiEvaluator', 'phi', 'psi',
    'theta_sum', 'psi_moment', 'psi_growth_scan',

    # basis
    'ArcQuadrature', 'EvalResult', 'CollocationSolver', 'build_solver',
    'solver_for', 'eval_all', 'eval_collocation', 'eval_contour',
    'eval_laplace', 'h_laplace', 'h_phi_approx', 'eval_phi_approx',
    'generating_F', 'generating_F_kernel', 'regime_asymptotic', 'evaluate',

    # analysis
    'HEvaluator', 'real_zeros', 'count_zeros_delta', 'count_zeros_rectangle',
    'moment_fn', 'l2_norm', 'l2_sum', 'histogram_values',
    'verify_interpolation', 'sup_scan',

    # utils
    'method_aliases', 'parse_method'

]
