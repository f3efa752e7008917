"""Mapped-Chebyshev quadrature on equispaced and quasi-uniform nodes.

Nodes are pushed through the Kosloff Tal-Ezer map
``M_alpha(x) = sin(alpha pi x / 2) / sin(alpha pi / 2)`` and the samples are
fitted (KTL, weighted least squares) or interpolated (KTI) in the mapped
Chebyshev basis ``T_j(M_alpha(x))``. Integrating the fit gives quadrature
weights that are exact on the mapped polynomial space.

>>> import numpy as np
>>> from mappedquad import equispaced_closed, ktl_rule, integrate
>>> rule = ktl_rule(0.9, equispaced_closed(200), 100)
>>> bool(abs(integrate(rule, np.cos) - 2 * np.sin(1.0)) < 1e-10)
True
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    IntegrationBudgetError,
    MappedQuadError,
    MomentConvergenceError,
    NodeGenerationError,
    RankDeficiencyError,
    SingularSystemError,
)
from .kt_map import MapParam, cosine_map, kt_derivative, kt_forward, kt_inverse
from .lsq import (
    DesignMatrix,
    LSWeightDiag,
    SolveReport,
    WeightedQR,
    build_design,
    condition_estimate,
    ls_mu_weights,
    solve_coefficients,
    solve_weights,
)
from .moments import MomentVector, clenshaw_curtis, moments, moments_alpha_zero, moments_cosine
from .monomial import RecursionTrace, monomial_moment, sine_power_integral_recursive
from .nodes import (
    NODE_FAMILIES,
    NodeSet,
    equispaced_closed,
    equispaced_midpoint,
    fill_distance,
    halton_nodes,
    make_nodes,
    perturbed_equispaced,
    van_der_corput,
)
from .oracle import TestFunction, adaptive_integral, get_test_function, reference, relative_error
from .quadrature import (
    QuadratureRule,
    WeightDiagnostics,
    integrate,
    integrate_coefficients,
    kti_rule,
    ktl_rule,
    mapped_interp_rule,
    mapped_simpson_rule,
    trapezoid_weights,
    weight_diagnostics,
)
from .strategies import (
    DynArctan,
    DynLog,
    Fixed,
    Full,
    Ratio,
    SqrtC,
    StrategySpec,
    format_strategy,
    parse_strategy,
    resolve,
)
