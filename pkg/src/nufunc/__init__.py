"""Numerical library for the Volterra nu-function family.

Core surface: the nu function and its two-argument and generalized-family
extensions (``nu``, ``nu_alpha``, ``nu_general``), the structure functions
behind them, coherent-state kernels built on those integrals, a registry
of numerically verified integral identities, and a small operator-
expression scalarizer.  Everything evaluates in log space, through one
adaptive semi-infinite quadrature engine with explicit error accounting.
"""

from .errors import (
    DivergentFamily,
    DomainError,
    NoConvergence,
    NonDecaying,
    NonFinite,
    NuFuncError,
    ParseError,
    ToleranceNotMet,
    UnsupportedFamily,
    UnsupportedNode,
)
from .special import (
    LogSigned,
    complex_pow,
    digamma,
    digamma_inverse,
    log_gamma,
    pochhammer,
    reciprocal_gamma,
    reciprocal_gamma_log_signed,
)
from .quadrature import (
    IntegrandProbe,
    IntegrationResult,
    QuadSpec,
    integrate_polar_2d,
    integrate_semi_infinite,
    integrate_semi_infinite_detailed,
    integrate_vector_semi_infinite,
    locate_peak,
)
from .nu import (
    ConvergenceDomain,
    HyperParams,
    StructureFn,
    convergence_domain,
    nu,
    nu_alpha,
    nu_alpha_detailed,
    nu_alpha_positive_batch,
    nu_complex_grid,
    nu_general,
    nu_general_detailed,
    nu_general_log,
    nu_on_circle,
    nu_positive_batch,
    pfq_series,
    pfq_series_log,
    rho_continuous,
    rho_discrete,
)
from .coherent import (
    CsLabel,
    TransitionDensity,
    cs_coefficient_continuous,
    cs_coefficient_discrete,
    dc_limit_check,
    kp_coefficient,
    overlap_continuous,
    poisson_density_discrete,
    transition_density,
)
from .doot import (
    DootExpr,
    Exp,
    MatrixElementQuery,
    NormalOrder,
    NuWrap,
    Power,
    Product,
    Scalar,
    Sum,
    SymbolMinus,
    SymbolPlus,
    displacement_expectation,
    exp_argument_matrix_elements,
    normal_order,
    parse_expression,
    scalarize,
)
from .identities import (
    IdentityCase,
    IdentityReport,
    check_complex_gaussian,
    check_derivative_relation,
    check_eq_4_20,
    check_eq_4_22,
    check_formal_series_4_21,
    check_laplace_nu,
    check_weighted_nu_integral,
    registered_cases,
    reports_to_json,
    run_suite,
    suite_passed,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceDomain",
    "CsLabel",
    "DivergentFamily",
    "DomainError",
    "DootExpr",
    "Exp",
    "HyperParams",
    "IdentityCase",
    "IdentityReport",
    "IntegrandProbe",
    "IntegrationResult",
    "LogSigned",
    "MatrixElementQuery",
    "NoConvergence",
    "NonDecaying",
    "NonFinite",
    "NormalOrder",
    "NuFuncError",
    "NuWrap",
    "ParseError",
    "Power",
    "Product",
    "QuadSpec",
    "Scalar",
    "StructureFn",
    "Sum",
    "SymbolMinus",
    "SymbolPlus",
    "ToleranceNotMet",
    "TransitionDensity",
    "UnsupportedFamily",
    "UnsupportedNode",
    "check_complex_gaussian",
    "check_derivative_relation",
    "check_eq_4_20",
    "check_eq_4_22",
    "check_formal_series_4_21",
    "check_laplace_nu",
    "check_weighted_nu_integral",
    "complex_pow",
    "convergence_domain",
    "cs_coefficient_continuous",
    "cs_coefficient_discrete",
    "dc_limit_check",
    "digamma",
    "digamma_inverse",
    "displacement_expectation",
    "exp_argument_matrix_elements",
    "integrate_polar_2d",
    "integrate_semi_infinite",
    "integrate_semi_infinite_detailed",
    "integrate_vector_semi_infinite",
    "kp_coefficient",
    "locate_peak",
    "log_gamma",
    "normal_order",
    "nu",
    "nu_alpha",
    "nu_alpha_detailed",
    "nu_alpha_positive_batch",
    "nu_complex_grid",
    "nu_general",
    "nu_general_detailed",
    "nu_general_log",
    "nu_on_circle",
    "nu_positive_batch",
    "overlap_continuous",
    "parse_expression",
    "pfq_series",
    "pfq_series_log",
    "pochhammer",
    "poisson_density_discrete",
    "reciprocal_gamma",
    "reciprocal_gamma_log_signed",
    "registered_cases",
    "reports_to_json",
    "rho_continuous",
    "rho_discrete",
    "run_suite",
    "scalarize",
    "suite_passed",
    "transition_density",
]
