"""Optimal analytic continuation from discrete samples in a reproducing kernel Hilbert space.

Given a kernel, sample points ``z_1..z_n`` and a target ``z``, computes the
worst-case value ``A_z(eps)`` of ``|f(z)|`` over functions with ``||f|| <= 1``
and sample l2 norm at most ``eps``, the extremal function, the small-eps
expansion ``(1 + sigma eps) A_z(0)`` and the optimal linear estimator.
"""
from .continuation import (
    BoundResult,
    MaximizerRep,
    build_maximizer,
    compute_bound,
    eta_equation_residual,
    evaluate_maximizer,
    phi,
    sigma_coefficient,
    solve_eta,
)
from .errors import (
    BracketError,
    ContinuationError,
    ConvergenceError,
    DimensionError,
    DomainError,
    DuplicatePointError,
    EmptyDataError,
    RegimeError,
)
from .kernels import (
    KernelFamily,
    KernelSpec,
    ProblemInstance,
    bergman,
    gaussian,
    kernel_eval,
    paley_wiener,
    szego,
    validate_instance,
)
from .oracle import (
    SandwichReport,
    asymptotic_order_check,
    dual_upper_bound,
    primal_lower_bound,
    sandwich,
)
from .recovery import RecoveryResult, optimal_coefficients, worst_case_error
from .spectral import (
    GramData,
    Regime,
    SpectralData,
    analyze,
    assemble_gram,
    build_spectral_data,
    hermitian_eig,
)

__version__ = "0.1.0"
