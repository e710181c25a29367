"""Difference-of-convex optimization laboratory.

Solve ``min f(x) = g(x) - h(x)`` with the classical convex-splitting
iteration, build a worst-case instance whose gradient norms decay at an
exactly prescribed subgeometric rate, and check every inequality the
convergence analysis relies on directly against recorded runs.
"""

from .adversarial import (
    AdversarialInstance,
    HorizonExceededError,
    adv_f_grad,
    adv_h_eval,
    build_adversarial,
    figure_data,
    theoretical_grad_norm,
    zeta_lower_bound,
    zeta_series,
)
from .baselines import GdConfig, run_steepest_descent
from .core import (
    DcError,
    DcInstance,
    FiniteDiffReport,
    Interval,
    OutOfDomainError,
    as_point,
    f_grad,
    f_value,
    finite_diff_check,
    lipschitz_excess,
    make_quadratic_dc,
    strong_convexity_margin,
)
from .rates import (
    BoundCheck,
    RateReport,
    ScaledRateTable,
    SumCheck,
    averaged_gradient_check,
    averaged_gradient_scan,
    build_rate_report,
    descent_sum_check,
    iterations_to_eps,
    monotone_violations,
    scaled_rate_table,
)
from .solver import (
    IterateRecord,
    SolverConfig,
    SubproblemError,
    TerminationReason,
    Trajectory,
    dca_step,
    run_dca,
    solve_subproblem,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialInstance",
    "BoundCheck",
    "DcError",
    "DcInstance",
    "FiniteDiffReport",
    "GdConfig",
    "HorizonExceededError",
    "Interval",
    "IterateRecord",
    "OutOfDomainError",
    "RateReport",
    "ScaledRateTable",
    "SolverConfig",
    "SubproblemError",
    "SumCheck",
    "TerminationReason",
    "Trajectory",
    "adv_f_grad",
    "adv_h_eval",
    "as_point",
    "averaged_gradient_check",
    "averaged_gradient_scan",
    "build_adversarial",
    "build_rate_report",
    "dca_step",
    "descent_sum_check",
    "f_grad",
    "f_value",
    "figure_data",
    "finite_diff_check",
    "iterations_to_eps",
    "lipschitz_excess",
    "make_quadratic_dc",
    "monotone_violations",
    "run_dca",
    "run_steepest_descent",
    "scaled_rate_table",
    "solve_subproblem",
    "strong_convexity_margin",
    "theoretical_grad_norm",
    "zeta_lower_bound",
    "zeta_series",
]
