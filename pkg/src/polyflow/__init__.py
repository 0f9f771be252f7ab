"""polyflow: all zeros of a complex monic polynomial via an ODE
homotopy flow on the roots."""

from ._backend import BACKEND
from .errors import (
    InitializationError,
    NoConvergence,
    OracleFailure,
    PolyflowError,
    ResidualTooLarge,
    SingularityError,
    StepBudgetExhausted,
)
from .flow import (
    FlowState,
    HomotopyProblem,
    gamma_at,
    homotopy_residual,
    identity_fd_check,
    make_problem,
    vector_field,
)
from .integrator import IntegratorConfig, Trajectory, integrate, integrate_ode
from .oracle import durand_kerner, quadratic_roots
from .poly import (
    MonicPolynomial,
    cauchy_root_bound,
    coeffs_from_roots,
    eval_tail,
    min_pairwise_distance,
    normalized_residual,
    poly_eval,
)
from .solver import (
    SolveReport,
    SolverConfig,
    match_root_sets,
    newton_polish,
    sample_initial_data,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FlowState",
    "HomotopyProblem",
    "InitializationError",
    "IntegratorConfig",
    "MonicPolynomial",
    "NoConvergence",
    "OracleFailure",
    "PolyflowError",
    "ResidualTooLarge",
    "SingularityError",
    "SolveReport",
    "SolverConfig",
    "StepBudgetExhausted",
    "Trajectory",
    "cauchy_root_bound",
    "coeffs_from_roots",
    "durand_kerner",
    "eval_tail",
    "gamma_at",
    "homotopy_residual",
    "identity_fd_check",
    "integrate",
    "integrate_ode",
    "make_problem",
    "match_root_sets",
    "min_pairwise_distance",
    "newton_polish",
    "normalized_residual",
    "poly_eval",
    "quadratic_roots",
    "sample_initial_data",
    "solve",
    "vector_field",
]
