"""qbounds: valid MSE lower bounds for quantum parameter estimation.

Computes the Bayesian quantum Cramer-Rao bound and the optimal biased bound
(closed form and variational), and simulates the Bayesian MMSE estimator for
binomial measurement models, on a shared deterministic grid.
"""

from .bounds import (
    BoundMethod,
    BoundReport,
    SolverDiagnostics,
    bayesian_qcrb,
    bias_ode_residual,
    bound_functional,
    grid_derivative,
    obb_closed_form,
    obb_variational,
    optimal_bias_closed_form,
    solve_optimal_bias,
)
from .core import (
    DEFAULT_GRID_M,
    EstimationProblem,
    GridFunction,
    ParameterGrid,
    PriorDensity,
    QfiProfile,
    TargetFunction,
    make_uniform_prior,
    validate_problem,
)
from .errors import (
    ConfigError,
    ConvergenceFailure,
    DomainError,
    GridMismatch,
    InvalidGrid,
    InvalidSupport,
    InvariantViolation,
    NonPositiveQfi,
    QboundsError,
    SingularSystem,
    UnnormalizedPrior,
    UnsupportedExample,
    ZeroEvidence,
)
from .estimation import (
    BinaryMeasurementModel,
    MmseReport,
    OutcomeDistribution,
    mmse_estimates,
    mmse_mse,
    mse_via_decomposition,
    outcome_pmf,
    posterior,
)
from .models import (
    DephasingParams,
    FieldParams,
    InterferometerParams,
    NoonParams,
    dephasing_model,
    field_model,
    interferometer_problem,
    interferometer_qfi,
    noon_model,
)
from .numerics import (
    TridiagonalSystem,
    composite_simpson,
    log_binomial_pmf,
    simpson_integrate,
    solve_tridiagonal,
)

__version__ = "0.1.0"
