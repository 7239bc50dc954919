"""Analysis and solution of ``X = A f(X) B + C`` for ``f`` in {identity,
transpose, conjugate, conjugate transpose}, plus the N-term generalization."""

from .analysis import (
    AnalysisReport,
    analyze,
    auxiliary_stein,
    check_solvability,
    check_uniqueness,
    convergence_precheck,
    degrees_of_freedom,
    lift_to_linear_system,
)
from .closedform import GeneralSolution, general_solution, lift_general_solution, solve_stein_closed, solve_unique
from .equations import EquationSpec
from .errors import (
    DimensionError,
    DivergenceDetected,
    NoConvergence,
    NotSolvable,
    NotUnique,
    PrecheckFailed,
    SingularDenominator,
    SteinError,
)
from .genstein import build_auxiliary_general, solve_general_n
from .iterative import IterationTrace, SolveOptions, r_smith, residual, smith, smith_l

__version__ = "0.1.0"
