"""Euler's method with stepwise global error control.

The global error of Euler's method is estimated node by node by integrating
the Taylor-Lagrange function of the first-order expansion with the
Dormand-Prince 8(5,3) triple, and the Euler value is replaced ("quenched")
by the Taylor reconstruction whenever the estimate breaches the tolerance.
"""

from .bootstrap import BootstrapError, BootstrapResult, bootstrap
from .heuristics import (STABILITY_CONSTANT, HeuristicReport, stability_cap,
                         suggest_initial_stepsize, suggest_local_tolerance)
from .lagrange import FieldSingularity, LagrangeField
from .problems import (ScalarAutonomousProblem, builtin_problems,
                       constant_slope_problem, exact_solution, get_problem)
from .rk import (DP853, RK4, RK7, ButcherTableau, StepFailure, TripleState,
                 dp853_triple_step, euler_step, rk4_step, rk7_step)
from .solver import (SolveResult, SolverConfig, SolverError, StepDiagnostics,
                     baseline_euler_max_error, primary_lec, quench_test,
                     remainder_error, secondary_lec, solve)

__version__ = "0.1.0"

__all__ = [
    "BootstrapError", "BootstrapResult", "bootstrap",
    "STABILITY_CONSTANT", "HeuristicReport", "stability_cap",
    "suggest_initial_stepsize", "suggest_local_tolerance",
    "FieldSingularity", "LagrangeField",
    "ScalarAutonomousProblem", "builtin_problems", "constant_slope_problem",
    "exact_solution", "get_problem",
    "DP853", "RK4", "RK7", "ButcherTableau", "StepFailure", "TripleState",
    "dp853_triple_step", "euler_step", "rk4_step", "rk7_step",
    "SolveResult", "SolverConfig", "SolverError", "StepDiagnostics",
    "baseline_euler_max_error", "primary_lec", "quench_test",
    "remainder_error", "secondary_lec", "solve",
]
