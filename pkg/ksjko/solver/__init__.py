"""Minimizing-movement solver: block subproblems, steps and trajectories."""

from ksjko.solver.config import InnerSolverConfig
from ksjko.solver.jko import evolve, jko_step, penalized_energy
from ksjko.solver.subproblems import (
    XSolveReport,
    minimize_quantile_functional,
    solve_v_subproblem,
    solve_x_subproblem,
)
from ksjko.solver.trajectory import JkoStepReport, JkoTrajectory

__all__ = [
    "InnerSolverConfig",
    "JkoStepReport",
    "JkoTrajectory",
    "XSolveReport",
    "evolve",
    "jko_step",
    "minimize_quantile_functional",
    "penalized_energy",
    "solve_v_subproblem",
    "solve_x_subproblem",
]
