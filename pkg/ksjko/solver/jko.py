"""Minimizing-movement time stepping over the compound W2-L2 metric."""

import math
from typing import TYPE_CHECKING, Callable, Optional

from ksjko.core.errors import (
    DensityError,
    InvalidArgumentError,
    SolverError,
    TrajectoryAbortedError,
)
from ksjko.energetics.entropy import EnergyReport, entropy
from ksjko.energetics.lyapunov import LyapunovReport, lyapunov_parts
from ksjko.energetics.params import ModelParams
from ksjko.solver.config import InnerSolverConfig
from ksjko.solver.subproblems import solve_v_subproblem, solve_x_block
from ksjko.solver.trajectory import JkoStepReport, JkoTrajectory
from ksjko.transport.metrics import State, compound_dist
from ksjko.utils.logger import logger

if TYPE_CHECKING:
    from ksjko.equilibrium.picard import EquilibriumPair


def penalized_energy(s: State, anchor: State, tau: float, p: ModelParams) -> float:
    """H(s) + dist(s, anchor)^2 / (2 tau)."""
    return entropy(s, p).H + compound_dist(s, anchor) ** 2 / (2.0 * tau)


def jko_step(
    s_prev: State, tau: float, p: ModelParams, cfg: InnerSolverConfig
) -> tuple[State, JkoStepReport]:
    """One step of the scheme: minimize dist^2 / (2 tau) + H from s_prev.

    Alternates the exact v-block with the Newton X-block, warm-starting each
    X-block at the current quantiles, until the penalized energy drops by
    less than ``cfg.energy_decrease_tol``.

    Args:
        s_prev: Previous state (the proximal anchor)
        tau: Time step
        p: Model parameters
        cfg: Inner solver settings

    Returns:
        Tuple of (new state, step report)

    Raises:
        InvalidArgumentError: If tau <= 0
        InnerStallError: If an X-block stalls
    """
    if not tau > 0.0:
        raise InvalidArgumentError(f"time step tau must be positive, got {tau}")

    h_old = entropy(s_prev, p).H
    x = s_prev.u
    best = h_old
    state = s_prev
    newton_iterations = 0
    steepest_steps = 0
    grad_norm = math.nan
    alternations = 0

    for alternations in range(1, cfg.max_outer_alternations + 1):
        v = solve_v_subproblem(s_prev.v, x, tau, p)
        x, x_report = solve_x_block(s_prev.u, v, tau, p, cfg, x_start=x)
        newton_iterations += x_report.iterations
        steepest_steps += x_report.steepest_steps
        grad_norm = x_report.grad_norm

        state = State(x, v)
        current = penalized_energy(state, s_prev, tau, p)
        decrease = best - current
        best = min(best, current)
        if decrease < cfg.energy_decrease_tol:
            break
    else:
        logger.debug(f"JKO step used all {cfg.max_outer_alternations} alternations")

    report = JkoStepReport(
        alternations=alternations,
        grad_norm=grad_norm,
        step_dist=compound_dist(state, s_prev),
        energy_decrease=h_old - penalized_energy(state, s_prev, tau, p),
        newton_iterations=newton_iterations,
        steepest_steps=steepest_steps,
    )
    return state, report


def evolve(
    s0: State,
    tau: float,
    T: float,
    p: ModelParams,
    cfg: InnerSolverConfig,
    equilibrium: Optional["EquilibriumPair"] = None,
    on_step: Optional[Callable[[int, EnergyReport], None]] = None,
) -> JkoTrajectory:
    """Run ceil(T / tau) steps of the scheme from s0.

    Args:
        s0: Initial state
        tau: Time step
        T: Final time (T = 0 gives the initial state only)
        p: Model parameters
        cfg: Inner solver settings
        equilibrium: When given, Lyapunov parts are recorded for every iterate
        on_step: Optional progress callback

    Returns:
        JkoTrajectory with per-iterate energy (and Lyapunov) reports

    Raises:
        InvalidArgumentError: If tau <= 0 or T < 0
        TrajectoryAbortedError: If a step fails; carries the partial trajectory
    """
    if not tau > 0.0:
        raise InvalidArgumentError(f"time step tau must be positive, got {tau}")
    if not T >= 0.0:
        raise InvalidArgumentError(f"final time T must be nonnegative, got {T}")

    n_steps = math.ceil(T / tau - 1e-9) if T > 0.0 else 0
    traj = JkoTrajectory(tau=tau)

    def lyapunov_of(state: State) -> Optional[LyapunovReport]:
        return lyapunov_parts(state, equilibrium, p) if equilibrium is not None else None

    traj.record(s0, entropy(s0, p), lyapunov_of(s0))
    logger.info(f"Running {n_steps} JKO steps (tau={tau}, chi={p.chi}, kappa={p.kappa})")

    state = s0
    for n in range(1, n_steps + 1):
        try:
            state, report = jko_step(state, tau, p, cfg)
            energy = entropy(state, p)
            traj.record(state, energy, lyapunov_of(state), report)
        except (SolverError, DensityError) as e:
            raise TrajectoryAbortedError(
                f"JKO step {n} (t={n * tau:.6g}) failed: {e}", trajectory=traj, cause=e
            ) from e
        logger.debug(
            f"step {n}: H={energy.H:.12g} dist={report.step_dist:.3e} "
            f"alternations={report.alternations}"
        )
        if on_step is not None:
            on_step(n, energy)

    return traj
