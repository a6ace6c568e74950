"""Stationary state of the coupled system by damped Picard iteration.

Each sweep freezes v, sets u to the Gibbs density of W - chi v, and solves
the Neumann problem kappa v - v_xx = chi u for the next v.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ksjko.config.defaults import (
    DEFAULT_PICARD_DAMPING,
    DEFAULT_PICARD_MAX_ITERS,
    DEFAULT_PICARD_TOL,
)
from ksjko.core.errors import InvalidArgumentError, NoConvergenceError
from ksjko.energetics.params import ModelParams
from ksjko.energetics.potential import CoupledPotential
from ksjko.numerics.tridiag import neumann_second_difference, solve_shifted_neumann
from ksjko.solver.config import InnerSolverConfig
from ksjko.solver.subproblems import minimize_quantile_functional
from ksjko.transport.grid import EulerianField, require_same_grid
from ksjko.transport.quantiles import QuantileDensity, density_to_quantiles
from ksjko.utils.logger import logger


@dataclass(frozen=True, eq=False)
class EquilibriumPair:
    """The stationary pair (u_inf, v_inf) and how it was reached.

    Attributes:
        u_inf: Gibbs density U_eps exp(-W + chi v_inf), unit trapezoid mass
        v_inf: Stationary chemoattractant
        U_eps: Normalization constant of u_inf
        x_inf: Quantiles of u_inf, polished to the minimizer of the discrete free energy
        iterations: Picard sweeps used
        residual: Last undamped update size sup|v_hat - v|
        residual_history: Update size of every sweep
        r_u: Gibbs residual of the returned pair
        r_v: Elliptic residual of the returned pair
    """

    u_inf: EulerianField
    v_inf: EulerianField
    U_eps: float
    x_inf: QuantileDensity
    iterations: int
    residual: float
    residual_history: tuple[float, ...]
    r_u: float = 0.0
    r_v: float = 0.0


def gibbs_density(p: ModelParams, v: EulerianField) -> tuple[EulerianField, float]:
    """Trapezoid-normalized exp(-W + chi v) on the grid.

    Returns:
        Tuple of (density, normalization constant U)
    """
    require_same_grid(p.grid, v.grid)
    w = p.potential.tables(p.grid)[0]
    exponent = -w + p.chi * v.values
    top = float(np.max(exponent))
    weights = np.exp(exponent - top)
    z = p.grid.integrate(weights)
    return EulerianField(p.grid, weights / z), float(np.exp(-top) / z)


def picard_map(
    p: ModelParams, v: EulerianField
) -> tuple[EulerianField, EulerianField, float]:
    """One undamped sweep: v -> (u(v), v_hat, U)."""
    u, norm = gibbs_density(p, v)
    v_hat = solve_shifted_neumann(p.kappa, p.chi * u.values, p.grid.h)
    return u, EulerianField(p.grid, v_hat), norm


def solve_equilibrium(
    p: ModelParams,
    tol: float = DEFAULT_PICARD_TOL,
    max_iters: int = DEFAULT_PICARD_MAX_ITERS,
    damping: float = DEFAULT_PICARD_DAMPING,
    v_start: Optional[EulerianField] = None,
    cfg: Optional[InnerSolverConfig] = None,
) -> EquilibriumPair:
    """Compute the stationary pair by damped Picard iteration.

    The damping factor is halved whenever the update size grows. The
    iteration stops once the undamped update sup|v_hat - v| is at most tol.
    The quantiles of u_inf are then polished by Newton's method on the
    discrete free energy in W - chi v_inf, so the Lagrangian solver sees an
    exact stationary point.

    Args:
        p: Model parameters (kappa > 0)
        tol: Tolerance on the sup-norm update
        max_iters: Cap on Picard sweeps
        damping: Initial damping factor in (0, 1]
        v_start: Initial chemoattractant (defaults to zero)
        cfg: Inner solver settings for the quantile polish

    Returns:
        EquilibriumPair with both stationarity residuals

    Raises:
        InvalidArgumentError: If kappa <= 0 or an argument is out of range
        NoConvergenceError: If max_iters sweeps do not reach tol
    """
    if not p.kappa > 0.0:
        raise InvalidArgumentError(f"equilibrium requires kappa > 0, got {p.kappa}")
    if not tol > 0.0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")
    if max_iters < 1:
        raise InvalidArgumentError(f"max_iters must be at least 1, got {max_iters}")
    if not 0.0 < damping <= 1.0:
        raise InvalidArgumentError(f"damping must lie in (0, 1], got {damping}")

    v = EulerianField.zeros(p.grid) if v_start is None else v_start
    require_same_grid(p.grid, v.grid)
    theta = damping
    history: list[float] = []

    for k in range(1, max_iters + 1):
        _, v_hat, _ = picard_map(p, v)
        update = float(np.max(np.abs(v_hat.values - v.values)))
        if history and update > history[-1]:
            theta *= 0.5
            logger.warning(f"Picard update grew to {update:.3e}; damping halved to {theta:g}")
        history.append(update)
        logger.debug(f"Picard sweep {k}: update={update:.3e} damping={theta:g}")

        if update <= tol:
            v = v_hat
            break
        v = EulerianField(p.grid, (1.0 - theta) * v.values + theta * v_hat.values)
    else:
        raise NoConvergenceError(
            f"Picard iteration did not reach tol={tol:g} in {max_iters} sweeps "
            f"(last update {history[-1]:.3e})",
            residual_history=history,
        )

    u, norm = gibbs_density(p, v)
    x_inf = _polish_quantiles(p, u, v, cfg or InnerSolverConfig())
    pair = EquilibriumPair(
        u_inf=u,
        v_inf=v,
        U_eps=norm,
        x_inf=x_inf,
        iterations=len(history),
        residual=history[-1],
        residual_history=tuple(history),
    )
    r_u, r_v = stationarity_residual(pair, p)
    logger.info(
        f"Equilibrium reached in {pair.iterations} Picard sweeps "
        f"(r_u={r_u:.2e}, r_v={r_v:.2e})"
    )
    return EquilibriumPair(
        u_inf=u,
        v_inf=v,
        U_eps=norm,
        x_inf=x_inf,
        iterations=pair.iterations,
        residual=pair.residual,
        residual_history=pair.residual_history,
        r_u=r_u,
        r_v=r_v,
    )


def _polish_quantiles(
    p: ModelParams, u: EulerianField, v: EulerianField, cfg: InnerSolverConfig
) -> QuantileDensity:
    x0 = density_to_quantiles(u, p.n_quantiles).positions
    potential = CoupledPotential(p.potential, p.chi, v)
    x, report = minimize_quantile_functional(x0, x0, 0.0, potential, p.grid, cfg)
    logger.debug(
        f"Equilibrium quantiles polished in {report.iterations} Newton steps "
        f"(|g|={report.grad_norm:.2e})"
    )
    return QuantileDensity(x)


def stationarity_residual(eq: EquilibriumPair, p: ModelParams) -> tuple[float, float]:
    """Sup-norm residuals of the discrete stationary system.

    r_u = sup|u_inf - U_eps exp(-W + chi v_inf)| and
    r_v = sup|D2 v_inf - kappa v_inf + chi u_inf|.

    Raises:
        GridMismatchError: If the pair and the model live on different grids
    """
    require_same_grid(p.grid, eq.v_inf.grid)
    require_same_grid(p.grid, eq.u_inf.grid)
    w = p.potential.tables(p.grid)[0]
    gibbs = np.exp(np.log(eq.U_eps) - w + p.chi * eq.v_inf.values)
    r_u = float(np.max(np.abs(eq.u_inf.values - gibbs)))
    elliptic = (
        neumann_second_difference(eq.v_inf.values, p.grid.h)
        - p.kappa * eq.v_inf.values
        + p.chi * eq.u_inf.values
    )
    r_v = float(np.max(np.abs(elliptic)))
    return r_u, r_v
