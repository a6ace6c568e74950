"""The two block subproblems of a JKO step.

The v-block is a quadratic problem solved exactly by one tridiagonal
solve. The X-block minimizes, over strictly increasing quantiles,

    F(X) = 1/(2 tau) mean((X - X~)^2) + S(X) + mean(W(X)) - chi mean(v(X))

by Newton's method with the exact tridiagonal Hessian of S, an Armijo line
search capped to keep X increasing and inside the grid, and a steepest
descent fallback.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from ksjko.core.errors import InnerStallError, InvalidArgumentError
from ksjko.energetics.entropy import (
    internal_energy,
    internal_energy_gradient,
    internal_energy_hessian,
)
from ksjko.energetics.params import ModelParams
from ksjko.energetics.potential import CoupledPotential, PotentialSpec
from ksjko.numerics.tridiag import solve_shifted_neumann
from ksjko.solver.config import InnerSolverConfig
from ksjko.transport.grid import EulerianField, Grid, require_same_grid
from ksjko.transport.quantiles import QuantileDensity, deposit_quantiles
from ksjko.utils.logger import logger

FloatArray = NDArray[np.float64]

FRACTION_TO_BOUNDARY = 0.995


@dataclass(frozen=True)
class XSolveReport:
    """Outcome of one X-block minimization."""

    iterations: int
    grad_norm: float
    steepest_steps: int
    objective: float


def _check_tau(tau: float) -> None:
    if not tau > 0.0:
        raise InvalidArgumentError(f"time step tau must be positive, got {tau}")


def solve_v_subproblem(
    v_prev: EulerianField, u: QuantileDensity, tau: float, p: ModelParams
) -> EulerianField:
    """Exact minimizer of the v-block of the penalized energy.

    Solves ``(1/tau + kappa) v - D2 v = v_prev / tau + chi u_i`` with Neumann
    closure, where u_i is the hat-function deposition of the quantile masses
    divided by the trapezoid weights (the adjoint of sampling v at X).

    Args:
        v_prev: Chemoattractant of the previous step
        u: Current quantiles
        tau: Time step
        p: Model parameters

    Returns:
        The new chemoattractant field

    Raises:
        InvalidArgumentError: If tau <= 0
    """
    _check_tau(tau)
    grid = v_prev.grid
    require_same_grid(p.grid, grid)
    rhs = v_prev.values / tau
    if p.chi != 0.0:
        rhs = rhs + p.chi * deposit_quantiles(u, grid) / grid.weights
    return EulerianField(grid, solve_shifted_neumann(1.0 / tau + p.kappa, rhs, grid.h))


class _QuantileFunctional:
    """F(X) = inv_tau/2 mean((X - anchor)^2) + S(X) + mean(V(X)) on a grid."""

    def __init__(
        self, anchor: FloatArray, inv_tau: float, potential: PotentialSpec, grid: Grid
    ):
        self.anchor = anchor
        self.inv_tau = inv_tau
        self.potential = potential
        self.grid = grid
        self.n = anchor.size

    def admissible(self, x: FloatArray) -> bool:
        return bool(np.all(np.diff(x) > 0.0)) and self.grid.contains(x)

    def value(self, x: FloatArray) -> float:
        if not self.admissible(x):
            return math.inf
        prox = 0.0
        if self.inv_tau:
            prox = 0.5 * self.inv_tau * float(np.mean((x - self.anchor) ** 2))
        return prox + internal_energy(x) + float(np.mean(self.potential.sample(x)[0]))

    def gradient(self, x: FloatArray) -> FloatArray:
        slopes = self.potential.sample(x)[1]
        return (self.inv_tau * (x - self.anchor) + slopes) / self.n + internal_energy_gradient(x)

    def hessian(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        curv = self.potential.sample(x)[2]
        diag, off = internal_energy_hessian(x)
        return diag + (self.inv_tau + np.maximum(curv, 0.0)) / self.n, off

    def grad_norm(self, g: FloatArray) -> float:
        return self.n * float(np.max(np.abs(g)))


def _newton_direction(diag: FloatArray, off: FloatArray, g: FloatArray) -> Optional[FloatArray]:
    ab = np.zeros((2, diag.size))
    ab[0, 1:] = off
    ab[1, :] = diag
    try:
        d = np.asarray(scipy.linalg.solveh_banded(ab, -g), dtype=np.float64)
    except (np.linalg.LinAlgError, ValueError):
        return None
    if not np.all(np.isfinite(d)) or float(np.dot(g, d)) >= 0.0:
        return None
    return d


def _max_step(x: FloatArray, d: FloatArray, half_width: float) -> float:
    """Largest step keeping X strictly increasing and inside [-R, R], shrunk slightly."""
    step = math.inf
    dd = np.diff(d)
    closing = dd < 0.0
    if np.any(closing):
        step = min(step, float(np.min(np.diff(x)[closing] / -dd[closing])))
    right = d > 0.0
    if np.any(right):
        step = min(step, float(np.min((half_width - x[right]) / d[right])))
    left = d < 0.0
    if np.any(left):
        step = min(step, float(np.min((x[left] + half_width) / -d[left])))
    return FRACTION_TO_BOUNDARY * step


def minimize_quantile_functional(
    x_start: FloatArray,
    anchor: FloatArray,
    inv_tau: float,
    potential: PotentialSpec,
    grid: Grid,
    cfg: InnerSolverConfig,
) -> tuple[FloatArray, XSolveReport]:
    """Newton minimization of the quantile functional from ``x_start``.

    ``inv_tau = 0`` drops the proximal term (the equilibrium problem).

    Returns:
        Tuple of (minimizer, report)

    Raises:
        InnerStallError: If neither Newton nor steepest descent can decrease F
    """
    fn = _QuantileFunctional(anchor, inv_tau, potential, grid)
    x = np.array(x_start, dtype=np.float64)
    f = fn.value(x)
    if not math.isfinite(f):
        raise InvalidArgumentError("starting quantiles are not admissible")
    g = fn.gradient(x)
    gnorm = fn.grad_norm(g)
    roundoff = 16.0 * np.finfo(float).eps
    steepest_steps = 0
    iterations = 0

    while gnorm > cfg.grad_tol and iterations < cfg.max_newton_iters:
        iterations += 1
        diag, off = fn.hessian(x)
        newton = _newton_direction(diag, off, g)
        candidates = [("newton", newton)] if newton is not None else []
        candidates.append(("steepest", -g / diag))

        accepted = False
        for kind, d in candidates:
            slope = float(np.dot(g, d))
            alpha = min(1.0, _max_step(x, d, grid.half_width))
            for _ in range(cfg.max_backtracks):
                trial = x + alpha * d
                f_trial = fn.value(trial)
                if f_trial <= f + cfg.armijo * alpha * slope:
                    accepted = True
                elif gnorm <= cfg.stall_tol and f_trial - f <= roundoff * (1.0 + abs(f)):
                    # below rounding level of F: accept when the gradient shrinks
                    accepted = fn.grad_norm(fn.gradient(trial)) < 0.5 * gnorm
                if accepted:
                    break
                alpha *= cfg.backtracking
            if accepted:
                if kind == "steepest":
                    steepest_steps += 1
                    logger.warning(f"X-block fell back to steepest descent (|g|={gnorm:.3e})")
                x, f = trial, f_trial
                g = fn.gradient(x)
                gnorm = fn.grad_norm(g)
                break

        if not accepted:
            if gnorm <= cfg.stall_tol + potential.max_slope_jump():
                logger.debug(f"X-block stopped at a kink or rounding floor (|g|={gnorm:.3e})")
                break
            raise InnerStallError(
                f"quantile subproblem stalled with gradient norm {gnorm:.3e}",
                last_iterate=QuantileDensity(x),
                gradient_norm=gnorm,
            )

    return x, XSolveReport(
        iterations=iterations, grad_norm=gnorm, steepest_steps=steepest_steps, objective=f
    )


def solve_x_subproblem(
    x_prev: QuantileDensity,
    v: EulerianField,
    tau: float,
    p: ModelParams,
    cfg: InnerSolverConfig,
    x_start: Optional[QuantileDensity] = None,
) -> QuantileDensity:
    """Minimize the X-block of the penalized energy for a frozen field v.

    Args:
        x_prev: Quantiles of the previous step (the proximal anchor)
        v: Current chemoattractant field
        tau: Time step
        p: Model parameters
        cfg: Inner solver settings
        x_start: Warm start (defaults to x_prev)

    Returns:
        Strictly increasing minimizer

    Raises:
        InvalidArgumentError: If tau <= 0
        InnerStallError: If no descent is possible away from a stationary point
    """
    _check_tau(tau)
    x, _ = solve_x_block(x_prev, v, tau, p, cfg, x_start)
    return x


def solve_x_block(
    x_prev: QuantileDensity,
    v: EulerianField,
    tau: float,
    p: ModelParams,
    cfg: InnerSolverConfig,
    x_start: Optional[QuantileDensity] = None,
) -> tuple[QuantileDensity, XSolveReport]:
    """solve_x_subproblem, also returning the Newton report."""
    _check_tau(tau)
    require_same_grid(p.grid, v.grid)
    start = x_prev if x_start is None else x_start
    potential = CoupledPotential(p.potential, p.chi, v)
    x, report = minimize_quantile_functional(
        start.positions, x_prev.positions, 1.0 / tau, potential, p.grid, cfg
    )
    return QuantileDensity(x), report
