"""Finite-volume IMEX solver of the Keller-Segel system on the Eulerian grid.

Used as an independent oracle for the JKO solver. Each node owns the dual
cell of its trapezoid weight; fluxes live on the cell midpoints

    F = -(u_{i+1} - u_i) / h + b u_face,   b = -W_x(mid) + chi (v_{i+1} - v_i) / h

and vanish on the two boundary faces, so the trapezoid mass is conserved.
Diffusion is implicit, drift and the v source are explicit.
"""

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from ksjko.config.defaults import DEFAULT_FD_DT, DEFAULT_FD_RECORD_EVERY, DEFAULT_FD_SCHEME
from ksjko.core.errors import (
    InvalidArgumentError,
    InvalidDensityError,
    NormalizationError,
    StabilityError,
    TrajectoryAbortedError,
)
from ksjko.energetics.params import ModelParams
from ksjko.numerics.tridiag import solve_shifted_neumann, solve_tridiagonal
from ksjko.transport.grid import EulerianField, Grid, require_same_grid
from ksjko.utils.logger import logger

FloatArray = NDArray[np.float64]
FluxScheme = Literal["central", "upwind"]

CLIP_TOL = 1e-10
MASS_TOL = 1e-8
CFL_SAFETY = 0.9


@dataclass(frozen=True)
class FdConfig:
    """Time step and flux reconstruction of the oracle.

    Attributes:
        dt: Time step
        scheme: Face value of u in the drift flux, central average or upwind
        record_every: Keep every n-th step in the trajectory (the last step is always kept)
    """

    dt: float = DEFAULT_FD_DT
    scheme: FluxScheme = DEFAULT_FD_SCHEME  # type: ignore[assignment]
    record_every: int = DEFAULT_FD_RECORD_EVERY

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise InvalidArgumentError(f"dt must be positive, got {self.dt}")
        if self.scheme not in ("central", "upwind"):
            raise InvalidArgumentError(f"unknown flux scheme '{self.scheme}'")
        if self.record_every < 1:
            raise InvalidArgumentError("record_every must be at least 1")


@dataclass
class FdTrajectory:
    """Recorded (time, u, v) triples of an oracle run."""

    times: list[float] = field(default_factory=list)
    u: list[EulerianField] = field(default_factory=list)
    v: list[EulerianField] = field(default_factory=list)

    def record(self, t: float, u: EulerianField, v: EulerianField) -> None:
        self.times.append(t)
        self.u.append(u)
        self.v.append(v)

    def index_at(self, t: float) -> int:
        """First recorded index with time >= t, matching the JKO interpolation."""
        if not self.times:
            raise InvalidArgumentError("empty trajectory")
        slack = 1e-9 * max(abs(t), 1.0)
        i = int(np.searchsorted(np.asarray(self.times), t - slack, side="left"))
        if i >= len(self.times):
            raise InvalidArgumentError(f"time {t} beyond the last record {self.times[-1]}")
        return i

    def at(self, t: float) -> tuple[EulerianField, EulerianField]:
        i = self.index_at(t)
        return self.u[i], self.v[i]


def _drift(grid: Grid, v: FloatArray, p: ModelParams) -> FloatArray:
    mid = 0.5 * (grid.nodes[1:] + grid.nodes[:-1])
    w_x = p.potential.sample(mid)[1]
    return -w_x + p.chi * np.diff(v) / grid.h


def _face_values(u: FloatArray, b: FloatArray, scheme: FluxScheme) -> FloatArray:
    if scheme == "upwind":
        return np.where(b > 0.0, u[:-1], u[1:])
    return 0.5 * (u[:-1] + u[1:])


def check_cfl(dt: float, grid: Grid, b: FloatArray) -> None:
    """Raise if dt exceeds the advective bound h / (2 max|b|)."""
    b_max = float(np.max(np.abs(b))) if b.size else 0.0
    if b_max == 0.0:
        return
    limit = grid.h / (2.0 * b_max)
    if dt > limit:
        raise InvalidArgumentError(
            f"dt={dt:g} violates the CFL bound {limit:.3e}; try dt={CFL_SAFETY * limit:.3e}"
        )


def _diffusion_matrix(grid: Grid, dt: float) -> tuple[FloatArray, FloatArray, FloatArray]:
    n = grid.n_nodes
    inv_h = 1.0 / grid.h
    faces = np.full(n, 2.0)
    faces[0] = faces[-1] = 1.0
    diag = grid.weights / dt + faces * inv_h
    off = np.full(n, -inv_h)
    return off, diag, off


def fd_step(
    u: FloatArray, v: FloatArray, dt: float, scheme: FluxScheme, p: ModelParams
) -> tuple[FloatArray, FloatArray, float]:
    """Advance (u, v) by one IMEX step.

    Returns:
        Tuple of (u_new, v_new, min of u_new before clipping)

    Raises:
        InvalidArgumentError: If dt violates the CFL bound for the new field
    """
    grid = p.grid
    v_new = solve_shifted_neumann(1.0 / dt + p.kappa, v / dt + p.chi * u, grid.h)

    b = _drift(grid, v_new, p)
    check_cfl(dt, grid, b)
    advective = b * _face_values(u, b, scheme)
    divergence = np.zeros_like(u)
    divergence[:-1] += advective
    divergence[1:] -= advective

    lower, diag, upper = _diffusion_matrix(grid, dt)
    u_new = solve_tridiagonal(lower, diag, upper, grid.weights * u / dt - divergence)
    return u_new, v_new, float(np.min(u_new))


def fd_evolve(
    u0: EulerianField, v0: EulerianField, cfg: FdConfig, T: float, p: ModelParams
) -> FdTrajectory:
    """Integrate the Keller-Segel system up to time T.

    Args:
        u0: Nonnegative initial density with unit trapezoid mass
        v0: Initial chemoattractant
        cfg: Oracle settings
        T: Final time
        p: Model parameters (grid shared with u0 and v0)

    Returns:
        FdTrajectory recorded every ``cfg.record_every`` steps

    Raises:
        InvalidArgumentError: If T < 0 or dt violates the CFL bound
        InvalidDensityError: If u0 is negative
        NormalizationError: If u0 does not have unit mass
        TrajectoryAbortedError: If an undershoot below -1e-10 appears; the cause is a
            StabilityError and the partial trajectory is attached
    """
    require_same_grid(p.grid, u0.grid)
    require_same_grid(p.grid, v0.grid)
    if not T >= 0.0:
        raise InvalidArgumentError(f"final time T must be nonnegative, got {T}")
    if float(np.min(u0.values)) < 0.0:
        raise InvalidDensityError("initial density is negative")
    mass = u0.integral()
    if abs(mass - 1.0) > MASS_TOL:
        raise NormalizationError(f"initial density has mass {mass:.12g}, expected 1")
    check_cfl(cfg.dt, p.grid, _drift(p.grid, v0.values, p))

    n_steps = math.ceil(T / cfg.dt - 1e-9) if T > 0.0 else 0
    traj = FdTrajectory()
    traj.record(0.0, u0, v0)
    logger.info(f"Running {n_steps} finite-difference steps (dt={cfg.dt:g}, {cfg.scheme})")

    u, v = u0.values.copy(), v0.values.copy()
    weights = p.grid.weights
    for n in range(1, n_steps + 1):
        t = n * cfg.dt
        u, v, u_min = fd_step(u, v, cfg.dt, cfg.scheme, p)
        if u_min < -CLIP_TOL:
            stability = StabilityError(
                f"negative density {u_min:.3e} at t={t:.6g}", time=t, min_value=u_min
            )
            raise TrajectoryAbortedError(
                f"finite-difference run unstable at step {n}", trajectory=traj, cause=stability
            ) from stability
        if u_min < 0.0:
            logger.warning(f"Clipped negative density {u_min:.2e} at t={t:.6g}")
            u = np.clip(u, 0.0, None)
            u /= float(np.dot(weights, u))
        if n % cfg.record_every == 0 or n == n_steps:
            traj.record(t, EulerianField(p.grid, u.copy()), EulerianField(p.grid, v.copy()))

    return traj
