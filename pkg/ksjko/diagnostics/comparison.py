"""Cross-validation of a JKO trajectory against the finite-difference oracle."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ksjko.core.errors import InvalidArgumentError
from ksjko.energetics.params import ModelParams
from ksjko.equilibrium.picard import EquilibriumPair
from ksjko.reference.fd import FdTrajectory
from ksjko.solver.trajectory import JkoTrajectory
from ksjko.transport.grid import require_same_grid
from ksjko.transport.metrics import wasserstein2
from ksjko.transport.quantiles import density_to_quantiles, quantiles_to_density


@dataclass
class ComparisonReport:
    """Gaps between the two discretizations at the JKO times."""

    times: list[float] = field(default_factory=list)
    w2_u: list[float] = field(default_factory=list)
    l1_u: list[float] = field(default_factory=list)
    l2_v: list[float] = field(default_factory=list)
    h1_v: list[float] = field(default_factory=list)
    w2_jko_to_eq: list[float] = field(default_factory=list)
    w2_fd_to_eq: list[float] = field(default_factory=list)

    @staticmethod
    def _sup(values: list[float]) -> float:
        return max(values) if values else 0.0

    @property
    def sup_w2_u(self) -> float:
        return self._sup(self.w2_u)

    @property
    def sup_l1_u(self) -> float:
        return self._sup(self.l1_u)

    @property
    def sup_l2_v(self) -> float:
        return self._sup(self.l2_v)

    @property
    def sup_h1_v(self) -> float:
        return self._sup(self.h1_v)

    def summary(self) -> dict[str, float]:
        return {
            "sup_w2_u": self.sup_w2_u,
            "sup_l1_u": self.sup_l1_u,
            "sup_l2_v": self.sup_l2_v,
            "sup_h1_v": self.sup_h1_v,
        }


def compare_trajectories(
    jko: JkoTrajectory,
    fd: FdTrajectory,
    p: ModelParams,
    eq: Optional[EquilibriumPair] = None,
) -> ComparisonReport:
    """Measure W2 and L1 gaps of u and L2 and H1 gaps of v at every JKO time.

    The oracle is read at each JKO time with the same piecewise-constant
    convention as the JKO trajectory, and its density is converted to
    quantiles at the JKO resolution.

    Args:
        jko: JKO trajectory
        fd: Oracle trajectory covering the same time range
        p: Model parameters shared by both runs
        eq: Optional equilibrium; adds the W2 distance of both runs to it

    Returns:
        ComparisonReport

    Raises:
        GridMismatchError: If the runs use different grids
        InvalidArgumentError: If the oracle stops before the JKO run
    """
    if not jko.states or not fd.times:
        raise InvalidArgumentError("cannot compare empty trajectories")
    require_same_grid(p.grid, jko.states[0].v.grid)
    require_same_grid(p.grid, fd.v[0].grid)
    if fd.times[-1] < jko.final_time * (1.0 - 1e-9):
        raise InvalidArgumentError(
            f"oracle ends at t={fd.times[-1]:g} before the JKO run (t={jko.final_time:g})"
        )

    report = ComparisonReport()
    grid = p.grid
    for t, state in zip(jko.times, jko.states):
        u_fd, v_fd = fd.at(t)
        x_fd = density_to_quantiles(u_fd, state.u.n_quantiles)
        u_jko = quantiles_to_density(state.u, grid)
        v_gap = state.v - v_fd

        report.times.append(t)
        report.w2_u.append(wasserstein2(state.u, x_fd))
        report.l1_u.append(grid.integrate(np.abs(u_jko.values - u_fd.values)))
        report.l2_v.append(v_gap.l2_norm())
        report.h1_v.append(v_gap.h1_norm())
        if eq is not None:
            report.w2_jko_to_eq.append(wasserstein2(state.u, eq.x_inf))
            report.w2_fd_to_eq.append(wasserstein2(x_fd, eq.x_inf))
    return report
