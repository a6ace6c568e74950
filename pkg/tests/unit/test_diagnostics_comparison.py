"""Unit tests for the JKO versus finite-difference comparison."""

import numpy as np
import pytest
from scipy.stats import norm

from ksjko.core.errors import InvalidArgumentError
from ksjko.diagnostics.comparison import compare_trajectories
from ksjko.energetics.params import ModelParams
from ksjko.reference.fd import FdConfig, fd_evolve
from ksjko.solver.jko import evolve
from ksjko.transport.grid import EulerianField
from ksjko.transport.metrics import State, wasserstein2
from ksjko.transport.quantiles import QuantileDensity


@pytest.fixture(scope="module")
def ou_runs(ou_params, solver_cfg):
    grid = ou_params.grid
    pdf = norm.pdf(grid.nodes, loc=1.0)
    u0 = EulerianField(grid, pdf / grid.integrate(pdf))
    v0 = EulerianField.zeros(grid)
    jko = evolve(
        State(QuantileDensity.gaussian(1.0, 1.0, ou_params.n_quantiles), v0),
        0.05,
        0.5,
        ou_params,
        solver_cfg,
    )
    fd = fd_evolve(u0, v0, FdConfig(dt=1e-3), 0.5, ou_params)
    return jko, fd, u0, v0


class TestCompareTrajectories:
    """Test gap measurement at the JKO times."""

    def test_runs_agree(self, ou_runs, ou_params, ou_equilibrium):
        """Should keep both discretizations within O(tau) of each other."""
        jko, fd, _, _ = ou_runs
        report = compare_trajectories(jko, fd, ou_params, ou_equilibrium)
        assert report.times == pytest.approx(jko.times)
        assert report.sup_w2_u < 0.05
        assert report.sup_l2_v == 0.0
        assert len(report.w2_fd_to_eq) == len(jko.states)
        assert set(report.summary()) == {"sup_w2_u", "sup_l1_u", "sup_l2_v", "sup_h1_v"}

    def test_both_approach_equilibrium(self, ou_runs, ou_params, ou_equilibrium):
        """Should show both runs moving toward the equilibrium."""
        jko, fd, _, _ = ou_runs
        report = compare_trajectories(jko, fd, ou_params, ou_equilibrium)
        assert report.w2_jko_to_eq[-1] < report.w2_jko_to_eq[0]
        assert report.w2_fd_to_eq[-1] < report.w2_fd_to_eq[0]
        assert np.isclose(report.w2_fd_to_eq[-1], report.w2_jko_to_eq[-1], atol=0.05)

    def test_short_oracle_raises(self, ou_runs, ou_params):
        """Should refuse an oracle that stops before the JKO run."""
        jko, _, u0, v0 = ou_runs
        fd = fd_evolve(u0, v0, FdConfig(dt=1e-3), 0.2, ou_params)
        with pytest.raises(InvalidArgumentError, match="before the JKO run"):
            compare_trajectories(jko, fd, ou_params)


def sup_gap_to_ou(tau, p, solver_cfg, mean0=2.0):
    """sup over the JKO times of W2 to the exact Ornstein-Uhlenbeck solution."""
    s0 = State(QuantileDensity.gaussian(mean0, 1.0, p.n_quantiles), EulerianField.zeros(p.grid))
    traj = evolve(s0, tau, 1.0, p, solver_cfg)
    return max(
        wasserstein2(s.u, QuantileDensity.gaussian(mean0 * np.exp(-t), 1.0, p.n_quantiles))
        for t, s in zip(traj.times, traj.states)
    )


class TestTimeStepConsistency:
    """Test that halving tau halves the gap to a fine reference."""

    def test_ou_gap_halves_with_tau(self, ou_params, solver_cfg):
        """Should shrink the gap to the exact solution at first order in tau."""
        coarse = sup_gap_to_ou(0.1, ou_params, solver_cfg)
        fine = sup_gap_to_ou(0.05, ou_params, solver_cfg)
        assert coarse == pytest.approx(0.1 / np.e, rel=0.25)
        assert 1.7 <= coarse / fine <= 2.3

    @pytest.mark.slow
    def test_coupled_gap_to_fine_oracle_shrinks(self, solver_cfg):
        """Should shrink the sup W2 gap to a fine oracle by 1.4 to 3 times when tau halves."""
        p = ModelParams.quadratic(chi=0.05, kappa=1.0, lambda0=1.0, n_cells=800, n_quantiles=400)
        grid = p.grid
        pdf = norm.pdf(grid.nodes, loc=1.0, scale=np.sqrt(2.0))
        u0 = EulerianField(grid, pdf / grid.integrate(pdf))
        v0 = EulerianField.zeros(grid)
        fd = fd_evolve(u0, v0, FdConfig(dt=2.5e-4, record_every=40), 1.0, p)
        gaps = []
        for tau in (0.04, 0.02):
            s0 = State(QuantileDensity.gaussian(1.0, 2.0, p.n_quantiles), v0)
            jko = evolve(s0, tau, 1.0, p, solver_cfg)
            gaps.append(compare_trajectories(jko, fd, p).sup_w2_u)
        assert 1.4 <= gaps[0] / gaps[1] <= 3.0
