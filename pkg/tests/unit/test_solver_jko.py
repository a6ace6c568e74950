"""Unit tests for the minimizing-movement solver."""

import math

import numpy as np
import pytest

from ksjko.core.errors import InvalidArgumentError
from ksjko.energetics.entropy import entropy, internal_energy_gradient
from ksjko.numerics.tridiag import neumann_second_difference
from ksjko.solver.config import InnerSolverConfig
from ksjko.solver.jko import evolve, jko_step, penalized_energy
from ksjko.solver.subproblems import solve_v_subproblem, solve_x_subproblem
from ksjko.solver.trajectory import JkoTrajectory
from ksjko.transport.grid import EulerianField
from ksjko.transport.metrics import State, compound_dist
from ksjko.transport.quantiles import QuantileDensity, deposit_quantiles


@pytest.fixture
def gaussian_state(coupled_params):
    grid = coupled_params.grid
    v = EulerianField.from_function(grid, lambda x: 0.2 * np.exp(-(x**2) / 2.0))
    return State(QuantileDensity.gaussian(0.5, 2.0, coupled_params.n_quantiles), v)


class TestInnerSolverConfig:
    """Test inner solver settings validation."""

    def test_defaults_valid(self):
        """Should accept the documented defaults."""
        assert InnerSolverConfig().max_outer_alternations >= 1

    @pytest.mark.parametrize(
        "kwargs",
        [{"backtracking": 1.0}, {"grad_tol": 0.0}, {"max_newton_iters": 0}],
    )
    def test_invalid_settings_raise(self, kwargs):
        """Should reject out-of-range settings."""
        with pytest.raises(InvalidArgumentError):
            InnerSolverConfig(**kwargs)


class TestVSubproblem:
    """Test the exact v-block solve."""

    def test_satisfies_linear_system(self, coupled_params, gaussian_state):
        """Should solve (1/tau + kappa) v - D2 v = v_prev / tau + chi u_i."""
        tau = 0.05
        grid = coupled_params.grid
        v = solve_v_subproblem(gaussian_state.v, gaussian_state.u, tau, coupled_params)
        source = deposit_quantiles(gaussian_state.u, grid) / grid.weights
        lhs = (1.0 / tau + 1.0) * v.values - neumann_second_difference(v.values, grid.h)
        rhs = gaussian_state.v.values / tau + 0.1 * source
        assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_decoupled_zero_field_stays_zero(self, ou_params, zero_field):
        """Should keep v = 0 when chi = 0 and v_prev = 0."""
        u = QuantileDensity.gaussian(0.0, 1.0, ou_params.n_quantiles)
        v = solve_v_subproblem(zero_field, u, 0.1, ou_params)
        assert np.all(v.values == 0.0)

    def test_nonpositive_tau_raises(self, ou_params, zero_field):
        """Should reject tau <= 0."""
        u = QuantileDensity.gaussian(0.0, 1.0, ou_params.n_quantiles)
        with pytest.raises(InvalidArgumentError):
            solve_v_subproblem(zero_field, u, 0.0, ou_params)


class TestXSubproblem:
    """Test the Newton X-block."""

    def test_stationary_point(self, ou_params, zero_field, solver_cfg):
        """Should return quantiles where the block gradient vanishes."""
        tau = 0.1
        x_prev = QuantileDensity.gaussian(1.0, 3.0, ou_params.n_quantiles)
        x = solve_x_subproblem(x_prev, zero_field, tau, ou_params, solver_cfg)
        n = x.n_quantiles
        grad = (
            (x.positions - x_prev.positions) / tau + x.positions
        ) / n + internal_energy_gradient(x.positions)
        assert n * np.max(np.abs(grad)) < 1e-7
        assert np.all(np.diff(x.positions) > 0.0)

    def test_mean_follows_implicit_euler(self, ou_params, zero_field, solver_cfg):
        """Should contract the mean by 1 / (1 + tau) for W = x^2 / 2."""
        tau = 0.1
        x_prev = QuantileDensity.gaussian(2.0, 1.0, ou_params.n_quantiles)
        x = solve_x_subproblem(x_prev, zero_field, tau, ou_params, solver_cfg)
        assert x.mean() == pytest.approx(2.0 / (1.0 + tau), abs=1e-9)


class TestJkoStep:
    """Test one minimizing-movement step."""

    def test_energy_inequality(self, coupled_params, gaussian_state, solver_cfg):
        """Should satisfy H(new) + dist^2 / (2 tau) <= H(old)."""
        tau = 0.05
        new, report = jko_step(gaussian_state, tau, coupled_params, solver_cfg)
        h_old = entropy(gaussian_state, coupled_params).H
        h_new = entropy(new, coupled_params).H
        dist = compound_dist(new, gaussian_state)
        assert h_new + dist**2 / (2.0 * tau) <= h_old + 1e-10
        assert report.step_dist == pytest.approx(dist)
        assert report.energy_decrease >= -1e-10

    def test_penalized_energy_at_anchor(self, coupled_params, gaussian_state):
        """Should reduce to H when the state is its own anchor."""
        assert penalized_energy(
            gaussian_state, gaussian_state, 0.1, coupled_params
        ) == pytest.approx(entropy(gaussian_state, coupled_params).H)

    def test_equilibrium_is_fixed(self, ou_params, ou_equilibrium, solver_cfg):
        """Should not move from the discrete equilibrium."""
        eq = ou_equilibrium
        _, report = jko_step(State(eq.x_inf, eq.v_inf), 0.1, ou_params, solver_cfg)
        assert report.step_dist < 1e-6

    def test_nonpositive_tau_raises(self, coupled_params, gaussian_state, solver_cfg):
        """Should reject tau <= 0."""
        with pytest.raises(InvalidArgumentError):
            jko_step(gaussian_state, -0.1, coupled_params, solver_cfg)


class TestEvolve:
    """Test multi-step runs."""

    def test_step_count_and_times(self, coupled_params, gaussian_state, solver_cfg):
        """Should take ceil(T / tau) steps."""
        traj = evolve(gaussian_state, 0.05, 0.12, coupled_params, solver_cfg)
        assert traj.n_steps == 3
        assert traj.times == pytest.approx([0.0, 0.05, 0.1, 0.15])
        assert len(traj.energies) == 4
        assert len(traj.step_reports) == 3
        assert traj.lyapunov == []

    def test_zero_final_time(self, coupled_params, gaussian_state, solver_cfg):
        """Should return the initial state alone when T = 0."""
        traj = evolve(gaussian_state, 0.05, 0.0, coupled_params, solver_cfg)
        assert traj.n_steps == 0
        assert traj.at(0.0) is gaussian_state

    def test_entropy_nonincreasing(self, coupled_params, gaussian_state, solver_cfg):
        """Should never increase H along the run."""
        traj = evolve(gaussian_state, 0.05, 0.25, coupled_params, solver_cfg)
        H = [e.H for e in traj.energies]
        assert all(b <= a + 1e-10 for a, b in zip(H, H[1:]))

    def test_lyapunov_recorded_with_equilibrium(
        self, coupled_params, coupled_equilibrium, gaussian_state, solver_cfg
    ):
        """Should record strictly decreasing L when an equilibrium is given."""
        traj = evolve(
            gaussian_state, 0.05, 0.2, coupled_params, solver_cfg, equilibrium=coupled_equilibrium
        )
        L = [r.L for r in traj.lyapunov]
        assert len(L) == traj.n_steps + 1
        assert all(b < a for a, b in zip(L, L[1:]))

    def test_progress_callback(self, coupled_params, gaussian_state, solver_cfg):
        """Should call on_step once per step."""
        seen = []
        evolve(
            gaussian_state,
            0.05,
            0.1,
            coupled_params,
            solver_cfg,
            on_step=lambda n, energy: seen.append(n),
        )
        assert seen == [1, 2]

    def test_ornstein_uhlenbeck_variance(self, ou_params, solver_cfg):
        """Should track 1 + 3 exp(-2t) for a N(0, 4) start within 3%."""
        s0 = State(
            QuantileDensity.gaussian(0.0, 4.0, ou_params.n_quantiles),
            EulerianField.zeros(ou_params.grid),
        )
        traj = evolve(s0, 0.01, 0.5, ou_params, solver_cfg)
        for t, state in zip(traj.times, traj.states):
            expected = 1.0 + 3.0 * math.exp(-2.0 * t)
            assert state.u.variance() == pytest.approx(expected, rel=3e-2)

    def test_invalid_arguments_raise(self, coupled_params, gaussian_state, solver_cfg):
        """Should reject tau <= 0 and T < 0."""
        with pytest.raises(InvalidArgumentError):
            evolve(gaussian_state, 0.0, 1.0, coupled_params, solver_cfg)
        with pytest.raises(InvalidArgumentError):
            evolve(gaussian_state, 0.1, -1.0, coupled_params, solver_cfg)


class TestJkoTrajectory:
    """Test the piecewise-constant interpolation."""

    def test_index_at(self, gaussian_state, coupled_params):
        """Should map t in ((n-1) tau, n tau] to iterate n."""
        traj = JkoTrajectory(tau=0.1)
        energy = entropy(gaussian_state, coupled_params)
        for _ in range(4):
            traj.record(gaussian_state, energy)
        assert traj.index_at(0.0) == 0
        assert traj.index_at(0.05) == 1
        assert traj.index_at(0.1) == 1
        assert traj.index_at(0.1000001) == 2
        assert traj.index_at(0.3) == 3

    def test_out_of_range_raises(self, gaussian_state, coupled_params):
        """Should reject times outside [0, T]."""
        traj = JkoTrajectory(tau=0.1)
        traj.record(gaussian_state, entropy(gaussian_state, coupled_params))
        with pytest.raises(InvalidArgumentError):
            traj.index_at(-0.1)
        with pytest.raises(InvalidArgumentError):
            traj.index_at(0.2)
