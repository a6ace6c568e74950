"""Unit tests for the run pipeline and its builders."""

import numpy as np
import pytest

from ksjko.config.loader import validate_config
from ksjko.config.models import SweepSettings
from ksjko.core.errors import (
    ConfigError,
    InsufficientDataError,
    InvalidArgumentError,
    OutputError,
)
from ksjko.core.run_pipeline import (
    RunPipeline,
    build_fd_config,
    build_initial_state,
    build_model_params,
    build_solver_config,
    read_profile,
    sweep_workers,
)


@pytest.fixture
def tiny_spec(tiny_run_config):
    return validate_config(tiny_run_config)


def write_profile(path, x, values, name="u"):
    lines = [f"x,{name}"] + [f"{a:.17g},{b:.17g}" for a, b in zip(x, values)]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestBuilders:
    """Test RunSpec to model conversion."""

    def test_model_params(self, tiny_spec):
        """Should build the quadratic model on [-10, 10]."""
        p = build_model_params(tiny_spec)
        assert p.grid.half_width == pytest.approx(10.0)
        assert p.grid.n_cells == 200
        assert p.n_quantiles == 60
        assert p.kappa == 1.0

    def test_solver_and_fd_configs(self, tiny_spec):
        """Should copy the solver and oracle sections."""
        assert build_solver_config(tiny_spec).grad_tol == tiny_spec.solver.grad_tol
        assert build_fd_config(tiny_spec).dt == tiny_spec.fd.dt

    def test_gaussian_initial_state(self, tiny_spec):
        """Should give matching quantile and nodal forms of N(1, 1)."""
        p = build_model_params(tiny_spec)
        s0, density = build_initial_state(tiny_spec, p)
        assert s0.u.mean() == pytest.approx(1.0, abs=1e-10)
        assert density.integral() == pytest.approx(1.0, abs=1e-12)
        assert s0.v.sup_norm() == 0.0

    def test_uniform_initial_state(self, tiny_run_config):
        """Should reconstruct a unit-mass density from uniform quantiles."""
        spec = validate_config({**tiny_run_config, "u0": {"type": "uniform", "a": -1, "b": 2}})
        p = build_model_params(spec)
        s0, density = build_initial_state(spec, p)
        assert s0.u.positions[0] > -1.0
        assert s0.u.positions[-1] < 2.0
        assert density.integral() == pytest.approx(1.0, abs=1e-6)

    def test_file_initial_density(self, tiny_run_config, tmp_path):
        """Should read and renormalize a density profile relative to base_dir."""
        x = np.linspace(-3.0, 3.0, 61)
        write_profile(tmp_path / "u0.csv", x, 2.0 * np.exp(-(x**2) / 2.0))
        spec = validate_config({**tiny_run_config, "u0": {"type": "file", "path": "u0.csv"}})
        p = build_model_params(spec)
        s0, density = build_initial_state(spec, p, base_dir=tmp_path)
        assert density.integral() == pytest.approx(1.0, abs=1e-12)
        assert s0.u.mean() == pytest.approx(0.0, abs=1e-2)

    def test_gaussian_bump_field(self, tiny_run_config):
        """Should sample the initial chemoattractant bump on the grid."""
        spec = validate_config(
            {**tiny_run_config, "v0": {"type": "gaussian-bump", "amplitude": 0.2}}
        )
        p = build_model_params(spec)
        s0, _ = build_initial_state(spec, p)
        assert s0.v.sup_norm() == pytest.approx(0.2)

    def test_density_beyond_domain(self, tiny_run_config):
        """Should refuse initial data that leaves [-R, R]."""
        spec = validate_config(
            {**tiny_run_config, "u0": {"type": "gaussian", "mean": 9.5, "variance": 1.0}}
        )
        with pytest.raises(ConfigError, match="increase R"):
            build_initial_state(spec, build_model_params(spec))

    def test_table_potential_coverage(self, tiny_run_config, tmp_path):
        """Should require the potential table to cover the grid."""
        x = np.linspace(-5.0, 5.0, 11)
        write_profile(tmp_path / "w.csv", x, 0.5 * x**2, name="w")
        spec = validate_config(
            {**tiny_run_config, "potential": "table", "potential_table": "w.csv"}
        )
        with pytest.raises(ConfigError, match="potential table covers"):
            build_model_params(spec, base_dir=tmp_path)


class TestReadProfile:
    """Test CSV profile reading."""

    def test_missing_file(self, tmp_path):
        """Should raise OutputError for a missing file."""
        with pytest.raises(OutputError):
            read_profile(tmp_path / "none.csv")

    def test_decreasing_x(self, tmp_path):
        """Should require strictly increasing x."""
        path = write_profile(tmp_path / "p.csv", [0.0, -1.0, -2.0], [1.0, 1.0, 1.0])
        with pytest.raises(ConfigError, match="increasing"):
            read_profile(path)


class TestRunPipeline:
    """Test the subcommand runs."""

    def test_evolve_summary(self, tiny_spec):
        """Should pass the monotonicity checks on a short decoupled run."""
        result = RunPipeline(tiny_spec).run_evolve()
        summary = result.summary
        assert summary["command"] == "evolve"
        assert summary["steps"] == 3
        assert result.passed
        assert summary["lyapunov"]["strictly_decreasing"]
        assert summary["equilibrium"]["mass"] == pytest.approx(1.0)
        assert summary["fitted_rates"]["mean"] == pytest.approx(np.log(1.05) / 0.05, rel=1e-6)
        assert result.certificate is None
        assert summary["run_spec"]["tau"] == 0.05

    def test_compare_summary(self, tiny_spec):
        """Should report both dissipations near mean^2 for a shifted unit Gaussian."""
        result = RunPipeline(tiny_spec).run_compare()
        summary = result.summary
        assert summary["comparison"]["sup_w2_u"] < 0.05
        shift_sq = np.exp(-0.3)
        assert summary["dissipation"]["fisher_fd_final"] == pytest.approx(shift_sq, rel=0.05)
        assert summary["dissipation"]["fisher_jko_final"] == pytest.approx(
            summary["dissipation"]["fisher_fd_final"], rel=0.1
        )

    def test_decay_rate_requires_long_run(self, tiny_spec):
        """Should refuse a certificate when L barely decays."""
        with pytest.raises(InsufficientDataError):
            RunPipeline(tiny_spec).run_evolve(require_certificate=True)

    def test_equilibrium_needs_kappa(self, tiny_run_config):
        """Should raise for kappa = 0."""
        spec = validate_config({**tiny_run_config, "kappa": 0.0})
        with pytest.raises(InvalidArgumentError, match="kappa > 0"):
            RunPipeline(spec).run_equilibrium()

    def test_evolve_without_equilibrium(self, tiny_run_config):
        """Should still run the scheme when kappa = 0."""
        spec = validate_config({**tiny_run_config, "kappa": 0.0})
        result = RunPipeline(spec).run_evolve()
        assert result.equilibrium is None
        assert "lyapunov" not in result.summary
        assert result.passed

    def test_check_invariants(self, tiny_spec):
        """Should pass the property suite near the decoupled equilibrium."""
        report, summary = RunPipeline(tiny_spec).run_check_invariants()
        assert report.n_samples == 3
        assert summary["passed"] is report.passed
        assert set(summary["invariants"]) == {
            "decomposition",
            "sandwich",
            "csiszar_kullback",
            "round_trip_mass",
        }
        assert report.passed

    @pytest.mark.slow
    def test_sweep(self, tiny_run_config, tmp_path):
        """Should run one isolated point per chi and write each into its own directory."""
        spec = validate_config(
            {
                **tiny_run_config,
                "tau": 0.1,
                "T": 1.5,
                "output": {"stride": 5, "plots": False},
                "sweep": {"chi": [0.0, 0.05], "threads": 2},
            }
        )
        summary = RunPipeline(spec).run_sweep(tmp_path)
        points = summary["points"]
        assert [row["chi"] for row in points] == [0.0, 0.05]
        assert all(row["status"] == "ok" for row in points)
        assert (tmp_path / "chi_0" / "summary.json").is_file()
        assert (tmp_path / "chi_0.05" / "timeseries.csv").is_file()

    def test_sweep_records_failures(self, tiny_spec, tmp_path):
        """Should mark a point failed instead of aborting the sweep."""
        spec = tiny_spec.model_copy(
            update={"sweep": tiny_spec.sweep.model_copy(update={"chi": [0.0]})}
        )
        summary = RunPipeline(spec).run_sweep(tmp_path, threads=1)
        assert summary["points"][0]["status"] == "failed"
        assert "error" in summary["points"][0]


class TestSweepWorkers:
    """Test the sweep worker count."""

    def test_explicit_threads_win(self):
        """Should prefer --threads over sweep.threads."""
        assert sweep_workers(5, SweepSettings(threads=2), threads=3) == 3

    def test_config_threads(self):
        """Should fall back to sweep.threads."""
        assert sweep_workers(5, SweepSettings(threads=2)) == 2

    def test_cap_applies_to_explicit_threads(self):
        """Should cap --threads by max_threads instead of replacing it."""
        settings = SweepSettings(threads=6, max_threads=2)
        assert sweep_workers(5, settings, threads=8) == 2
        assert sweep_workers(5, SweepSettings(max_threads=4), threads=1) == 1

    def test_default_bounded_by_points(self):
        """Should never use more workers than points by default."""
        assert sweep_workers(1, SweepSettings()) == 1
