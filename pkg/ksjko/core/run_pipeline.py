"""Run pipeline orchestrating solver, oracle and diagnostics for one RunSpec.

Turns a validated RunSpec into model parameters and initial data, runs the
requested computation and assembles the JSON-ready summary of each
subcommand.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ksjko import __version__
from ksjko.config.models import (
    FileDensity,
    FileField,
    GaussianBump,
    GaussianDensity,
    RunSpec,
    SweepSettings,
)
from ksjko.core.errors import (
    ConfigError,
    InsufficientDataError,
    InvalidArgumentError,
    InvalidSeriesError,
    KsJkoError,
    OutputError,
)
from ksjko.diagnostics.certificate import ConvergenceCertificate, convergence_certificate
from ksjko.diagnostics.comparison import ComparisonReport, compare_trajectories
from ksjko.diagnostics.decay import fit_decay_rate
from ksjko.diagnostics.invariants import InvariantReport, run_invariant_suite
from ksjko.energetics.dissipation import fisher_dissipation_eulerian, fisher_dissipation_u
from ksjko.energetics.params import ModelParams, default_half_width
from ksjko.energetics.potential import (
    PotentialSpec,
    QuadraticPotential,
    TabulatedPotential,
    perturbed_potential,
)
from ksjko.equilibrium.picard import EquilibriumPair, solve_equilibrium
from ksjko.formatters.writer import write_outputs
from ksjko.reference.fd import FdConfig, FdTrajectory, fd_evolve
from ksjko.solver.config import InnerSolverConfig
from ksjko.solver.jko import evolve
from ksjko.solver.trajectory import JkoTrajectory
from ksjko.transport.grid import EulerianField, Grid, build_uniform_grid
from ksjko.transport.metrics import State
from ksjko.transport.quantiles import QuantileDensity, density_to_quantiles, quantiles_to_density
from ksjko.utils.logger import logger

CHECK_TOL = 1e-10
MEAN_FIT_FLOOR = 1e-6


@dataclass
class EvolveResult:
    """Trajectory of an evolve run with its equilibrium, certificate and summary."""

    trajectory: JkoTrajectory
    equilibrium: Optional[EquilibriumPair]
    certificate: Optional[ConvergenceCertificate]
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.summary.get("checks", {}).values())


@dataclass
class CompareResult:
    trajectory: JkoTrajectory
    oracle: FdTrajectory
    report: ComparisonReport
    summary: Dict[str, Any] = field(default_factory=dict)


def read_profile(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """Read a two-column CSV profile (header line, then x,value rows).

    Raises:
        OutputError: If the file is missing
        ConfigError: If the file is not a two-column numeric table with increasing x
    """
    if not path.is_file():
        raise OutputError(f"Profile file not found: {path}")
    try:
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise ConfigError(f"Invalid profile table {path}: {e}")
    if table.shape[1] < 2 or table.shape[0] < 2:
        raise ConfigError(f"Profile table {path} needs two columns and at least two rows")
    x, values = table[:, 0], table[:, 1]
    if np.any(np.diff(x) <= 0.0):
        raise ConfigError(f"Profile table {path} must have strictly increasing x")
    return x, values


def build_potential(spec: RunSpec, grid: Grid, base_dir: Path) -> PotentialSpec:
    """Quadratic potential or a table interpolated onto the grid."""
    if spec.potential == "quadratic":
        return QuadraticPotential(spec.lambda0)

    x, w = read_profile(base_dir / str(spec.potential_table))
    if x[0] > grid.nodes[0] or x[-1] < grid.nodes[-1]:
        raise ConfigError(
            f"potential table covers [{x[0]:g}, {x[-1]:g}], grid needs "
            f"[{grid.nodes[0]:g}, {grid.nodes[-1]:g}]"
        )
    values = np.interp(grid.nodes, x, w)
    slopes = np.gradient(values, grid.h)
    return TabulatedPotential(grid, values, slopes, np.gradient(slopes, grid.h))


def build_model_params(spec: RunSpec, base_dir: Optional[Path] = None) -> ModelParams:
    """Model parameters described by a RunSpec."""
    half_width = spec.R if spec.R is not None else default_half_width(spec.lambda0)
    grid = build_uniform_grid(half_width, spec.n_cells)
    potential = build_potential(spec, grid, base_dir or Path("."))
    return ModelParams(
        chi=spec.chi,
        kappa=spec.kappa,
        potential=potential,
        grid=grid,
        n_quantiles=spec.n_quantiles,
    )


def build_solver_config(spec: RunSpec) -> InnerSolverConfig:
    return InnerSolverConfig(**spec.solver.model_dump())


def build_fd_config(spec: RunSpec) -> FdConfig:
    return FdConfig(
        dt=spec.fd.dt,
        scheme=spec.fd.scheme,  # type: ignore[arg-type]
        record_every=spec.fd.record_every,
    )


def _file_density(path: Path, grid: Grid) -> EulerianField:
    x, u = read_profile(path)
    values = np.interp(grid.nodes, x, u, left=0.0, right=0.0)
    mass = grid.integrate(values)
    if not mass > 0.0:
        raise ConfigError(f"initial density in {path} has no mass on the grid")
    if abs(mass - 1.0) > 1e-8:
        logger.warning(f"Initial density in {path} has mass {mass:.6g}; renormalizing")
    return EulerianField(grid, values / mass)


def build_initial_state(
    spec: RunSpec, p: ModelParams, base_dir: Optional[Path] = None
) -> tuple[State, EulerianField]:
    """Initial state in quantile form and the matching Eulerian density.

    Returns:
        Tuple of (state for the JKO solver, nodal density for the oracle)
    """
    base = base_dir or Path(".")
    grid = p.grid
    u0 = spec.u0
    if isinstance(u0, GaussianDensity):
        x0 = QuantileDensity.gaussian(u0.mean, u0.variance, p.n_quantiles)
        pdf = np.exp(-((grid.nodes - u0.mean) ** 2) / (2.0 * u0.variance))
        density = EulerianField(grid, pdf / grid.integrate(pdf))
    elif isinstance(u0, FileDensity):
        density = _file_density(base / u0.path, grid)
        x0 = density_to_quantiles(density, p.n_quantiles)
    else:
        x0 = QuantileDensity.uniform(u0.a, u0.b, p.n_quantiles)
        density = quantiles_to_density(x0, grid)

    v0 = spec.v0
    if isinstance(v0, GaussianBump):
        bump = v0.amplitude * np.exp(-((grid.nodes - v0.center) ** 2) / (2.0 * v0.width**2))
        field0 = EulerianField(grid, bump)
    elif isinstance(v0, FileField):
        x, v = read_profile(base / v0.path)
        field0 = EulerianField(grid, np.interp(grid.nodes, x, v))
    else:
        field0 = EulerianField.zeros(grid)

    if not grid.contains(x0.positions):
        raise ConfigError("initial density extends beyond [-R, R]; increase R")
    return State(x0, field0), density


def _fit_or_none(
    series: List[tuple[float, float]], window: tuple[float, float]
) -> Optional[float]:
    try:
        return fit_decay_rate(series, window).rate
    except (InvalidSeriesError, InsufficientDataError):
        return None


def _finite(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


class RunPipeline:
    """Orchestrates every subcommand for one RunSpec.

    Pipeline stages:
    1. Model - Build grid, potential and initial data from the RunSpec
    2. Equilibrium - Picard solve when kappa > 0 (cached)
    3. Run - JKO evolution and, for compare, the finite-difference oracle
    4. Diagnostics - Certificates, comparison and invariant reports
    5. Summary - JSON-ready dictionaries echoing the RunSpec
    """

    def __init__(self, spec: RunSpec, base_dir: Optional[Path] = None):
        """Initialize run pipeline.

        Args:
            spec: Validated run configuration
            base_dir: Directory that relative table and profile paths refer to
        """
        self.spec = spec
        self.base_dir = base_dir or Path(".")

    @cached_property
    def params(self) -> ModelParams:
        return build_model_params(self.spec, self.base_dir)

    @cached_property
    def solver_config(self) -> InnerSolverConfig:
        return build_solver_config(self.spec)

    @cached_property
    def equilibrium(self) -> Optional[EquilibriumPair]:
        """Equilibrium of the model, None when kappa = 0."""
        if self.params.kappa == 0.0:
            logger.info("kappa = 0: skipping the equilibrium and Lyapunov diagnostics")
            return None
        cfg = self.spec.equilibrium
        return solve_equilibrium(
            self.params,
            tol=cfg.tol,
            max_iters=cfg.max_iters,
            damping=cfg.damping,
            cfg=self.solver_config,
        )

    def _base_summary(self, command: str) -> Dict[str, Any]:
        return {
            "command": command,
            "metadata": {"tool": "ksjko", "version": __version__},
            "run_spec": self.spec.model_dump(mode="json"),
        }

    def equilibrium_summary(self, eq: EquilibriumPair) -> Dict[str, Any]:
        return {
            "iterations": eq.iterations,
            "residual": eq.residual,
            "r_u": eq.r_u,
            "r_v": eq.r_v,
            "U_eps": eq.U_eps,
            "mass": eq.u_inf.integral(),
            "v_min": float(np.min(eq.v_inf.values)),
            "lambda_eps": self._lambda_eps(eq),
        }

    def _lambda_eps(self, eq: EquilibriumPair) -> float:
        return perturbed_potential(self.params, eq).lambda_min(self.params.grid)

    def run_equilibrium(self) -> tuple[EquilibriumPair, Dict[str, Any]]:
        """Solve for the stationary pair.

        Raises:
            InvalidArgumentError: If kappa = 0
            NoConvergenceError: If Picard does not converge
        """
        eq = self.equilibrium
        if eq is None:
            raise InvalidArgumentError("equilibrium requires kappa > 0")
        summary = self._base_summary("equilibrium")
        summary["equilibrium"] = self.equilibrium_summary(eq)
        summary["residual_history"] = list(eq.residual_history)
        return eq, summary

    def run_evolve(self, require_certificate: bool = False) -> EvolveResult:
        """Run the JKO scheme and assemble its diagnostics.

        Args:
            require_certificate: Raise instead of skipping when the decay fit is impossible

        Raises:
            TrajectoryAbortedError: If a step fails
            InsufficientDataError: If require_certificate and the run is too short
        """
        p = self.params
        s0, _ = build_initial_state(self.spec, p, self.base_dir)
        eq = self.equilibrium
        traj = evolve(s0, self.spec.tau, self.spec.T, p, self.solver_config, equilibrium=eq)

        certificate = None
        if eq is not None:
            try:
                certificate = convergence_certificate(traj, eq, p)
            except InsufficientDataError as e:
                if require_certificate:
                    raise
                logger.info(f"No convergence certificate: {e}")
        elif require_certificate:
            raise InsufficientDataError("decay-rate needs kappa > 0 for the Lyapunov series")

        result = EvolveResult(trajectory=traj, equilibrium=eq, certificate=certificate)
        result.summary = self._evolve_summary(result)
        return result

    def _evolve_summary(self, result: EvolveResult) -> Dict[str, Any]:
        traj = result.trajectory
        tol = self.solver_config.energy_decrease_tol
        H = [e.H for e in traj.energies]
        dists = [r.step_dist for r in traj.step_reports]

        increases = [H[n] - H[n - 1] for n in range(1, len(H))]
        inequality = [
            H[n] + dists[n - 1] ** 2 / (2.0 * traj.tau) - H[n - 1] for n in range(1, len(H))
        ]
        slack = tol + CHECK_TOL * (1.0 + max(abs(h) for h in H))
        budget = sum(d**2 for d in dists) / (2.0 * traj.tau)
        mean_series = [(t, s.u.mean()) for t, s in zip(traj.times, traj.states)]
        spread = math.sqrt(traj.states[0].u.variance())

        summary = self._base_summary("evolve")
        summary["steps"] = traj.n_steps
        summary["final_time"] = traj.final_time
        summary["energy"] = {
            "H_initial": H[0],
            "H_final": H[-1],
            "max_entropy_increase": max(increases, default=0.0),
            "max_energy_inequality_violation": max(inequality, default=0.0),
        }
        summary["holder"] = {
            "max_dist_over_sqrt_tau": max(dists, default=0.0) / math.sqrt(traj.tau),
            "square_distance_budget": budget,
            "budget_bound": H[0] - min(H) + traj.n_steps * tol,
        }
        summary["v_min"] = min(float(np.min(s.v.values)) for s in traj.states)
        summary["solver"] = {
            "total_alternations": sum(r.alternations for r in traj.step_reports),
            "max_alternations": max((r.alternations for r in traj.step_reports), default=0),
            "newton_iterations": sum(r.newton_iterations for r in traj.step_reports),
            "steepest_steps": sum(r.steepest_steps for r in traj.step_reports),
            "max_grad_norm": max((r.grad_norm for r in traj.step_reports), default=0.0),
        }
        summary["fitted_rates"] = {
            "mean": (
                _fit_or_none(mean_series, (0.0, traj.final_time))
                if abs(mean_series[0][1]) > MEAN_FIT_FLOOR * spread
                else None
            ),
        }
        summary["checks"] = {
            "entropy_monotone": max(increases, default=0.0) <= slack,
            "energy_inequality": max(inequality, default=0.0) <= slack,
            "square_distance_budget": budget
            <= summary["holder"]["budget_bound"] + traj.n_steps * slack,
        }

        if result.equilibrium is not None:
            summary["equilibrium"] = self.equilibrium_summary(result.equilibrium)
            L = [r.L for r in traj.lyapunov]
            summary["lyapunov"] = {
                "L_initial": L[0],
                "L_final": L[-1],
                "strictly_decreasing": all(b < a + tol for a, b in zip(L, L[1:])),
            }
        cert = result.certificate
        if cert is not None:
            summary["fitted_rates"]["L"] = cert.fit.rate
            summary["fitted_rates"]["L_half"] = cert.half_rate
            summary["certificate"] = certificate_summary(cert)
        return summary

    def run_compare(self) -> CompareResult:
        """Run the JKO scheme and the finite-difference oracle side by side."""
        p = self.params
        s0, density0 = build_initial_state(self.spec, p, self.base_dir)
        eq = self.equilibrium
        traj = evolve(s0, self.spec.tau, self.spec.T, p, self.solver_config, equilibrium=eq)
        oracle = fd_evolve(density0, s0.v, build_fd_config(self.spec), self.spec.T, p)
        report = compare_trajectories(traj, oracle, p, eq)

        summary = self._base_summary("compare")
        summary["comparison"] = report.summary()
        summary["steps"] = {"jko": traj.n_steps, "fd_records": len(oracle.times)}
        if eq is not None:
            w_eps = perturbed_potential(p, eq)
            summary["dissipation"] = {
                "fisher_jko_final": fisher_dissipation_u(traj.states[-1].u, w_eps, p.grid),
                "fisher_fd_final": fisher_dissipation_eulerian(oracle.u[-1], w_eps).total,
            }
        return CompareResult(trajectory=traj, oracle=oracle, report=report, summary=summary)

    def run_check_invariants(self) -> tuple[InvariantReport, Dict[str, Any]]:
        """Randomized property suite around the equilibrium.

        Raises:
            InvalidArgumentError: If kappa = 0
        """
        eq, _ = self.run_equilibrium()
        report = run_invariant_suite(
            eq, self.params, n_samples=self.spec.diagnostics.n_samples, seed=self.spec.seed
        )
        summary = self._base_summary("check-invariants")
        summary["invariants"] = {
            c.name: {"worst": c.worst, "threshold": c.threshold, "passed": c.passed}
            for c in report.checks
        }
        summary["passed"] = report.passed
        return report, summary

    def run_sweep(self, out_dir: Path, threads: Optional[int] = None) -> Dict[str, Any]:
        """Decay rates over the chi grid, one isolated run per point.

        Args:
            out_dir: Parent directory; each point writes into ``chi_<value>/``
            threads: Worker count (defaults to sweep.threads, then the CPU count)

        Returns:
            Summary with one row per chi value
        """
        chis = self.spec.sweep.chi
        workers = sweep_workers(len(chis), self.spec.sweep, threads)
        logger.info(f"Sweeping {len(chis)} chi values on {workers} worker(s)")

        def run_point(chi: float) -> Dict[str, Any]:
            point = RunPipeline(self.spec.model_copy(update={"chi": chi}), self.base_dir)
            row: Dict[str, Any] = {"chi": chi}
            try:
                result = point.run_evolve(require_certificate=True)
                write_outputs(
                    result,
                    out_dir / f"chi_{chi:g}",
                    stride=self.spec.output.stride,
                    plots=self.spec.output.plots,
                )
                cert = result.certificate
                if cert is None:
                    raise InsufficientDataError("no certificate for this point")
                row.update(
                    status="ok",
                    rate_L=cert.fit.rate,
                    half_rate=cert.half_rate,
                    reference_rate=cert.reference_rate,
                    envelope_satisfied=cert.envelope_satisfied,
                )
            except KsJkoError as e:
                logger.warning(f"Sweep point chi={chi:g} failed: {e}")
                row.update(status="failed", error=str(e))
            return row

        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_point, chis))

        summary = self._base_summary("sweep")
        summary["points"] = rows
        return summary


def sweep_workers(n_points: int, sweep: SweepSettings, threads: Optional[int] = None) -> int:
    """Worker count: --threads, then sweep.threads, then the CPU count, capped by max_threads."""
    workers = threads or sweep.threads or min(n_points, os.cpu_count() or 1)
    if sweep.max_threads is not None:
        workers = min(workers, sweep.max_threads)
    return workers


def certificate_summary(cert: ConvergenceCertificate) -> Dict[str, Any]:
    return {
        "rate_L": cert.fit.rate,
        "half_rate": cert.half_rate,
        "reference_rate": cert.reference_rate,
        "rate_ratio": cert.rate_ratio,
        "window": list(cert.fit.window),
        "r_squared": cert.fit.r_squared,
        "prefactor": _finite(cert.prefactor),
        "transient_prefactor": _finite(cert.transient_prefactor),
        "envelope_drift": _finite(cert.envelope_drift),
        "envelope_satisfied": cert.envelope_satisfied,
        "domination_ratio": _finite(cert.domination_ratio),
        "implied_m2": cert.implied_m2,
        "median_step_rate": _finite(cert.median_step_rate),
    }
