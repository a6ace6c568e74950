"""Write run results to an output directory.

Layout of an evolve run::

    <dir>/timeseries.csv
    <dir>/summary.json
    <dir>/u_<n>.csv, <dir>/v_<n>.csv
    <dir>/plots/*.svg
"""

from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterable

import numpy as np

from ksjko.core.errors import OutputError
from ksjko.diagnostics.comparison import ComparisonReport
from ksjko.formatters.csv_formatter import (
    ComparisonFormatter,
    ProfileFormatter,
    TimeseriesFormatter,
)
from ksjko.formatters.json_formatter import JSONFormatter
from ksjko.formatters.svg import SvgLineChart
from ksjko.transport.grid import EulerianField
from ksjko.transport.quantiles import quantiles_to_density
from ksjko.utils.logger import logger

if TYPE_CHECKING:
    from ksjko.core.run_pipeline import EvolveResult

MAX_PLOTTED_SNAPSHOTS = 6


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OutputError(f"Failed to write {path}: {e}")
    return path


def snapshot_indices(n_steps: int, stride: int) -> list[int]:
    """Iterates written as snapshots: 0, every stride-th step, and the last one."""
    indices = list(range(0, n_steps + 1, stride))
    if indices[-1] != n_steps:
        indices.append(n_steps)
    return indices


def write_summary(summary: Dict[str, Any], out_dir: Path) -> Path:
    return _write(out_dir / "summary.json", JSONFormatter().format(summary))


def write_field(field: EulerianField, name: str, path: Path) -> Path:
    return _write(path, ProfileFormatter(name).format((field.grid.nodes, field.values)))


def write_comparison(report: ComparisonReport, out_dir: Path) -> Path:
    return _write(out_dir / "comparison.csv", ComparisonFormatter().format(report))


def write_outputs(
    result: "EvolveResult", out_dir: Path, stride: int = 10, plots: bool = True
) -> list[Path]:
    """Write time series, snapshots, summary and plots of an evolve run.

    Args:
        result: Evolve result with trajectory, equilibrium and summary
        out_dir: Target directory (created if missing)
        stride: Snapshot stride in steps
        plots: Whether to emit SVG plots

    Returns:
        Paths of the written files

    Raises:
        OutputError: If a file cannot be written
    """
    traj = result.trajectory
    grid = traj.states[0].v.grid
    written = [_write(out_dir / "timeseries.csv", TimeseriesFormatter().format(result))]

    indices = snapshot_indices(traj.n_steps, stride)
    densities = {}
    for n in indices:
        state = traj.states[n]
        densities[n] = quantiles_to_density(state.u, grid)
        written.append(write_field(densities[n], "u", out_dir / f"u_{n}.csv"))
        written.append(write_field(state.v, "v", out_dir / f"v_{n}.csv"))

    written.append(write_summary(result.summary, out_dir))
    if plots:
        written.extend(_write_plots(result, densities, out_dir / "plots"))

    logger.info(f"Wrote {len(written)} files to {out_dir}")
    return written


def _pick(indices: list[int]) -> Iterable[int]:
    if len(indices) <= MAX_PLOTTED_SNAPSHOTS:
        return indices
    picks = np.linspace(0, len(indices) - 1, MAX_PLOTTED_SNAPSHOTS).round().astype(int)
    return [indices[i] for i in sorted(set(picks.tolist()))]


def _write_plots(
    result: "EvolveResult", densities: Dict[int, EulerianField], plot_dir: Path
) -> list[Path]:
    traj = result.trajectory
    times = traj.times
    out = []

    energy = SvgLineChart("Entropy", "t", "H")
    energy.add_series(times, [e.H for e in traj.energies], "H")
    out.append(_write(plot_dir / "entropy.svg", energy.render()))

    if traj.lyapunov:
        lyap = SvgLineChart("Lyapunov functional", "t", "L", log_y=True)
        lyap.add_series(times, [r.L for r in traj.lyapunov], "L")
        lyap.add_series(times, [r.L_u for r in traj.lyapunov], "L_u")
        lyap.add_series(times, [r.L_v for r in traj.lyapunov], "L_v")
        out.append(_write(plot_dir / "lyapunov.svg", lyap.render()))

    grid = traj.states[0].v.grid
    u_chart = SvgLineChart("Density snapshots", "x", "u")
    v_chart = SvgLineChart("Chemoattractant snapshots", "x", "v")
    for n in _pick(sorted(densities)):
        label = f"t={times[n]:.3g}"
        u_chart.add_series(grid.nodes, densities[n].values, label)
        v_chart.add_series(grid.nodes, traj.states[n].v.values, label)
    out.append(_write(plot_dir / "u_snapshots.svg", u_chart.render()))
    out.append(_write(plot_dir / "v_snapshots.svg", v_chart.render()))
    return out
