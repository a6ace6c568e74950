"""CSV formatters for time series, profiles and comparison reports."""

import csv
import io
import math
from typing import TYPE_CHECKING, Any, Sequence

import numpy as np

from ksjko.diagnostics.comparison import ComparisonReport
from ksjko.formatters.base import BaseFormatter
from ksjko.transport.metrics import second_moment, wasserstein2
from ksjko.transport.quantiles import quantiles_to_density

if TYPE_CHECKING:
    from ksjko.core.run_pipeline import EvolveResult

TIMESERIES_COLUMNS = [
    "t",
    "H",
    "L",
    "L_u",
    "L_v",
    "L_star",
    "W2_to_eq",
    "v_L2_to_eq",
    "v_H1_to_eq",
    "step_dist",
    "mass",
    "m2",
]

COMPARISON_COLUMNS = ["t", "W2_u", "L1_u", "L2_v", "H1_v"]


class _CsvFormatter(BaseFormatter):
    def _table(self, header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([self._number(v) for v in row])
        return buffer.getvalue()


class TimeseriesFormatter(_CsvFormatter):
    """One row per iterate of a JKO trajectory.

    Lyapunov and distance-to-equilibrium columns are nan when the run has no
    equilibrium (kappa = 0).
    """

    def format(self, data: "EvolveResult") -> str:
        traj = data.trajectory
        eq = data.equilibrium
        grid = traj.states[0].v.grid
        rows = []
        for n, (t, state, energy) in enumerate(zip(traj.times, traj.states, traj.energies)):
            step = traj.step_reports[n - 1].step_dist if n > 0 else 0.0
            mass = quantiles_to_density(state.u, grid).integral()
            if eq is not None and n < len(traj.lyapunov):
                lyap = traj.lyapunov[n]
                gap = state.v - eq.v_inf
                eq_cols = [
                    lyap.L,
                    lyap.L_u,
                    lyap.L_v,
                    lyap.L_star,
                    wasserstein2(state.u, eq.x_inf),
                    gap.l2_norm(),
                    gap.h1_norm(),
                ]
            else:
                eq_cols = [math.nan] * 7
            rows.append([t, energy.H, *eq_cols, step, mass, second_moment(state.u)])
        return self._table(TIMESERIES_COLUMNS, rows)


class ProfileFormatter(_CsvFormatter):
    """Two-column nodal profile, header ``x,<name>``."""

    def __init__(self, name: str = "u"):
        self.name = name

    def format(self, data: Any) -> str:
        x, values = data
        return self._table(["x", self.name], np.column_stack([x, values]).tolist())


class ComparisonFormatter(_CsvFormatter):
    """Per-time gaps between the JKO run and the oracle."""

    def format(self, data: ComparisonReport) -> str:
        rows = zip(data.times, data.w2_u, data.l1_u, data.l2_v, data.h1_v)
        return self._table(COMPARISON_COLUMNS, [list(r) for r in rows])
