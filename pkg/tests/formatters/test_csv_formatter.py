"""Tests for the CSV formatters."""

import numpy as np
import pytest

from ksjko.diagnostics.comparison import ComparisonReport
from ksjko.formatters.csv_formatter import (
    COMPARISON_COLUMNS,
    TIMESERIES_COLUMNS,
    ComparisonFormatter,
    ProfileFormatter,
    TimeseriesFormatter,
)


def parse(text: str) -> tuple[list[str], np.ndarray]:
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, rows


class TestTimeseriesFormatter:
    """Test the per-iterate table."""

    def test_columns_and_rows(self, evolve_result):
        """Should write one row per iterate under the documented header."""
        header, rows = parse(TimeseriesFormatter().format(evolve_result))
        assert header == TIMESERIES_COLUMNS
        assert rows.shape == (4, len(TIMESERIES_COLUMNS))
        assert rows[:, 0] == pytest.approx([0.0, 0.05, 0.1, 0.15])

    def test_mass_and_entropy(self, evolve_result):
        """Should report unit mass and nonincreasing entropy."""
        header, rows = parse(TimeseriesFormatter().format(evolve_result))
        assert rows[:, header.index("mass")] == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(rows[:, header.index("H")]) <= 1e-10)
        assert rows[0, header.index("step_dist")] == 0.0

    def test_without_equilibrium(self, evolve_result):
        """Should fill the Lyapunov columns with nan when there is no equilibrium."""
        evolve_result.equilibrium = None
        header, rows = parse(TimeseriesFormatter().format(evolve_result))
        assert np.all(np.isnan(rows[:, header.index("L")]))


class TestProfileFormatter:
    """Test nodal profiles."""

    def test_header_and_values(self):
        """Should name the value column and keep full precision."""
        text = ProfileFormatter("v").format((np.array([-1.0, 0.0]), np.array([0.25, 1 / 3])))
        assert text == "x,v\n-1,0.25\n0,0.33333333333333331\n"


class TestComparisonFormatter:
    """Test the comparison table."""

    def test_rows(self):
        """Should write one row per JKO time."""
        report = ComparisonReport(
            times=[0.0, 0.1], w2_u=[0.0, 0.01], l1_u=[0.0, 0.02], l2_v=[0.0, 0.0], h1_v=[0.0, 0.0]
        )
        header, rows = parse(ComparisonFormatter().format(report))
        assert header == COMPARISON_COLUMNS
        assert rows[1, 1] == 0.01
