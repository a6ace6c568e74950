"""Unit tests for exponential decay-rate fits."""

import numpy as np
import pytest

from ksjko.core.errors import InsufficientDataError, InvalidSeriesError
from ksjko.diagnostics.decay import default_fit_window, fit_decay_rate


def exponential_series(rate: float, t_end: float = 10.0, dt: float = 0.1) -> list[tuple]:
    times = np.arange(0.0, t_end + 0.5 * dt, dt)
    return list(zip(times.tolist(), np.exp(-rate * times).tolist()))


class TestFitDecayRate:
    """Test the log-linear least-squares fit."""

    def test_exact_exponential(self):
        """Should recover the rate of a pure exponential."""
        fit = fit_decay_rate(exponential_series(2.0), window=(0.0, 5.0))
        assert fit.rate == pytest.approx(2.0, abs=1e-10)
        assert fit.intercept == pytest.approx(0.0, abs=1e-10)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.n_points == 51

    def test_flat_series(self):
        """Should report rate 0 and r^2 = 1 for constant data."""
        series = [(float(t), 3.0) for t in range(10)]
        fit = fit_decay_rate(series, window=(0.0, 9.0))
        assert fit.rate == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == 1.0

    @pytest.mark.parametrize("level", [1.0, 0.7, 1e-9])
    def test_flat_series_any_level(self, level):
        """Should treat rounding-level spread in a constant series as flat."""
        series = [(0.1 * t, level) for t in range(25)]
        fit = fit_decay_rate(series, window=(0.0, 2.4))
        assert fit.rate == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_window_restricts_points(self):
        """Should only use points inside the window."""
        fit = fit_decay_rate(exponential_series(1.0), window=(2.0, 3.0))
        assert fit.window == pytest.approx((2.0, 3.0))
        assert fit.n_points == 11

    def test_too_few_points_raise(self):
        """Should require three points in the window."""
        with pytest.raises(InsufficientDataError):
            fit_decay_rate([(0.0, 1.0), (1.0, 0.5)])

    def test_empty_series_raises(self):
        """Should reject an empty series."""
        with pytest.raises(InsufficientDataError):
            fit_decay_rate([])

    def test_nonpositive_values_raise(self):
        """Should refuse to take the log of zero."""
        series = [(0.0, 1.0), (1.0, 0.5), (2.0, 0.0), (3.0, 0.1)]
        with pytest.raises(InvalidSeriesError):
            fit_decay_rate(series, window=(0.0, 3.0))


class TestDefaultFitWindow:
    """Test the half-to-floor window."""

    def test_skips_transient(self):
        """Should start at the first value below half and run to the end."""
        times, values = zip(*exponential_series(1.0))
        assert default_fit_window(times, values) == pytest.approx((0.7, 10.0))

    def test_stops_at_floor(self):
        """Should end at the first value at or below the floor."""
        times, values = zip(*exponential_series(1.0, t_end=30.0))
        start, end = default_fit_window(times, values)
        assert start == pytest.approx(0.7)
        assert end == pytest.approx(18.5)

    def test_nonpositive_start_raises(self):
        """Should require a positive first value."""
        with pytest.raises(InvalidSeriesError):
            default_fit_window([0.0, 1.0], [0.0, 1.0])
