"""Exponential decay-rate fits of positive time series."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ksjko.config.defaults import DEFAULT_FIT_LOWER_FRACTION, DEFAULT_FIT_UPPER_FRACTION
from ksjko.core.errors import InsufficientDataError, InvalidSeriesError

MIN_FIT_POINTS = 3


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of log(value) = intercept - rate * t.

    Attributes:
        rate: Fitted decay rate
        intercept: Fitted log-value at t = 0
        window: Time interval the fit used
        r_squared: Coefficient of determination (1 for flat data)
        residuals: Per-point residuals of the log fit
    """

    rate: float
    intercept: float
    window: tuple[float, float]
    r_squared: float
    residuals: tuple[float, ...]

    @property
    def n_points(self) -> int:
        return len(self.residuals)


def default_fit_window(
    times: Sequence[float],
    values: Sequence[float],
    upper_fraction: float = DEFAULT_FIT_UPPER_FRACTION,
    lower_fraction: float = DEFAULT_FIT_LOWER_FRACTION,
) -> tuple[float, float]:
    """Window from the first time value < upper * v0 to the first value <= lower * v0.

    The early transient and the noise floor are left out. Falls back to the
    start of the series when it never halves and to its end when it never
    reaches the floor.

    Raises:
        InvalidSeriesError: If the first value is not positive
        InsufficientDataError: If the series is empty
    """
    t = np.asarray(times, dtype=np.float64)
    y = np.asarray(values, dtype=np.float64)
    if t.size == 0:
        raise InsufficientDataError("empty series")
    if not y[0] > 0.0:
        raise InvalidSeriesError(f"series must start positive, got {y[0]:g}")

    below = np.flatnonzero(y < upper_fraction * y[0])
    start = int(below[0]) if below.size else 0

    floor = np.flatnonzero(y[start:] <= lower_fraction * y[0])
    if floor.size:
        end = start + int(floor[0])
        if not y[end] > 0.0:
            end -= 1
    else:
        end = t.size - 1
    end = max(end, start)
    return float(t[start]), float(t[end])


def fit_decay_rate(
    series: Sequence[tuple[float, float]], window: Optional[tuple[float, float]] = None
) -> DecayFit:
    """Fit an exponential rate to (time, value) pairs inside a window.

    Args:
        series: (time, value) pairs
        window: Inclusive time interval; defaults to ``default_fit_window``

    Returns:
        DecayFit with the negated least-squares slope of log(value)

    Raises:
        InvalidSeriesError: If a value inside the window is not positive
        InsufficientDataError: If fewer than three points fall inside the window
    """
    if len(series) == 0:
        raise InsufficientDataError("empty series")
    data = np.asarray(series, dtype=np.float64).reshape(-1, 2)
    t, y = data[:, 0], data[:, 1]
    if window is None:
        window = default_fit_window(t, y)
    t_lo, t_hi = window
    slack = 1e-12 * max(abs(t_lo), abs(t_hi), 1.0)
    inside = (t >= t_lo - slack) & (t <= t_hi + slack)

    t, y = t[inside], y[inside]
    if t.size < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"{t.size} points in window [{t_lo:g}, {t_hi:g}], need {MIN_FIT_POINTS}"
        )
    if np.any(y <= 0.0):
        raise InvalidSeriesError("series has nonpositive values inside the fit window")

    log_y = np.log(y)
    design = np.column_stack([np.ones_like(t), t])
    (intercept, slope), *_ = np.linalg.lstsq(design, log_y, rcond=None)
    residuals = log_y - (intercept + slope * t)
    ss_tot = float(np.sum((log_y - log_y.mean()) ** 2))
    ss_res = float(np.sum(residuals**2))
    # spread at rounding level counts as flat
    flat_tol = 64.0 * np.finfo(np.float64).eps * log_y.size * float(np.max(log_y**2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > flat_tol else 1.0

    return DecayFit(
        rate=float(-slope),
        intercept=float(intercept),
        window=(float(t[0]), float(t[-1])),
        r_squared=r_squared,
        residuals=tuple(float(r) for r in residuals),
    )
