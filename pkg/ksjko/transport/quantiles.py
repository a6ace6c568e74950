"""Quantile (inverse CDF) representation of probability densities.

A density u on the line is stored as the positions X_j carrying the
cumulative mass m_j = (j - 1/2)/N. Mass is one by construction, and every
function here that returns quantiles keeps them strictly increasing.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.stats import norm

from ksjko.core.errors import (
    DomainOverflowError,
    InvalidArgumentError,
    InvalidDensityError,
    NormalizationError,
)
from ksjko.transport.grid import EulerianField, Grid
from ksjko.utils.logger import logger

FloatArray = NDArray[np.float64]

NEGATIVE_DENSITY_TOL = 1e-12
MASS_TOL = 1e-8


def mass_points(n_quantiles: int) -> FloatArray:
    """Mass points ``m_j = (j - 1/2) / N`` for j = 1..N."""
    return (np.arange(n_quantiles, dtype=np.float64) + 0.5) / n_quantiles


@dataclass(frozen=True, eq=False)
class QuantileDensity:
    """Strictly increasing quantile positions of a probability density.

    Attributes:
        positions: X_j at the mass points m_j
    """

    positions: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        x = np.array(self.positions, dtype=np.float64)
        if x.ndim != 1 or x.size < 1:
            raise InvalidArgumentError("quantile positions must be a nonempty 1D sequence")
        if not np.all(np.isfinite(x)):
            raise InvalidDensityError("quantile positions must be finite")
        if x.size > 1 and not np.all(np.diff(x) > 0.0):
            raise InvalidDensityError("quantile positions must be strictly increasing")
        x.setflags(write=False)
        object.__setattr__(self, "positions", x)

    @property
    def n_quantiles(self) -> int:
        return int(self.positions.size)

    @property
    def mass_points(self) -> FloatArray:
        return mass_points(self.n_quantiles)

    @property
    def widths(self) -> FloatArray:
        """Inter-quantile distances X_{j+1} - X_j."""
        return np.diff(self.positions)

    def mean(self) -> float:
        return float(np.mean(self.positions))

    def variance(self) -> float:
        return float(np.mean((self.positions - self.mean()) ** 2))

    def shifted(self, a: float) -> "QuantileDensity":
        """Translate the density by a."""
        return QuantileDensity(self.positions + a)

    @classmethod
    def gaussian(cls, mean: float, variance: float, n_quantiles: int) -> "QuantileDensity":
        """Exact quantiles of N(mean, variance) at the mass points."""
        if not variance > 0.0:
            raise InvalidArgumentError(f"variance must be positive, got {variance}")
        return cls(norm.ppf(mass_points(n_quantiles), loc=mean, scale=np.sqrt(variance)))

    @classmethod
    def uniform(cls, a: float, b: float, n_quantiles: int) -> "QuantileDensity":
        """Exact quantiles of the uniform density on [a, b]."""
        if not b > a:
            raise InvalidArgumentError(f"uniform support needs a < b, got [{a}, {b}]")
        return cls(a + (b - a) * mass_points(n_quantiles))


def density_to_quantiles(u: EulerianField, n_quantiles: int) -> QuantileDensity:
    """Invert the piecewise-linear CDF of a nodal density.

    The CDF is the cumulative trapezoid integral of u, linear inside each cell.

    Args:
        u: Nonnegative nodal density with unit trapezoid mass
        n_quantiles: Number of quantiles N

    Returns:
        QuantileDensity with X_j solving CDF(X_j) = m_j

    Raises:
        InvalidDensityError: If u is negative beyond rounding
        NormalizationError: If the mass of u is not one
    """
    if n_quantiles < 1:
        raise InvalidArgumentError(f"n_quantiles must be positive, got {n_quantiles}")

    values = u.values
    if np.min(values) < -NEGATIVE_DENSITY_TOL:
        raise InvalidDensityError(f"density is negative (min {np.min(values):.3e})")
    mass = u.integral()
    if abs(mass - 1.0) > MASS_TOL:
        raise NormalizationError(f"density has mass {mass:.12g}, expected 1")

    grid = u.grid
    values = np.clip(values, 0.0, None)
    cell_mass = 0.5 * grid.h * (values[1:] + values[:-1])
    cdf = np.concatenate(([0.0], np.cumsum(cell_mass)))
    cdf /= cdf[-1]

    m = mass_points(n_quantiles)
    # cell k holds CDF values in (cdf[k-1], cdf[k]]
    k = np.searchsorted(cdf, m, side="left")
    k = np.clip(k, 1, grid.n_cells)
    lo = cdf[k - 1]
    hi = cdf[k]
    x = grid.nodes[k - 1] + grid.h * (m - lo) / (hi - lo)
    return QuantileDensity(x)


def _tail(c_end: float, width: float, outward_slope: float) -> tuple[float, float]:
    """Length and end value of a linear tail carrying mass ``c_end * width``.

    The tail starts at the outermost cell midpoint with value ``c_end`` and
    keeps decaying at the rate of the neighbouring cells, never growing.
    """
    q = min(0.0, outward_slope) / c_end
    ratio = float(np.sqrt(max(0.0, 1.0 + 2.0 * q * width)))
    return 2.0 * width / (1.0 + ratio), c_end * ratio


def quantiles_to_density(X: QuantileDensity, grid: Grid) -> EulerianField:
    """Reconstruct nodal density values from quantile positions.

    Cell densities 1/(N (X_{j+1} - X_j)) sit at the cell midpoints and are
    interpolated linearly. Beyond the outermost midpoints, linear tails carry
    the exact outer mass 1/N. The result is renormalized to unit trapezoid mass.

    Args:
        X: Quantile positions (at least two)
        grid: Target grid

    Returns:
        Nonnegative nodal density

    Raises:
        DomainOverflowError: If a quantile lies outside [-R, R]
    """
    values = _reconstruct(X, grid)
    mass = grid.integrate(values)
    if not mass > 0.0:
        raise InvalidDensityError("density support falls between grid nodes; refine the grid")
    if abs(mass - 1.0) > 1e-3:
        logger.debug(f"Reconstructed density mass {mass:.6g} renormalized to 1")
    return EulerianField(grid, values / mass)


def reconstruction_mass(X: QuantileDensity, grid: Grid) -> float:
    """Trapezoid mass of the reconstruction before it is renormalized.

    Raises:
        DomainOverflowError: If a quantile lies outside [-R, R]
    """
    return grid.integrate(_reconstruct(X, grid))


def _reconstruct(X: QuantileDensity, grid: Grid) -> FloatArray:
    x = X.positions
    if x.size < 2:
        raise InvalidArgumentError("density reconstruction needs at least two quantiles")
    if x[0] < -grid.half_width or x[-1] > grid.half_width:
        raise DomainOverflowError(
            f"quantiles span [{x[0]:.6g}, {x[-1]:.6g}] outside [-{grid.half_width}, "
            f"{grid.half_width}]; increase R"
        )

    n = X.n_quantiles
    widths = np.diff(x)
    mids = 0.5 * (x[:-1] + x[1:])
    dens = 1.0 / (n * widths)

    if mids.size > 1:
        right_slope = (dens[-1] - dens[-2]) / (mids[-1] - mids[-2])
        left_slope = (dens[0] - dens[1]) / (mids[1] - mids[0])
    else:
        right_slope = left_slope = 0.0
    left_len, left_val = _tail(float(dens[0]), float(widths[0]), left_slope)
    right_len, right_val = _tail(float(dens[-1]), float(widths[-1]), right_slope)

    xs = np.concatenate(([mids[0] - left_len], mids, [mids[-1] + right_len]))
    ys = np.concatenate(([left_val], dens, [right_val]))
    nodes = grid.nodes
    values = np.interp(nodes, xs, ys)
    values[(nodes < xs[0]) | (nodes > xs[-1])] = 0.0
    return values


def _cell_index(grid: Grid, points: FloatArray) -> NDArray[np.int64]:
    idx = np.floor((points + grid.half_width) / grid.h).astype(np.int64)
    return np.clip(idx, 0, grid.n_cells - 1)


def _require_inside(grid: Grid, points: FloatArray) -> None:
    if not grid.contains(points):
        raise DomainOverflowError(
            f"points span [{np.min(points):.6g}, {np.max(points):.6g}] outside "
            f"[-{grid.half_width}, {grid.half_width}]; increase R"
        )


def sample_field_at(v: EulerianField, X: QuantileDensity) -> tuple[FloatArray, FloatArray]:
    """Values and first derivatives of a nodal field at the quantile positions.

    Values are piecewise linear; derivatives are the cell slopes of the
    containing cell (constant per cell).

    Args:
        v: Nodal field
        X: Quantile positions

    Returns:
        Tuple of (values, derivatives) at every X_j

    Raises:
        DomainOverflowError: If a quantile lies outside the grid
    """
    return sample_nodal(v.grid, v.values, X.positions)


def sample_nodal(
    grid: Grid, values: FloatArray, points: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """Array-level worker behind sample_field_at."""
    _require_inside(grid, points)
    idx = _cell_index(grid, points)
    slopes = (values[idx + 1] - values[idx]) / grid.h
    return np.interp(points, grid.nodes, values), slopes


def deposit_quantiles(X: QuantileDensity, grid: Grid) -> FloatArray:
    """Distribute the quantile masses 1/N onto the nodes with hat functions.

    This is the adjoint of linear interpolation: for every nodal field v,
    ``sum(deposit * v) == mean(interp(v)(X))``.

    Returns:
        Nodal masses summing to one
    """
    points = X.positions
    _require_inside(grid, points)
    idx = _cell_index(grid, points)
    frac = (points - grid.nodes[idx]) / grid.h
    weight = 1.0 / X.n_quantiles
    masses = np.bincount(idx, weights=weight * (1.0 - frac), minlength=grid.n_nodes)
    masses += np.bincount(idx + 1, weights=weight * frac, minlength=grid.n_nodes)
    return masses
