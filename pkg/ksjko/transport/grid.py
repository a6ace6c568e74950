"""Uniform grids on the truncated domain [-R, R] and fields living on them."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from ksjko.core.errors import GridMismatchError, InvalidArgumentError

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class Grid:
    """Uniform grid with ``n_cells + 1`` nodes spanning [-R, R].

    Attributes:
        half_width: Domain half-width R
        n_cells: Number of cells
    """

    half_width: float
    n_cells: int

    def __post_init__(self) -> None:
        if not (self.half_width > 0.0 and np.isfinite(self.half_width)):
            raise InvalidArgumentError(f"half_width must be positive, got {self.half_width}")
        if self.n_cells < 2:
            raise InvalidArgumentError(f"n_cells must be at least 2, got {self.n_cells}")

    @property
    def h(self) -> float:
        """Grid spacing."""
        return 2.0 * self.half_width / self.n_cells

    @property
    def n_nodes(self) -> int:
        return self.n_cells + 1

    @cached_property
    def nodes(self) -> FloatArray:
        """Node coordinates ``x_i = -R + i h``."""
        x = -self.half_width + self.h * np.arange(self.n_nodes, dtype=np.float64)
        x[-1] = self.half_width
        x.setflags(write=False)
        return x

    @cached_property
    def weights(self) -> FloatArray:
        """Trapezoid quadrature weights (h inside, h/2 at the two ends)."""
        w = np.full(self.n_nodes, self.h)
        w[0] = w[-1] = 0.5 * self.h
        w.setflags(write=False)
        return w

    def integrate(self, values: FloatArray) -> float:
        """Trapezoid integral of nodal values."""
        return float(np.dot(self.weights, values))

    def contains(self, x: FloatArray) -> bool:
        """Whether every point lies inside [-R, R]."""
        return bool(np.all(x >= -self.half_width) and np.all(x <= self.half_width))


def build_uniform_grid(R: float, n_cells: int) -> Grid:
    """Build the uniform grid over [-R, R].

    Args:
        R: Domain half-width
        n_cells: Number of cells (at least 2)

    Returns:
        Grid with ``n_cells + 1`` nodes

    Raises:
        InvalidArgumentError: If R <= 0 or n_cells < 2
    """
    return Grid(half_width=float(R), n_cells=int(n_cells))


@dataclass(frozen=True, eq=False)
class EulerianField:
    """Real values at the nodes of a grid.

    Holds the chemoattractant v, or a density resampled from quantiles.
    """

    grid: Grid
    values: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (self.grid.n_nodes,):
            raise InvalidArgumentError(
                f"field has {values.shape} values, grid has {self.grid.n_nodes} nodes"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("field values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[[FloatArray], FloatArray]) -> "EulerianField":
        """Sample a vectorized callable at the grid nodes."""
        return cls(grid, np.asarray(fn(grid.nodes), dtype=np.float64))

    @classmethod
    def zeros(cls, grid: Grid) -> "EulerianField":
        return cls(grid, np.zeros(grid.n_nodes))

    def integral(self) -> float:
        """Trapezoid integral over the grid."""
        return self.grid.integrate(self.values)

    def l2_norm(self) -> float:
        """Trapezoid L2 norm."""
        return float(np.sqrt(self.grid.integrate(self.values**2)))

    def gradient_norm_sq(self) -> float:
        """Squared L2 norm of the cell (forward) differences."""
        return float(np.sum(np.diff(self.values) ** 2) / self.grid.h)

    def h1_norm(self) -> float:
        """Discrete H1 norm: sqrt of the L2 part plus the forward-difference part."""
        return float(np.sqrt(self.l2_norm() ** 2 + self.gradient_norm_sq()))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __sub__(self, other: "EulerianField") -> "EulerianField":
        require_same_grid(self.grid, other.grid)
        return EulerianField(self.grid, self.values - other.values)

    def __add__(self, other: "EulerianField") -> "EulerianField":
        require_same_grid(self.grid, other.grid)
        return EulerianField(self.grid, self.values + other.values)


def require_same_grid(a: Grid, b: Grid) -> None:
    """Raise GridMismatchError unless both grids are identical."""
    if a != b:
        raise GridMismatchError(
            f"grid mismatch: (R={a.half_width}, n={a.n_cells}) vs (R={b.half_width}, n={b.n_cells})"
        )
