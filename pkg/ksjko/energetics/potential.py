"""Confinement potentials and their chemotactic perturbations.

Every potential answers two questions: its value, slope and curvature at
arbitrary points (the quantile positions), and its nodal tables on a grid
(the Eulerian solvers and the convexity report).
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Callable

import numpy as np
from numpy.typing import NDArray

from ksjko.core.errors import InvalidArgumentError
from ksjko.numerics.tridiag import neumann_second_difference
from ksjko.transport.grid import EulerianField, Grid, require_same_grid
from ksjko.transport.quantiles import sample_nodal

if TYPE_CHECKING:
    from ksjko.energetics.params import ModelParams
    from ksjko.equilibrium.picard import EquilibriumPair

FloatArray = NDArray[np.float64]
PotentialSample = tuple[FloatArray, FloatArray, FloatArray]
ArrayFn = Callable[[FloatArray], FloatArray]


class PotentialSpec(ABC):
    """Abstract confinement potential W."""

    @abstractmethod
    def sample(self, x: FloatArray) -> PotentialSample:
        """Return (W, W_x, W_xx) at the points x."""
        pass

    @abstractmethod
    def tables(self, grid: Grid) -> PotentialSample:
        """Return nodal tables (W, W_x, W_xx) on the grid."""
        pass

    def lambda_min(self, grid: Grid) -> float:
        """Smallest nodal curvature, the empirical convexity modulus."""
        return float(np.min(self.tables(grid)[2]))

    def max_slope_jump(self) -> float:
        """Largest jump of the sampled slope across a grid node (zero if smooth)."""
        return 0.0


class QuadraticPotential(PotentialSpec):
    """W(x) = lambda0 x^2 / 2, evaluated in closed form."""

    def __init__(self, lambda0: float):
        if not lambda0 > 0.0:
            raise InvalidArgumentError(f"lambda0 must be positive, got {lambda0}")
        self.lambda0 = float(lambda0)

    def sample(self, x: FloatArray) -> PotentialSample:
        x = np.asarray(x, dtype=np.float64)
        return 0.5 * self.lambda0 * x**2, self.lambda0 * x, np.full_like(x, self.lambda0)

    def tables(self, grid: Grid) -> PotentialSample:
        return self.sample(grid.nodes)

    def __repr__(self) -> str:
        return f"QuadraticPotential(lambda0={self.lambda0})"


class TabulatedPotential(PotentialSpec):
    """Potential given by nodal tables of W, W_x and W_xx.

    Off-grid values interpolate W linearly, so the slope at a point is the
    slope of its cell; curvatures are interpolated from the W_xx table.
    """

    def __init__(
        self, grid: Grid, values: FloatArray, slopes: FloatArray, curvatures: FloatArray
    ):
        arrays = [np.asarray(a, dtype=np.float64) for a in (values, slopes, curvatures)]
        for name, arr in zip(("W", "W_x", "W_xx"), arrays):
            if arr.shape != (grid.n_nodes,):
                raise InvalidArgumentError(
                    f"table {name} has shape {arr.shape}, grid has {grid.n_nodes} nodes"
                )
            if not np.all(np.isfinite(arr)):
                raise InvalidArgumentError(f"table {name} must be finite")
        self.grid = grid
        self.values, self.slopes, self.curvatures = arrays

    @classmethod
    def from_functions(
        cls, grid: Grid, w: ArrayFn, w_x: ArrayFn, w_xx: ArrayFn
    ) -> "TabulatedPotential":
        """Tabulate closed-form W and its derivatives at the grid nodes."""
        x = grid.nodes
        return cls(grid, w(x), w_x(x), w_xx(x))

    def sample(self, x: FloatArray) -> PotentialSample:
        values, slopes = sample_nodal(self.grid, self.values, np.asarray(x, dtype=np.float64))
        curvatures = np.interp(x, self.grid.nodes, self.curvatures)
        return values, slopes, curvatures

    def tables(self, grid: Grid) -> PotentialSample:
        require_same_grid(self.grid, grid)
        return self.values, self.slopes, self.curvatures

    def max_slope_jump(self) -> float:
        return _slope_jump(self.values, self.grid.h)


class CoupledPotential(PotentialSpec):
    """Effective potential W - chi v seen by the cells in a chemical field v.

    With v the equilibrium field this is the perturbed potential W^eps.
    """

    def __init__(self, base: PotentialSpec, chi: float, field: EulerianField):
        self.base = base
        self.chi = float(chi)
        self.field = field
        grid = field.grid
        self._field_curvature = neumann_second_difference(field.values, grid.h)

    @property
    def grid(self) -> Grid:
        return self.field.grid

    def sample(self, x: FloatArray) -> PotentialSample:
        w, w_x, w_xx = self.base.sample(x)
        if self.chi == 0.0:
            return w, w_x, w_xx
        v, v_x = sample_nodal(self.grid, self.field.values, x)
        v_xx = np.interp(x, self.grid.nodes, self._field_curvature)
        return w - self.chi * v, w_x - self.chi * v_x, w_xx - self.chi * v_xx

    def tables(self, grid: Grid) -> PotentialSample:
        require_same_grid(self.grid, grid)
        w, w_x, w_xx = self.base.tables(grid)
        if self.chi == 0.0:
            return w, w_x, w_xx
        v = self.field.values
        return (
            w - self.chi * v,
            w_x - self.chi * np.gradient(v, grid.h),
            w_xx - self.chi * self._field_curvature,
        )

    def max_slope_jump(self) -> float:
        # kinks of the interpolated field add to those of the base table
        return self.base.max_slope_jump() + abs(self.chi) * _slope_jump(
            self.field.values, self.grid.h
        )


def _slope_jump(values: FloatArray, h: float) -> float:
    slopes = np.diff(values) / h
    if slopes.size < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(slopes))))


def perturbed_potential(p: "ModelParams", eq: "EquilibriumPair") -> CoupledPotential:
    """Build W^eps = W - chi v_inf and its derivative tables.

    Args:
        p: Model parameters
        eq: Equilibrium computed on the same grid

    Returns:
        Coupled potential whose ``lambda_min`` is the empirical lambda_eps

    Raises:
        GridMismatchError: If the equilibrium lives on another grid
    """
    require_same_grid(p.grid, eq.v_inf.grid)
    return CoupledPotential(p.potential, p.chi, eq.v_inf)
