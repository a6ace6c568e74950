"""Dissipation integrals bounding the Lyapunov parts from above.

The Fisher-type dissipation int u ((log u + W^eps)_x)^2 has two evaluations.
For quantile densities it lives on the mesh the quantiles induce: the cell
densities 1/(N delta_k) are differenced across each quantile and weighted by
its mass 1/N. This is the squared gradient norm of the discrete free energy,
so it vanishes at the discrete Gibbs state and stays consistent with L_u.
For nodal densities (the finite-difference oracle) it uses centered
differences of log u + W^eps and the trapezoid rule.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ksjko.core.errors import DomainOverflowError, InvalidDensityError
from ksjko.energetics.entropy import internal_energy_gradient
from ksjko.energetics.potential import PotentialSpec
from ksjko.numerics.tridiag import neumann_second_difference
from ksjko.transport.grid import EulerianField, Grid, require_same_grid
from ksjko.transport.quantiles import QuantileDensity

if TYPE_CHECKING:
    from ksjko.equilibrium.picard import EquilibriumPair

DENSITY_FLOOR = 1e-12


@dataclass(frozen=True)
class FisherParts:
    """Fisher dissipation split into interior and boundary quantiles."""

    interior: float
    boundary: float

    @property
    def total(self) -> float:
        return self.interior + self.boundary


def fisher_dissipation_parts(
    u: QuantileDensity, Weps: PotentialSpec, grid: Grid
) -> FisherParts:
    """Interior and boundary contributions of int u ((log u + W^eps)_x)^2.

    Interior quantiles are those whose log-density difference only involves
    full inner cells. The two outermost quantiles on each side (whose
    difference touches an outer half-cell) form the boundary part.
    Quantiles next to a cell with density below ``DENSITY_FLOOR * max`` are
    skipped.

    Args:
        u: Quantile density
        Weps: Potential W^eps
        grid: Grid the potential tables live on

    Returns:
        FisherParts

    Raises:
        InvalidDensityError: If the quantiles are not strictly increasing
        DomainOverflowError: If a quantile lies outside the grid
    """
    x = u.positions
    n = x.size
    if not grid.contains(x):
        raise DomainOverflowError("quantiles leave the grid; increase R")
    _, slopes, _ = Weps.sample(x)
    velocity = n * internal_energy_gradient(x) + slopes

    cell_density = 1.0 / (n * np.diff(x))
    floor = DENSITY_FLOOR * float(np.max(cell_density))
    valid = np.ones(n, dtype=bool)
    thin = cell_density < floor
    valid[:-1] &= ~thin
    valid[1:] &= ~thin

    contrib = np.where(valid, velocity**2, 0.0) / n
    edge = np.zeros(n, dtype=bool)
    edge[: min(2, n)] = True
    edge[max(n - 2, 0) :] = True
    return FisherParts(
        interior=float(np.sum(contrib[~edge])),
        boundary=float(np.sum(contrib[edge])),
    )


def fisher_dissipation_u(u: QuantileDensity, Weps: PotentialSpec, grid: Grid) -> float:
    """Total Fisher-type dissipation (interior plus boundary quantiles)."""
    return fisher_dissipation_parts(u, Weps, grid).total


def fisher_dissipation_eulerian(u: EulerianField, Weps: PotentialSpec) -> FisherParts:
    """Fisher-type dissipation of a nodal density.

    (log u + W^eps)_x is taken by centered differences at nodes whose two
    neighbours lie above the floor ``DENSITY_FLOOR * max u``; those nodes form
    the interior part. Nodes above the floor with a neighbour below it (or on
    the grid boundary) use the one-sided difference toward the valid side and
    form the boundary part. Nodes below the floor contribute zero.

    Raises:
        InvalidDensityError: If u is negative or vanishes identically
    """
    grid = u.grid
    values = u.values
    if float(np.min(values)) < 0.0:
        raise InvalidDensityError("density has negative values")
    peak = float(np.max(values))
    if not peak > 0.0:
        raise InvalidDensityError("density vanishes identically")

    above = values > DENSITY_FLOOR * peak
    g = np.log(np.where(above, values, 1.0)) + Weps.tables(grid)[0]
    h = grid.h
    left = np.zeros_like(above)
    right = np.zeros_like(above)
    left[1:] = above[:-1]
    right[:-1] = above[1:]

    slope = np.zeros_like(values)
    inner = above & left & right
    idx = np.flatnonzero(inner)
    slope[idx] = (g[idx + 1] - g[idx - 1]) / (2.0 * h)
    only_left = above & left & ~right
    idx = np.flatnonzero(only_left)
    slope[idx] = (g[idx] - g[idx - 1]) / h
    only_right = above & right & ~left
    idx = np.flatnonzero(only_right)
    slope[idx] = (g[idx + 1] - g[idx]) / h

    density = grid.weights * values * slope**2
    return FisherParts(
        interior=float(np.sum(density[inner])),
        boundary=float(np.sum(density[above & ~inner])),
    )


def dissipation_v(v: EulerianField, eq: "EquilibriumPair", kappa: float) -> float:
    """||(v - v_inf)_xx - kappa (v - v_inf)||^2 with Neumann second differences.

    Raises:
        GridMismatchError: If v and the equilibrium live on different grids
    """
    require_same_grid(v.grid, eq.v_inf.grid)
    gap = v.values - eq.v_inf.values
    residual = neumann_second_difference(gap, v.grid.h) - kappa * gap
    return v.grid.integrate(residual**2)
