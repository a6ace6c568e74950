"""Spatial discretization and 1D optimal transport."""

from ksjko.transport.grid import EulerianField, Grid, build_uniform_grid, require_same_grid
from ksjko.transport.metrics import (
    State,
    compound_dist,
    l2_distance,
    second_moment,
    wasserstein2,
)
from ksjko.transport.quantiles import (
    QuantileDensity,
    density_to_quantiles,
    deposit_quantiles,
    mass_points,
    quantiles_to_density,
    sample_field_at,
)

__all__ = [
    "EulerianField",
    "Grid",
    "QuantileDensity",
    "State",
    "build_uniform_grid",
    "compound_dist",
    "density_to_quantiles",
    "deposit_quantiles",
    "l2_distance",
    "mass_points",
    "quantiles_to_density",
    "require_same_grid",
    "sample_field_at",
    "second_moment",
    "wasserstein2",
]
