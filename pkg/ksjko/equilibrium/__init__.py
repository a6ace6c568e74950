"""Stationary state of the coupled system."""

from ksjko.equilibrium.picard import (
    EquilibriumPair,
    gibbs_density,
    picard_map,
    solve_equilibrium,
    stationarity_residual,
)

__all__ = [
    "EquilibriumPair",
    "gibbs_density",
    "picard_map",
    "solve_equilibrium",
    "stationarity_residual",
]
