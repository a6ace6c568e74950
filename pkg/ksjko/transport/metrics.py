"""Exact 1D Wasserstein distance, the compound W2-L2 metric and moments."""

from dataclasses import dataclass

import numpy as np

from ksjko.core.errors import ResolutionMismatchError
from ksjko.transport.grid import EulerianField, require_same_grid
from ksjko.transport.quantiles import QuantileDensity


@dataclass(frozen=True, eq=False)
class State:
    """A point (u, v) of the product space: a density and a chemoattractant field."""

    u: QuantileDensity
    v: EulerianField


def wasserstein2(X: QuantileDensity, Y: QuantileDensity) -> float:
    """L2-Wasserstein distance, the L2 distance between quantile functions.

    Raises:
        ResolutionMismatchError: If X and Y have different numbers of quantiles
    """
    if X.n_quantiles != Y.n_quantiles:
        raise ResolutionMismatchError(
            f"quantile counts differ: {X.n_quantiles} vs {Y.n_quantiles}"
        )
    return float(np.sqrt(np.mean((X.positions - Y.positions) ** 2)))


def l2_distance(v: EulerianField, w: EulerianField) -> float:
    """Trapezoid L2 distance between two fields on the same grid."""
    return (v - w).l2_norm()


def compound_dist(a: State, b: State) -> float:
    """Mixed distance sqrt(W2(u, u')^2 + ||v - v'||_2^2).

    Raises:
        ResolutionMismatchError: If the quantile counts or the grids differ
    """
    require_same_grid(a.v.grid, b.v.grid)
    w2 = wasserstein2(a.u, b.u)
    l2 = l2_distance(a.v, b.v)
    return float(np.sqrt(w2**2 + l2**2))


def second_moment(X: QuantileDensity) -> float:
    """Second moment, the mean of X_j^2."""
    return float(np.mean(X.positions**2))
