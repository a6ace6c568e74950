"""The entropy functional H and its Lagrangian building blocks.

H(u, v) = int u log u + u W + v_x^2 / 2 + kappa v^2 / 2 - chi u v.

The density terms are evaluated in quantile coordinates. Cell k between
X_k and X_{k+1} carries mass 1/N and density 1/(N (X_{k+1} - X_k)). The two
outer half-cells (mass 1/(2N) each) carry no internal energy: their mass
rides with the extreme quantile, which only feels the pressure of its inner
cell. The v-terms use forward differences and trapezoid weights on the grid.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ksjko.core.errors import InvalidDensityError
from ksjko.energetics.params import ModelParams
from ksjko.energetics.potential import PotentialSpec
from ksjko.transport.grid import EulerianField, require_same_grid
from ksjko.transport.metrics import State
from ksjko.transport.quantiles import QuantileDensity, sample_field_at

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class EnergyReport:
    """The four parts of H and their sum."""

    H: float
    internal: float
    potential: float
    field: float
    coupling: float

    @classmethod
    def from_parts(
        cls, internal: float, potential: float, field: float, coupling: float
    ) -> "EnergyReport":
        return cls(
            H=internal + potential + field + coupling,
            internal=internal,
            potential=potential,
            field=field,
            coupling=coupling,
        )


def _widths(x: FloatArray) -> FloatArray:
    widths = np.diff(x)
    if not np.all(widths > 0.0):
        raise InvalidDensityError("quantile positions must be strictly increasing")
    return widths


def cell_weights(n: int) -> FloatArray:
    """Mass weights a_k = 1/N of the N - 1 inter-quantile cells."""
    return np.full(n - 1, 1.0 / n)


def internal_energy(x: FloatArray) -> float:
    """Lagrangian int u log u = -sum_k a_k log(N (X_{k+1} - X_k))."""
    n = x.size
    return float(-np.dot(cell_weights(n), np.log(n * _widths(x))))


def internal_energy_gradient(x: FloatArray) -> FloatArray:
    """Gradient of internal_energy with respect to the positions.

    Component j is ``a_j / delta_j - a_{j-1} / delta_{j-1}``, the missing
    cell dropped at the two ends.
    """
    n = x.size
    inv = cell_weights(n) / _widths(x)
    grad = np.zeros(n)
    grad[:-1] += inv
    grad[1:] -= inv
    return grad


def internal_energy_hessian(x: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Tridiagonal Hessian of internal_energy as (diagonal, off-diagonal)."""
    n = x.size
    c = cell_weights(n) / _widths(x) ** 2
    diag = np.zeros(n)
    diag[:-1] += c
    diag[1:] += c
    return diag, -c


def potential_energy(x: FloatArray, potential: PotentialSpec) -> float:
    """int u W = mean of W(X_j)."""
    return float(np.mean(potential.sample(x)[0]))


def field_energy(v: EulerianField, kappa: float) -> float:
    """Quadratic v-part 1/2 ||v_x||^2 + kappa/2 ||v||^2 on the grid."""
    return 0.5 * v.gradient_norm_sq() + 0.5 * kappa * v.l2_norm() ** 2


def coupling_energy(u: QuantileDensity, v: EulerianField, chi: float) -> float:
    """-chi int u v = -chi mean of v(X_j)."""
    if chi == 0.0:
        return 0.0
    values, _ = sample_field_at(v, u)
    return -chi * float(np.mean(values))


def entropy(s: State, p: ModelParams) -> EnergyReport:
    """Evaluate H at a state.

    Args:
        s: State (u, v)
        p: Model parameters

    Returns:
        EnergyReport whose H is the sum of its four parts

    Raises:
        InvalidDensityError: If the quantiles are not strictly increasing
        GridMismatchError: If v does not live on the model grid
    """
    require_same_grid(p.grid, s.v.grid)
    x = s.u.positions
    return EnergyReport.from_parts(
        internal=internal_energy(x),
        potential=potential_energy(x, p.potential),
        field=field_energy(s.v, p.kappa),
        coupling=coupling_energy(s.u, s.v, p.chi),
    )
