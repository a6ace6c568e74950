"""Model parameters shared by every solver and diagnostic."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ksjko.core.errors import InvalidArgumentError
from ksjko.energetics.potential import PotentialSpec, QuadraticPotential
from ksjko.transport.grid import Grid, build_uniform_grid


def default_half_width(lambda0: float) -> float:
    """Domain half-width keeping all but a negligible equilibrium mass inside."""
    return 10.0 / float(np.sqrt(lambda0))


@dataclass(frozen=True)
class ModelParams:
    """Coupling, decay, confinement and discretization of one model.

    Attributes:
        chi: Chemotactic coupling (the weak-coupling parameter when small)
        kappa: Decay rate of the chemoattractant, nonnegative
        potential: Confinement potential W
        grid: Eulerian grid over [-R, R]
        n_quantiles: Number of quantiles N of the density
    """

    chi: float
    kappa: float
    potential: PotentialSpec
    grid: Grid
    n_quantiles: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.chi):
            raise InvalidArgumentError(f"chi must be finite, got {self.chi}")
        if not (self.kappa >= 0.0 and np.isfinite(self.kappa)):
            raise InvalidArgumentError(f"kappa must be nonnegative, got {self.kappa}")
        if self.n_quantiles < 2:
            raise InvalidArgumentError(f"n_quantiles must be at least 2, got {self.n_quantiles}")

    @classmethod
    def quadratic(
        cls,
        chi: float,
        kappa: float,
        lambda0: float,
        n_cells: int,
        n_quantiles: int,
        R: Optional[float] = None,
    ) -> "ModelParams":
        """Parameters with the quadratic confinement lambda0 x^2 / 2.

        R defaults to ``10 / sqrt(lambda0)``.
        """
        half_width = default_half_width(lambda0) if R is None else R
        return cls(
            chi=float(chi),
            kappa=float(kappa),
            potential=QuadraticPotential(lambda0),
            grid=build_uniform_grid(half_width, n_cells),
            n_quantiles=int(n_quantiles),
        )

    def with_chi(self, chi: float) -> "ModelParams":
        """Copy with another coupling strength (used by sweeps)."""
        return ModelParams(chi, self.kappa, self.potential, self.grid, self.n_quantiles)
