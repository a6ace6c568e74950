"""Lyapunov decomposition H - H_inf = L_u + L_v + chi L_star around the equilibrium."""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ksjko.energetics.entropy import EnergyReport, entropy, field_energy, internal_energy
from ksjko.energetics.params import ModelParams
from ksjko.energetics.potential import PotentialSpec, perturbed_potential
from ksjko.transport.grid import require_same_grid
from ksjko.transport.metrics import State
from ksjko.transport.quantiles import QuantileDensity, sample_field_at

if TYPE_CHECKING:
    from ksjko.equilibrium.picard import EquilibriumPair


@dataclass(frozen=True)
class LyapunovReport:
    """Convex part L = L_u + L_v and the coupling remainder L_star."""

    L_u: float
    L_v: float
    L_star: float

    @property
    def L(self) -> float:
        return self.L_u + self.L_v


def relative_free_energy(x: QuantileDensity, potential: PotentialSpec) -> float:
    """int u log u + int u W^eps in quantile coordinates."""
    positions = x.positions
    return internal_energy(positions) + float(np.mean(potential.sample(positions)[0]))


def equilibrium_entropy(eq: "EquilibriumPair", p: ModelParams) -> EnergyReport:
    """H at the equilibrium (X_inf, v_inf)."""
    return entropy(State(eq.x_inf, eq.v_inf), p)


def lyapunov_parts(s: State, eq: "EquilibriumPair", p: ModelParams) -> LyapunovReport:
    """Split the entropy excess of a state into L_u, L_v and L_star.

    L_u is the free energy of u relative to the equilibrium quantiles in the
    potential W^eps. L_v is the quadratic v-energy of v - v_inf. L_star pairs
    u - u_inf with v - v_inf, taking the quantile average for u and the
    trapezoid average for u_inf; with these rules
    H(s) - H_inf = L_u + L_v + chi L_star up to the v_inf stationarity residual.

    Raises:
        GridMismatchError: If the state, the equilibrium and the model disagree on the grid
        InvalidDensityError: If the quantiles are not strictly increasing
    """
    require_same_grid(s.v.grid, eq.v_inf.grid)
    w_eps = perturbed_potential(p, eq)

    L_u = relative_free_energy(s.u, w_eps) - relative_free_energy(eq.x_inf, w_eps)

    gap = s.v - eq.v_inf
    L_v = field_energy(gap, p.kappa)

    gap_at_x, _ = sample_field_at(gap, s.u)
    L_star = -(float(np.mean(gap_at_x)) - gap.grid.integrate(eq.u_inf.values * gap.values))
    return LyapunovReport(L_u=L_u, L_v=L_v, L_star=L_star)
