"""Functional inequalities around the equilibrium, evaluated on discrete states."""

from dataclasses import dataclass

import numpy as np

from ksjko.core.errors import ConvexityLostError, InvalidArgumentError
from ksjko.energetics.dissipation import dissipation_v, fisher_dissipation_u
from ksjko.energetics.lyapunov import lyapunov_parts, relative_free_energy
from ksjko.energetics.params import ModelParams
from ksjko.energetics.potential import perturbed_potential
from ksjko.equilibrium.picard import EquilibriumPair
from ksjko.transport.grid import require_same_grid
from ksjko.transport.metrics import State, l2_distance, wasserstein2
from ksjko.transport.quantiles import QuantileDensity, quantiles_to_density

CK_SLACK = 1e-6
MARGIN_TOL = 1e-4


@dataclass(frozen=True)
class CsiszarKullbackCheck:
    """||u - u_inf||_1^2 against 2 L_u(u)."""

    l1_sq: float
    bound: float
    satisfied: bool


@dataclass(frozen=True)
class SandwichReport:
    """Lower, middle and upper terms of the two convexity sandwiches.

    u-chain: lambda_eps/2 W2^2 <= L_u <= Fisher / (2 lambda_eps).
    v-chain: kappa/2 ||v - v_inf||^2 <= L_v <= D_v / (2 kappa).
    """

    lambda_eps: float
    lower_u: float
    L_u: float
    upper_u: float
    lower_v: float
    L_v: float
    upper_v: float

    @property
    def margins(self) -> dict[str, float]:
        return {
            "u_lower": self.L_u - self.lower_u,
            "u_upper": self.upper_u - self.L_u,
            "v_lower": self.L_v - self.lower_v,
            "v_upper": self.upper_v - self.L_v,
        }

    @property
    def scale(self) -> float:
        return 1.0 + max(abs(self.upper_u), abs(self.upper_v), abs(self.L_u), abs(self.L_v))

    @property
    def min_margin(self) -> float:
        return min(self.margins.values())

    @property
    def satisfied(self) -> bool:
        return self.min_margin >= -MARGIN_TOL * self.scale


def l1_gap(u: QuantileDensity, eq: EquilibriumPair) -> float:
    """||u - u_inf||_1 between the reconstructions of u and of the equilibrium quantiles."""
    grid = eq.u_inf.grid
    diff = quantiles_to_density(u, grid).values - quantiles_to_density(eq.x_inf, grid).values
    return grid.integrate(np.abs(diff))


def csiszar_kullback_check(
    u: QuantileDensity, eq: EquilibriumPair, p: ModelParams
) -> CsiszarKullbackCheck:
    """Check ||u - u_inf||_1^2 <= 2 L_u(u) with slack 1e-6 (1 + bound).

    Raises:
        GridMismatchError: If the equilibrium and the model disagree on the grid
        DomainOverflowError: If u leaves the grid
    """
    require_same_grid(p.grid, eq.u_inf.grid)
    w_eps = perturbed_potential(p, eq)
    L_u = relative_free_energy(u, w_eps) - relative_free_energy(eq.x_inf, w_eps)
    l1_sq = l1_gap(u, eq) ** 2
    bound = 2.0 * L_u
    return CsiszarKullbackCheck(
        l1_sq=l1_sq, bound=bound, satisfied=l1_sq <= bound + CK_SLACK * (1.0 + abs(bound))
    )


def sandwich_check(s: State, eq: EquilibriumPair, p: ModelParams) -> SandwichReport:
    """Evaluate both convexity sandwiches at a state.

    Args:
        s: State to test
        eq: Equilibrium on the model grid
        p: Model parameters (kappa > 0)

    Returns:
        SandwichReport with the six terms and their margins

    Raises:
        InvalidArgumentError: If kappa <= 0
        ConvexityLostError: If the perturbed potential is not strictly convex
    """
    if not p.kappa > 0.0:
        raise InvalidArgumentError(f"sandwich check requires kappa > 0, got {p.kappa}")
    w_eps = perturbed_potential(p, eq)
    lam = w_eps.lambda_min(p.grid)
    if not lam > 0.0:
        raise ConvexityLostError(
            f"perturbed potential lost convexity (lambda_eps={lam:.3e}); chi too large",
            lambda_eps=lam,
        )

    parts = lyapunov_parts(s, eq, p)
    w2 = wasserstein2(s.u, eq.x_inf)
    fisher = fisher_dissipation_u(s.u, w_eps, p.grid)
    return SandwichReport(
        lambda_eps=lam,
        lower_u=0.5 * lam * w2**2,
        L_u=parts.L_u,
        upper_u=fisher / (2.0 * lam),
        lower_v=0.5 * p.kappa * l2_distance(s.v, eq.v_inf) ** 2,
        L_v=parts.L_v,
        upper_v=dissipation_v(s.v, eq, p.kappa) / (2.0 * p.kappa),
    )
