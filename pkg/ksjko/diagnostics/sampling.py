"""Random smooth states near an equilibrium, for property runs."""

import numpy as np

from ksjko.core.errors import DomainOverflowError
from ksjko.energetics.params import ModelParams
from ksjko.equilibrium.picard import EquilibriumPair
from ksjko.transport.grid import EulerianField
from ksjko.transport.metrics import State
from ksjko.transport.quantiles import QuantileDensity

N_FIELD_MODES = 3


def random_smooth_state(
    rng: np.random.Generator, eq: EquilibriumPair, p: ModelParams, amplitude: float = 1.0
) -> State:
    """Draw a smooth perturbation of the equilibrium.

    The quantiles are a monotone map of the equilibrium quantiles,
    ``a + s X_inf + d tanh(X_inf)`` with ``s + d > 0``. The field adds a few
    Neumann cosine modes with decaying random amplitudes to v_inf.

    Args:
        rng: Random generator (seeded by the caller)
        eq: Equilibrium to perturb
        p: Model parameters
        amplitude: Overall size of the perturbation

    Returns:
        State inside the grid

    Raises:
        DomainOverflowError: If the drawn quantiles leave the grid
    """
    shift = amplitude * rng.uniform(-0.5, 0.5)
    scale = 1.0 + amplitude * rng.uniform(-0.3, 0.4)
    bend = amplitude * rng.uniform(-0.3, 0.3) * scale
    x_inf = eq.x_inf.positions
    x = shift + scale * x_inf + bend * np.tanh(x_inf)
    if not p.grid.contains(x):
        raise DomainOverflowError("random state left the grid; lower the amplitude")

    grid = p.grid
    phase = (grid.nodes + grid.half_width) / (2.0 * grid.half_width)
    v = eq.v_inf.values.copy()
    for k in range(1, N_FIELD_MODES + 1):
        v += amplitude * rng.normal(0.0, 0.1) / k**2 * np.cos(k * np.pi * phase)
    return State(QuantileDensity(x), EulerianField(grid, v))
