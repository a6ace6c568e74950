"""Randomized property suite over smooth states near the equilibrium."""

from dataclasses import dataclass, field

import numpy as np

from ksjko.config.defaults import DEFAULT_INVARIANT_SAMPLES, DEFAULT_SEED
from ksjko.diagnostics.inequalities import CK_SLACK, csiszar_kullback_check, sandwich_check
from ksjko.diagnostics.sampling import random_smooth_state
from ksjko.energetics.entropy import entropy
from ksjko.energetics.lyapunov import equilibrium_entropy, lyapunov_parts
from ksjko.energetics.params import ModelParams
from ksjko.equilibrium.picard import EquilibriumPair
from ksjko.transport.quantiles import reconstruction_mass
from ksjko.utils.logger import logger

DECOMPOSITION_TOL = 1e-8
ROUND_TRIP_MASS_TOL = 1.0  # in units of (h + 1/N)^2
SANDWICH_TOL = 1e-4


@dataclass(frozen=True)
class InvariantCheck:
    """Worst observed value of one property against its threshold."""

    name: str
    worst: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.threshold


@dataclass
class InvariantReport:
    n_samples: int
    seed: int
    checks: list[InvariantCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_invariant_suite(
    eq: EquilibriumPair,
    p: ModelParams,
    n_samples: int = DEFAULT_INVARIANT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> InvariantReport:
    """Evaluate the decomposition identity and the functional inequalities on random states.

    Every check records a nonnegative "badness" whose worst value must stay
    below its threshold:

    - decomposition: |(H - H_inf) - (L + chi L_star)| / (1 + |H|)
    - sandwich: largest violation of the four bounds divided by their scale
    - csiszar_kullback: largest excess of ||u - u_inf||_1^2 over 2 L_u, relative to 1 + bound
    - round_trip_mass: mass defect of the Eulerian reconstruction before it is
      renormalized, divided by (h + 1/N)^2

    Raises:
        ConvexityLostError: If the perturbed potential is not convex
    """
    rng = np.random.default_rng(seed)
    resolution = (p.grid.h + 1.0 / p.n_quantiles) ** 2
    h_inf = equilibrium_entropy(eq, p).H
    worst = dict.fromkeys(
        ("decomposition", "sandwich", "csiszar_kullback", "round_trip_mass"), 0.0
    )

    for i in range(n_samples):
        s = random_smooth_state(rng, eq, p)
        h = entropy(s, p).H
        parts = lyapunov_parts(s, eq, p)
        gap = abs((h - h_inf) - (parts.L + p.chi * parts.L_star)) / (1.0 + abs(h))
        worst["decomposition"] = max(worst["decomposition"], gap)

        sandwich = sandwich_check(s, eq, p)
        worst["sandwich"] = max(worst["sandwich"], -sandwich.min_margin / sandwich.scale)

        ck = csiszar_kullback_check(s.u, eq, p)
        worst["csiszar_kullback"] = max(
            worst["csiszar_kullback"], (ck.l1_sq - ck.bound) / (1.0 + abs(ck.bound))
        )

        defect = abs(reconstruction_mass(s.u, p.grid) - 1.0) / resolution
        worst["round_trip_mass"] = max(worst["round_trip_mass"], defect)
        logger.debug(
            f"sample {i}: decomposition gap {gap:.2e}, sandwich margin {sandwich.min_margin:.2e}"
        )

    thresholds = {
        "decomposition": DECOMPOSITION_TOL,
        "sandwich": SANDWICH_TOL,
        "csiszar_kullback": CK_SLACK,
        "round_trip_mass": ROUND_TRIP_MASS_TOL,
    }
    report = InvariantReport(n_samples=n_samples, seed=seed)
    for name, value in worst.items():
        report.checks.append(InvariantCheck(name=name, worst=value, threshold=thresholds[name]))
    return report
