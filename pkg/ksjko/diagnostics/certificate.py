"""Empirical exponential-convergence certificate of a JKO trajectory.

The Lyapunov series L(t) decays at twice the rate of the square-root
quantities it controls, so the fitted rate of L is halved before being
compared with min(kappa, lambda0).
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ksjko.config.defaults import DEFAULT_ENVELOPE_DRIFT, DEFAULT_MIN_DECAY_FACTOR
from ksjko.core.errors import InsufficientDataError
from ksjko.diagnostics.decay import DecayFit, fit_decay_rate
from ksjko.diagnostics.inequalities import l1_gap
from ksjko.energetics.lyapunov import LyapunovReport, equilibrium_entropy, lyapunov_parts
from ksjko.energetics.params import ModelParams
from ksjko.equilibrium.picard import EquilibriumPair
from ksjko.solver.trajectory import JkoTrajectory
from ksjko.transport.metrics import wasserstein2
from ksjko.utils.logger import logger

EXCESS_FLOOR = 1e-10


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Measured convergence rate of a trajectory and the envelope it supports.

    Attributes:
        fit: Decay fit of the L-series
        half_rate: Fitted rate of L divided by two
        reference_rate: min(kappa, lambda0), the decoupled rate
        prefactor: Envelope constant C, the largest distance/envelope ratio up to the
            end of the fit window
        transient_prefactor: The same ratio taken over the transient only
        envelope_satisfied: Whether C stays within the allowed drift of the transient value
        distances: ||u - u_inf||_1 + W2 + sup|v - v_inf| + ||v - v_inf||_H1 per iterate
        domination_ratio: sup of L / (H - H_inf) over iterates above the noise floor
        implied_m2: (domination_ratio - 1) / |chi|, None when chi = 0
        step_rates: Per-step rates (L(n-1) / L(n) - 1) / (2 tau)
        median_step_rate: Median per-step rate inside the fit window
    """

    fit: DecayFit
    half_rate: float
    reference_rate: float
    prefactor: float
    transient_prefactor: float
    envelope_satisfied: bool
    distances: tuple[float, ...]
    domination_ratio: float
    implied_m2: Optional[float]
    step_rates: tuple[float, ...] = field(default=())
    median_step_rate: float = math.nan

    @property
    def rate_ratio(self) -> float:
        return self.half_rate / self.reference_rate

    @property
    def envelope_drift(self) -> float:
        """How far the late samples push C above its transient value."""
        return self.prefactor / self.transient_prefactor


def _lyapunov_series(
    traj: JkoTrajectory, eq: EquilibriumPair, p: ModelParams
) -> list[LyapunovReport]:
    if len(traj.lyapunov) == len(traj.states):
        return traj.lyapunov
    return [lyapunov_parts(s, eq, p) for s in traj.states]


def convergence_distances(traj: JkoTrajectory, eq: EquilibriumPair) -> list[float]:
    """Sum of the four distances to equilibrium at every iterate."""
    out = []
    for s in traj.states:
        gap = s.v - eq.v_inf
        out.append(
            l1_gap(s.u, eq) + wasserstein2(s.u, eq.x_inf) + gap.sup_norm() + gap.h1_norm()
        )
    return out


def convergence_certificate(
    traj: JkoTrajectory,
    eq: EquilibriumPair,
    p: ModelParams,
    window: Optional[tuple[float, float]] = None,
) -> ConvergenceCertificate:
    """Fit the decay rate of L and test the exponential envelope along a trajectory.

    Args:
        traj: JKO trajectory (Lyapunov reports are computed when missing)
        eq: Equilibrium of the same model
        p: Model parameters
        window: Fit window; defaults to the half-to-floor window of the L-series

    Returns:
        ConvergenceCertificate

    Raises:
        InsufficientDataError: If the trajectory is too short or L drops by less
            than a factor of ten
    """
    if traj.n_steps < 2:
        raise InsufficientDataError(f"trajectory has {traj.n_steps} steps, need at least 2")

    reports = _lyapunov_series(traj, eq, p)
    times = np.asarray(traj.times)
    L = np.asarray([r.L for r in reports])
    if not (L[0] > 0.0 and np.min(L) * DEFAULT_MIN_DECAY_FACTOR <= L[0]):
        raise InsufficientDataError(
            f"L decayed by less than a factor {DEFAULT_MIN_DECAY_FACTOR:g}; run longer"
        )

    fit = fit_decay_rate(list(zip(times.tolist(), L.tolist())), window)
    half_rate = 0.5 * fit.rate
    reference_rate = min(p.kappa, p.potential.lambda_min(p.grid))

    h_inf = equilibrium_entropy(eq, p).H
    excess = np.asarray([e.H for e in traj.energies]) - h_inf
    distances = np.asarray(convergence_distances(traj, eq))
    envelope_unit = math.sqrt(max(excess[0], 0.0)) * np.exp(-half_rate * times)

    # samples past the window sit at the noise floor and do not constrain C
    covered = times <= fit.window[1]
    transient = times <= fit.window[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(envelope_unit > 0.0, distances / envelope_unit, np.inf)
    prefactor = float(np.max(ratios[covered]))
    transient_prefactor = float(np.max(ratios[transient]))
    envelope_satisfied = bool(
        np.isfinite(prefactor)
        and prefactor <= transient_prefactor * (1.0 + DEFAULT_ENVELOPE_DRIFT)
    )

    floor = EXCESS_FLOOR * (1.0 + abs(h_inf))
    above = excess > floor
    domination = float(np.max(L[above] / excess[above])) if np.any(above) else math.nan
    implied_m2 = (domination - 1.0) / abs(p.chi) if p.chi != 0.0 else None

    with np.errstate(divide="ignore", invalid="ignore"):
        step_rates = (L[:-1] / L[1:] - 1.0) / (2.0 * traj.tau)
    in_window = (times[1:] >= fit.window[0]) & (times[1:] <= fit.window[1])
    finite = in_window & np.isfinite(step_rates)
    median_step = float(np.median(step_rates[finite])) if np.any(finite) else math.nan

    logger.info(
        f"Fitted L-rate {fit.rate:.4f} on [{fit.window[0]:g}, {fit.window[1]:g}]; "
        f"half-rate {half_rate:.4f} vs min(kappa, lambda0) = {reference_rate:g}"
    )
    return ConvergenceCertificate(
        fit=fit,
        half_rate=half_rate,
        reference_rate=reference_rate,
        prefactor=prefactor,
        transient_prefactor=transient_prefactor,
        envelope_satisfied=envelope_satisfied,
        distances=tuple(float(d) for d in distances),
        domination_ratio=domination,
        implied_m2=implied_m2,
        step_rates=tuple(float(r) for r in step_rates),
        median_step_rate=median_step,
    )
