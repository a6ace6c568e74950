"""Per-step reports and the piecewise-constant JKO trajectory."""

import math
from dataclasses import dataclass, field
from typing import Optional

from ksjko.core.errors import InvalidArgumentError
from ksjko.energetics.entropy import EnergyReport
from ksjko.energetics.lyapunov import LyapunovReport
from ksjko.transport.metrics import State


@dataclass(frozen=True)
class JkoStepReport:
    """Diagnostics of one minimizing-movement step.

    Attributes:
        alternations: v-block / X-block alternations used
        grad_norm: Final scaled gradient norm of the X-block
        step_dist: Compound distance between the new and the previous state
        energy_decrease: H(old) minus the penalized energy of the new state
        newton_iterations: Newton iterations summed over all X-blocks
        steepest_steps: Steepest-descent fallbacks summed over all X-blocks
    """

    alternations: int
    grad_norm: float
    step_dist: float
    energy_decrease: float
    newton_iterations: int = 0
    steepest_steps: int = 0


@dataclass
class JkoTrajectory:
    """Iterates of the scheme at times 0, tau, 2 tau, ...

    The trajectory is the piecewise-constant interpolation of its iterates:
    a query at t in ((n - 1) tau, n tau] returns iterate n.
    """

    tau: float
    states: list[State] = field(default_factory=list)
    energies: list[EnergyReport] = field(default_factory=list)
    lyapunov: list[LyapunovReport] = field(default_factory=list)
    step_reports: list[JkoStepReport] = field(default_factory=list)

    @property
    def n_steps(self) -> int:
        return max(len(self.states) - 1, 0)

    @property
    def times(self) -> list[float]:
        return [n * self.tau for n in range(len(self.states))]

    @property
    def final_time(self) -> float:
        return self.n_steps * self.tau

    def record(
        self,
        state: State,
        energy: EnergyReport,
        lyapunov: Optional[LyapunovReport] = None,
        report: Optional[JkoStepReport] = None,
    ) -> None:
        """Append an iterate and its reports."""
        self.states.append(state)
        self.energies.append(energy)
        if lyapunov is not None:
            self.lyapunov.append(lyapunov)
        if report is not None:
            self.step_reports.append(report)

    def index_at(self, t: float) -> int:
        """Iterate index answering a query at time t."""
        if t < 0.0 or t > self.final_time * (1.0 + 1e-12) + 1e-15:
            raise InvalidArgumentError(f"time {t} outside [0, {self.final_time}]")
        if t == 0.0:
            return 0
        return min(max(math.ceil(t / self.tau - 1e-9), 1), self.n_steps)

    def at(self, t: float) -> State:
        """State of the piecewise-constant interpolation at time t."""
        return self.states[self.index_at(t)]
