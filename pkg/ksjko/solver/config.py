"""Settings of the inner minimization of one JKO step."""

from dataclasses import dataclass

from ksjko.config.defaults import (
    DEFAULT_ARMIJO,
    DEFAULT_BACKTRACKING,
    DEFAULT_ENERGY_DECREASE_TOL,
    DEFAULT_GRAD_TOL,
    DEFAULT_MAX_BACKTRACKS,
    DEFAULT_MAX_NEWTON_ITERS,
    DEFAULT_MAX_OUTER_ALTERNATIONS,
    DEFAULT_STALL_TOL,
)
from ksjko.core.errors import InvalidArgumentError


@dataclass(frozen=True)
class InnerSolverConfig:
    """Tolerances and iteration caps of the block minimization.

    Attributes:
        max_outer_alternations: Cap on v-block / X-block alternations per step
        max_newton_iters: Cap on Newton iterations per X-block
        grad_tol: Tolerance on N * max|grad F|, the gradient in the L2(dm) metric
        energy_decrease_tol: Stop alternating once the penalized energy drops by less
        backtracking: Line-search step reduction factor, in (0, 1)
        armijo: Armijo sufficient-decrease constant
        max_backtracks: Line-search attempts before falling back to steepest descent
        stall_tol: Gradient level below which a failed line search counts as converged
    """

    max_outer_alternations: int = DEFAULT_MAX_OUTER_ALTERNATIONS
    max_newton_iters: int = DEFAULT_MAX_NEWTON_ITERS
    grad_tol: float = DEFAULT_GRAD_TOL
    energy_decrease_tol: float = DEFAULT_ENERGY_DECREASE_TOL
    backtracking: float = DEFAULT_BACKTRACKING
    armijo: float = DEFAULT_ARMIJO
    max_backtracks: int = DEFAULT_MAX_BACKTRACKS
    stall_tol: float = DEFAULT_STALL_TOL

    def __post_init__(self) -> None:
        for name in ("grad_tol", "energy_decrease_tol", "armijo", "stall_tol"):
            if not getattr(self, name) > 0.0:
                raise InvalidArgumentError(f"{name} must be positive")
        if not 0.0 < self.backtracking < 1.0:
            raise InvalidArgumentError(
                f"backtracking factor must lie in (0, 1), got {self.backtracking}"
            )
        for name in ("max_outer_alternations", "max_newton_iters", "max_backtracks"):
            if getattr(self, name) < 1:
                raise InvalidArgumentError(f"{name} must be at least 1")
