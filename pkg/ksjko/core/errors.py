"""Custom exception classes for the Keller-Segel JKO toolkit.

Defines domain-specific exceptions for configuration, discretization,
solver and diagnostics failures. All exceptions inherit from KsJkoError
so callers (and the CLI) can catch them in one place.
"""

from typing import Any, Optional, Sequence


class KsJkoError(Exception):
    """Base exception for all ksjko errors."""

    pass


class ConfigError(KsJkoError):
    """Raised when configuration loading or validation fails.

    Examples:
        - Invalid JSON/YAML syntax
        - Schema validation failures
        - Unknown keys (the message carries a suggestion)
    """

    pass


class OutputError(KsJkoError):
    """Raised when reading an input file or writing an output fails.

    Examples:
        - Config file not found
        - Output directory not writable
    """

    pass


class InvalidArgumentError(KsJkoError):
    """Raised when a numerical precondition on an argument fails.

    Examples:
        - Nonpositive domain half-width or time step
        - kappa = 0 for the equilibrium solve
        - CFL condition violated by the finite-difference oracle
    """

    pass


class DensityError(KsJkoError):
    """Base class for invalid probability densities."""

    pass


class NormalizationError(DensityError):
    """Raised when a density does not integrate to one."""

    pass


class InvalidDensityError(DensityError):
    """Raised when a density is negative or a quantile sequence is not strictly increasing."""

    pass


class DomainOverflowError(DensityError):
    """Raised when quantiles leave the computational domain [-R, R].

    Usually signals that the domain half-width R is too small.
    """

    pass


class ResolutionMismatchError(KsJkoError):
    """Raised when two objects are discretized at incompatible resolutions."""

    pass


class GridMismatchError(ResolutionMismatchError):
    """Raised when two Eulerian fields live on different grids."""

    pass


class SolverError(KsJkoError):
    """Base class for failures of the numerical solvers."""

    pass


class InnerStallError(SolverError):
    """Raised when the quantile subproblem cannot decrease its objective.

    Attributes:
        last_iterate: Quantile positions at the time of the stall
        gradient_norm: Scaled gradient norm at the stall
    """

    def __init__(self, message: str, last_iterate: Any = None, gradient_norm: float = float("nan")):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.gradient_norm = gradient_norm


class NoConvergenceError(SolverError):
    """Raised when the Picard iteration for the equilibrium does not converge.

    Attributes:
        residual_history: Fixed-point residuals of every iteration
    """

    def __init__(self, message: str, residual_history: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.residual_history = list(residual_history or [])


class StabilityError(SolverError):
    """Raised when the finite-difference oracle produces a significant negative density.

    Attributes:
        time: Simulation time of the failing step
        min_value: Most negative density value found
    """

    def __init__(self, message: str, time: float = float("nan"), min_value: float = float("nan")):
        super().__init__(message)
        self.time = time
        self.min_value = min_value


class ConvexityLostError(SolverError):
    """Raised when the perturbed potential is no longer uniformly convex.

    Signals a coupling strength chi beyond the weak-coupling regime.

    Attributes:
        lambda_eps: Measured convexity modulus (nonpositive)
    """

    def __init__(self, message: str, lambda_eps: float = float("nan")):
        super().__init__(message)
        self.lambda_eps = lambda_eps


class TrajectoryAbortedError(SolverError):
    """Raised when a time step fails in the middle of a run.

    Attributes:
        trajectory: The partial trajectory computed before the failure
        cause: The underlying solver error
    """

    def __init__(self, message: str, trajectory: Any = None, cause: Optional[Exception] = None):
        super().__init__(message)
        self.trajectory = trajectory
        self.cause = cause


class DiagnosticsError(KsJkoError):
    """Base class for failures of the post-processing diagnostics."""

    pass


class InvalidSeriesError(DiagnosticsError):
    """Raised when a series to be fitted contains nonpositive values."""

    pass


class InsufficientDataError(DiagnosticsError):
    """Raised when a series has too few points or too little decay for a fit."""

    pass
