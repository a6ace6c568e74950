"""Pydantic configuration models for validation and type safety.

Defines the run schema read from JSON-compatible config files, with
validation rules and the documented defaults.
"""

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationInfo, field_validator, model_validator

from .defaults import (
    DEFAULT_ARMIJO,
    DEFAULT_BACKTRACKING,
    DEFAULT_ENERGY_DECREASE_TOL,
    DEFAULT_FD_DT,
    DEFAULT_FD_RECORD_EVERY,
    DEFAULT_FD_SCHEME,
    DEFAULT_GRAD_TOL,
    DEFAULT_INVARIANT_SAMPLES,
    DEFAULT_MAX_BACKTRACKS,
    DEFAULT_MAX_NEWTON_ITERS,
    DEFAULT_MAX_OUTER_ALTERNATIONS,
    DEFAULT_N_CELLS,
    DEFAULT_N_QUANTILES,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_PICARD_DAMPING,
    DEFAULT_PICARD_MAX_ITERS,
    DEFAULT_PICARD_TOL,
    DEFAULT_PLOTS,
    DEFAULT_POTENTIAL,
    DEFAULT_SEED,
    DEFAULT_STALL_TOL,
    DEFAULT_STRIDE,
    DEFAULT_SWEEP_CHI,
)

STRICT = {"extra": "forbid"}


class GaussianDensity(BaseModel):
    """Normal initial density."""

    type: Literal["gaussian"] = "gaussian"
    mean: float = 0.0
    variance: float = Field(default=1.0, gt=0.0)

    model_config = STRICT  # type: ignore[assignment]


class UniformDensity(BaseModel):
    """Uniform initial density on [a, b]."""

    type: Literal["uniform"] = "uniform"
    a: float = -1.0
    b: float = 1.0

    model_config = STRICT  # type: ignore[assignment]

    @field_validator("b")
    @classmethod
    def validate_interval(cls, v: float, info: ValidationInfo) -> float:
        """Ensure the interval is nondegenerate."""
        if v <= info.data.get("a", -1.0):
            raise ValueError("b must be greater than a")
        return v


class FileDensity(BaseModel):
    """Initial density read from a CSV file with columns x,u."""

    type: Literal["file"] = "file"
    path: str = Field(..., min_length=1)

    model_config = STRICT  # type: ignore[assignment]


class GaussianBump(BaseModel):
    """Initial field amplitude * exp(-(x - center)^2 / (2 width^2))."""

    type: Literal["gaussian-bump"] = "gaussian-bump"
    amplitude: float = 0.0
    center: float = 0.0
    width: float = Field(default=1.0, gt=0.0)

    model_config = STRICT  # type: ignore[assignment]


class ZeroField(BaseModel):
    type: Literal["zero"] = "zero"

    model_config = STRICT  # type: ignore[assignment]


class FileField(BaseModel):
    """Initial field read from a CSV file with columns x,v."""

    type: Literal["file"] = "file"
    path: str = Field(..., min_length=1)

    model_config = STRICT  # type: ignore[assignment]


DensitySpec = Annotated[
    Union[GaussianDensity, UniformDensity, FileDensity], Field(discriminator="type")
]
FieldSpec = Annotated[Union[GaussianBump, ZeroField, FileField], Field(discriminator="type")]


class SolverSettings(BaseModel):
    """Inner minimization settings of one JKO step."""

    max_outer_alternations: int = Field(default=DEFAULT_MAX_OUTER_ALTERNATIONS, ge=1)
    max_newton_iters: int = Field(default=DEFAULT_MAX_NEWTON_ITERS, ge=1)
    grad_tol: float = Field(default=DEFAULT_GRAD_TOL, gt=0.0)
    energy_decrease_tol: float = Field(default=DEFAULT_ENERGY_DECREASE_TOL, gt=0.0)
    backtracking: float = Field(default=DEFAULT_BACKTRACKING, gt=0.0, lt=1.0)
    armijo: float = Field(default=DEFAULT_ARMIJO, gt=0.0, lt=1.0)
    max_backtracks: int = Field(default=DEFAULT_MAX_BACKTRACKS, ge=1)
    stall_tol: float = Field(default=DEFAULT_STALL_TOL, gt=0.0)

    model_config = STRICT  # type: ignore[assignment]


class FdSettings(BaseModel):
    """Finite-difference oracle settings (used by compare)."""

    dt: float = Field(default=DEFAULT_FD_DT, gt=0.0)
    scheme: str = Field(default=DEFAULT_FD_SCHEME, pattern="^(central|upwind)$")
    record_every: int = Field(default=DEFAULT_FD_RECORD_EVERY, ge=1)

    model_config = STRICT  # type: ignore[assignment]


class EquilibriumSettings(BaseModel):
    tol: float = Field(default=DEFAULT_PICARD_TOL, gt=0.0)
    max_iters: int = Field(default=DEFAULT_PICARD_MAX_ITERS, ge=1)
    damping: float = Field(default=DEFAULT_PICARD_DAMPING, gt=0.0, le=1.0)

    model_config = STRICT  # type: ignore[assignment]


class OutputSettings(BaseModel):
    """Where and how much to write."""

    dir: str = Field(default=DEFAULT_OUTPUT_DIR, min_length=1)
    stride: int = Field(default=DEFAULT_STRIDE, ge=1)
    plots: bool = DEFAULT_PLOTS

    model_config = STRICT  # type: ignore[assignment]


class SweepSettings(BaseModel):
    chi: list[float] = Field(default_factory=lambda: DEFAULT_SWEEP_CHI.copy())
    threads: Optional[int] = Field(default=None, ge=1)
    max_threads: Optional[int] = Field(default=None, ge=1)

    model_config = STRICT  # type: ignore[assignment]

    @field_validator("chi")
    @classmethod
    def validate_chi_grid(cls, v: list[float]) -> list[float]:
        """Ensure the sweep has at least one point."""
        if not v:
            raise ValueError("At least one chi value required")
        return v


class DiagnosticsSettings(BaseModel):
    n_samples: int = Field(default=DEFAULT_INVARIANT_SAMPLES, ge=1)

    model_config = STRICT  # type: ignore[assignment]


class RunSpec(BaseModel):
    """Root configuration of a run: model, initial data, time stepping and output."""

    chi: float = 0.0
    kappa: float = Field(default=1.0, ge=0.0)
    lambda0: float = Field(default=1.0, gt=0.0)
    potential: Literal["quadratic", "table"] = DEFAULT_POTENTIAL  # type: ignore[assignment]
    potential_table: Optional[str] = None
    R: Optional[float] = Field(default=None, gt=0.0)
    n_cells: int = Field(default=DEFAULT_N_CELLS, ge=2)
    n_quantiles: int = Field(default=DEFAULT_N_QUANTILES, ge=2)
    tau: float = Field(default=1e-2, gt=0.0)
    T: float = Field(default=1.0, ge=0.0)
    seed: int = DEFAULT_SEED

    u0: DensitySpec = Field(default_factory=GaussianDensity)
    v0: FieldSpec = Field(default_factory=ZeroField)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    fd: FdSettings = Field(default_factory=FdSettings)
    equilibrium: EquilibriumSettings = Field(default_factory=EquilibriumSettings)
    diagnostics: DiagnosticsSettings = Field(default_factory=DiagnosticsSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)

    model_config = STRICT  # type: ignore[assignment]

    @model_validator(mode="after")
    def validate_potential_table(self) -> "RunSpec":
        """A tabulated potential needs its table file."""
        if self.potential == "table" and not self.potential_table:
            raise ValueError("potential 'table' requires potential_table")
        return self
