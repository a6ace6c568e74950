"""Shared numerical fixtures.

Resolutions are kept small so the whole suite runs in seconds; the
acceptance-scale runs go through the CLI.
"""

import json
from pathlib import Path

import pytest

from ksjko.energetics.params import ModelParams
from ksjko.equilibrium.picard import solve_equilibrium
from ksjko.solver.config import InnerSolverConfig
from ksjko.transport.grid import EulerianField, build_uniform_grid


@pytest.fixture(scope="session")
def solver_cfg() -> InnerSolverConfig:
    """Default inner solver settings."""
    return InnerSolverConfig()


@pytest.fixture(scope="session")
def ou_params() -> ModelParams:
    """Decoupled model: chi = 0, kappa = lambda0 = 1 on [-10, 10]."""
    return ModelParams.quadratic(chi=0.0, kappa=1.0, lambda0=1.0, n_cells=200, n_quantiles=100)


@pytest.fixture(scope="session")
def coupled_params() -> ModelParams:
    """Weakly coupled model: chi = 0.1, kappa = lambda0 = 1 on [-10, 10]."""
    return ModelParams.quadratic(chi=0.1, kappa=1.0, lambda0=1.0, n_cells=200, n_quantiles=100)


@pytest.fixture(scope="session")
def ou_equilibrium(ou_params, solver_cfg):
    """Equilibrium of the decoupled model (standard normal, v = 0)."""
    return solve_equilibrium(ou_params, cfg=solver_cfg)


@pytest.fixture(scope="session")
def coupled_equilibrium(coupled_params, solver_cfg):
    """Equilibrium of the weakly coupled model."""
    return solve_equilibrium(coupled_params, cfg=solver_cfg)


@pytest.fixture
def small_grid():
    """Grid on [-5, 5] with unit spacing."""
    return build_uniform_grid(5.0, 10)


@pytest.fixture
def zero_field(ou_params) -> EulerianField:
    return EulerianField.zeros(ou_params.grid)


@pytest.fixture
def write_config(tmp_path):
    """Write a run config to a temporary JSON file and return its path."""

    def _write(data: dict, name: str = "run.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return _write


@pytest.fixture
def tiny_run_config() -> dict:
    """A run small enough for CLI and pipeline tests."""
    return {
        "chi": 0.0,
        "kappa": 1.0,
        "lambda0": 1.0,
        "n_cells": 200,
        "n_quantiles": 60,
        "tau": 0.05,
        "T": 0.15,
        "u0": {"type": "gaussian", "mean": 1.0, "variance": 1.0},
        "diagnostics": {"n_samples": 3},
        "output": {"stride": 1, "plots": True},
    }
