"""Fixtures shared by the formatter tests."""

import pytest

from ksjko.config.loader import validate_config
from ksjko.core.run_pipeline import RunPipeline


@pytest.fixture
def evolve_result(tiny_run_config):
    """Three-step decoupled run with its equilibrium."""
    return RunPipeline(validate_config(tiny_run_config)).run_evolve()


@pytest.fixture
def sample_summary():
    return {
        "command": "evolve",
        "steps": 3,
        "energy": {"H_initial": 1.5, "H_final": float("nan")},
        "checks": {"entropy_monotone": True},
        "run_spec": {"chi": 0.0},
    }
