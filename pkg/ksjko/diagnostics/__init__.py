"""Decay fits, functional inequalities and cross-validation reports."""

from ksjko.diagnostics.certificate import ConvergenceCertificate, convergence_certificate
from ksjko.diagnostics.comparison import ComparisonReport, compare_trajectories
from ksjko.diagnostics.decay import DecayFit, default_fit_window, fit_decay_rate
from ksjko.diagnostics.inequalities import (
    CsiszarKullbackCheck,
    SandwichReport,
    csiszar_kullback_check,
    sandwich_check,
)
from ksjko.diagnostics.invariants import InvariantReport, run_invariant_suite
from ksjko.diagnostics.sampling import random_smooth_state

__all__ = [
    "ComparisonReport",
    "ConvergenceCertificate",
    "CsiszarKullbackCheck",
    "DecayFit",
    "InvariantReport",
    "SandwichReport",
    "compare_trajectories",
    "csiszar_kullback_check",
    "default_fit_window",
    "fit_decay_rate",
    "random_smooth_state",
    "run_invariant_suite",
    "sandwich_check",
    "convergence_certificate",
]
