"""Entropy functional, Lyapunov decomposition and dissipation integrals."""

from ksjko.energetics.dissipation import (
    FisherParts,
    dissipation_v,
    fisher_dissipation_parts,
    fisher_dissipation_u,
)
from ksjko.energetics.entropy import EnergyReport, entropy
from ksjko.energetics.lyapunov import LyapunovReport, equilibrium_entropy, lyapunov_parts
from ksjko.energetics.params import ModelParams, default_half_width
from ksjko.energetics.potential import (
    CoupledPotential,
    PotentialSpec,
    QuadraticPotential,
    TabulatedPotential,
    perturbed_potential,
)

__all__ = [
    "CoupledPotential",
    "EnergyReport",
    "FisherParts",
    "LyapunovReport",
    "ModelParams",
    "PotentialSpec",
    "QuadraticPotential",
    "TabulatedPotential",
    "default_half_width",
    "dissipation_v",
    "entropy",
    "equilibrium_entropy",
    "fisher_dissipation_parts",
    "fisher_dissipation_u",
    "lyapunov_parts",
    "perturbed_potential",
]
