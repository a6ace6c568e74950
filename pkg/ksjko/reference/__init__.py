"""Finite-difference oracle for cross-validation."""

from ksjko.reference.fd import FdConfig, FdTrajectory, check_cfl, fd_evolve, fd_step

__all__ = ["FdConfig", "FdTrajectory", "check_cfl", "fd_evolve", "fd_step"]
