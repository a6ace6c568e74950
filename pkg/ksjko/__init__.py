"""ksjko - minimizing-movement solver for the 1D Keller-Segel system.

Quantile-based JKO time stepping, equilibrium computation, a
finite-difference oracle and convergence diagnostics.
"""

__version__ = "0.1.0"
__author__ = "Kiet Nguyen"
__email__ = "kietnguyen@vulcanlabs.co"
