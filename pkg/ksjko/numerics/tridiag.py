"""Tridiagonal linear algebra on uniform grids.

Every implicit solve in the package (the v-block of a JKO step, the
equilibrium elliptic problem, both halves of the finite-difference
oracle) reduces to a tridiagonal system. They all go through
``scipy.linalg.solve_banded`` here.
"""

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from ksjko.core.errors import InvalidArgumentError

FloatArray = NDArray[np.float64]


def solve_tridiagonal(
    lower: FloatArray, diag: FloatArray, upper: FloatArray, rhs: FloatArray
) -> FloatArray:
    """Solve ``lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]``.

    ``lower[0]`` and ``upper[-1]`` are ignored.

    Args:
        lower: Sub-diagonal coefficients, same length as ``diag``
        diag: Diagonal coefficients
        upper: Super-diagonal coefficients, same length as ``diag``
        rhs: Right-hand side

    Returns:
        Solution vector
    """
    n = diag.shape[0]
    if lower.shape[0] != n or upper.shape[0] != n or rhs.shape[0] != n:
        raise InvalidArgumentError("tridiagonal coefficient arrays must have equal length")

    # banded storage: row 0 super, row 1 diagonal, row 2 sub
    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1, :] = diag
    ab[2, :-1] = lower[1:]
    return np.asarray(scipy.linalg.solve_banded((1, 1), ab, rhs), dtype=np.float64)


def neumann_second_difference(values: FloatArray, h: float) -> FloatArray:
    """Discrete second derivative with homogeneous Neumann closure.

    Interior nodes use the centered three-point stencil. The two end nodes
    use a ghost node mirrored across the boundary, giving ``2 (v_1 - v_0) / h^2``
    and ``2 (v_{n-1} - v_n) / h^2``.

    Args:
        values: Nodal values
        h: Grid spacing

    Returns:
        Array of second differences at every node
    """
    d2 = np.empty_like(values, dtype=np.float64)
    d2[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / h**2
    d2[0] = 2.0 * (values[1] - values[0]) / h**2
    d2[-1] = 2.0 * (values[-2] - values[-1]) / h**2
    return d2


def solve_shifted_neumann(shift: float, rhs: FloatArray, h: float) -> FloatArray:
    """Solve ``shift * v - D2 v = rhs`` with the Neumann second difference D2.

    Args:
        shift: Positive diagonal shift (``1/tau + kappa`` or ``kappa``)
        rhs: Nodal right-hand side
        h: Grid spacing

    Returns:
        Nodal solution v

    Raises:
        InvalidArgumentError: If shift is not positive (the system is singular)
    """
    if not shift > 0.0:
        raise InvalidArgumentError(f"shifted Neumann problem needs a positive shift, got {shift}")

    n = rhs.shape[0]
    inv_h2 = 1.0 / h**2
    diag = np.full(n, shift + 2.0 * inv_h2)
    lower = np.full(n, -inv_h2)
    upper = np.full(n, -inv_h2)
    upper[0] = -2.0 * inv_h2
    lower[-1] = -2.0 * inv_h2
    return solve_tridiagonal(lower, diag, upper, rhs)
