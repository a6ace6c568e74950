"""Banded linear algebra."""

from ksjko.numerics.tridiag import (
    neumann_second_difference,
    solve_shifted_neumann,
    solve_tridiagonal,
)

__all__ = ["neumann_second_difference", "solve_shifted_neumann", "solve_tridiagonal"]
