"""Shifted boundary method solvers for Poisson and Stokes on unfitted grids."""

from ._sbm import (
    SbmError,
    audit,
    convergence_rate,
    discretize_trapezoid,
    format_sci,
    run,
    solve_poisson_trapezoid,
    verify,
)

__all__ = [
    "SbmError",
    "audit",
    "convergence_rate",
    "discretize_trapezoid",
    "format_sci",
    "run",
    "solve_poisson_trapezoid",
    "verify",
]
