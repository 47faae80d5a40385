"""Lagrange interpolation error constants on simplices."""

from ._core import (
    GeometryReport,
    InvalidArgument,
    IoError,
    LagrangeBasis,
    NumericalError,
    Polynomial,
    Simplex,
    StudyConfig,
    __version__,
    box_integral,
    box_moment_sigma_min,
    diff_quotient,
    estimate_A,
    estimate_B,
    geometry_report,
    lattice_nodes,
    lp_norm,
    reference_simplex,
    run_study,
    seminorm,
    squeeze,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
