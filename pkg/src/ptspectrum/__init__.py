"""Eigenspectra, phase diagrams, and dynamics of N-channel PT-symmetric
coupled-mode systems with equal loss/gain."""

from .analytic import (
    DEFAULT_BOUNDARY_TOL,
    breaking_threshold,
    char_poly_eval,
    classify,
    spectrum_four_channel,
    spectrum_n_channel,
    spectrum_two_channel,
)
from .core import (
    Eigenvalue,
    Phase,
    Spectrum,
    SystemConfig,
    apply,
    build_pt_matrix,
    matrix_trace,
    sign_pattern,
)
from .dynamics import (
    DivergenceError,
    ModeState,
    Trajectory,
    default_timestep,
    evolve,
    growth_rate,
)
from .eigensolver import (
    NonConvergenceError,
    SolverSettings,
    cluster_multiplicities,
    determinant,
    eigenvalues,
    residual,
    spectral_distance,
)
from .kernels import BACKEND
from .phasemap import PhaseCell, boundary_curve, f_value, phase_grid

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_BOUNDARY_TOL",
    "DivergenceError",
    "Eigenvalue",
    "ModeState",
    "NonConvergenceError",
    "Phase",
    "PhaseCell",
    "SolverSettings",
    "Spectrum",
    "SystemConfig",
    "Trajectory",
    "apply",
    "boundary_curve",
    "breaking_threshold",
    "build_pt_matrix",
    "char_poly_eval",
    "classify",
    "cluster_multiplicities",
    "default_timestep",
    "determinant",
    "eigenvalues",
    "evolve",
    "f_value",
    "growth_rate",
    "matrix_trace",
    "phase_grid",
    "residual",
    "sign_pattern",
    "spectral_distance",
    "spectrum_four_channel",
    "spectrum_n_channel",
    "spectrum_two_channel",
]
