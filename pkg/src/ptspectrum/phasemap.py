"""Phase diagram over (N, gamma): the sign of f = (N*kappa/2)^2 - gamma^2.

f > 0 puts the non-degenerate eigenvalue pair in the PT-symmetric phase,
f < 0 in the PT-broken phase; the boundary gamma* = N*|kappa|/2 is the
line of exceptional points.  The degenerate families (broken for any
gamma > 0) are deliberately not part of the cell label: the diagram
describes only the pair that actually changes phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .core import Phase

# |f| below this fraction of (N*kappa/2)^2 is the exceptional band,
# mirroring the discriminant tolerance of the closed-form module.
BOUNDARY_BAND_TOL = 1e-9


@dataclass(frozen=True)
class PhaseCell:
    """One (N, gamma) sample of the phase diagram."""

    n: int
    gamma: float
    f: float
    phase: Phase


def _check_even(name: str, n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 2 or n % 2 != 0:
        raise ValueError(f"{name} must be even and >= 2 (got {n})")
    return n


def f_value(n: int, gamma: float) -> float:
    """(N/2)^2 - gamma^2 at unit coupling; positive means PT-symmetric pair."""
    n = _check_even("n", n)
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma < 0.0:
        raise ValueError(f"gamma must be finite and >= 0, got {gamma!r}")
    half = n / 2.0
    return half * half - gamma * gamma


def _cell(n: int, gamma: float, kappa: float) -> PhaseCell:
    q = n * kappa / 2.0
    f = q * q - gamma * gamma
    band = BOUNDARY_BAND_TOL * q * q
    if abs(f) <= band:
        phase = Phase.EXCEPTIONAL
    elif f > 0.0:
        phase = Phase.SYMMETRIC
    else:
        phase = Phase.BROKEN
    return PhaseCell(n=n, gamma=gamma, f=f, phase=phase)


def phase_grid(n_min: int, n_max: int, gamma_min: float, gamma_max: float,
               gamma_steps: int, kappa: float) -> list[PhaseCell]:
    """Cells for every even N in [n_min, n_max] and gamma_steps uniform
    gamma samples in [gamma_min, gamma_max], endpoints included."""
    n_min = _check_even("n_min", n_min)
    n_max = _check_even("n_max", n_max)
    if n_min > n_max:
        raise ValueError(f"n_min {n_min} exceeds n_max {n_max}")
    gamma_min, gamma_max = float(gamma_min), float(gamma_max)
    if not (math.isfinite(gamma_min) and math.isfinite(gamma_max)):
        raise ValueError("gamma range must be finite")
    if gamma_min < 0.0 or gamma_min > gamma_max:
        raise ValueError(f"need 0 <= gamma_min <= gamma_max, got [{gamma_min}, {gamma_max}]")
    if isinstance(gamma_steps, bool) or not isinstance(gamma_steps, (int, np.integer)) or gamma_steps < 2:
        raise ValueError(f"gamma_steps must be an integer >= 2, got {gamma_steps!r}")
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise ValueError(f"kappa must be finite, got {kappa!r}")

    gammas = np.linspace(gamma_min, gamma_max, int(gamma_steps))
    return [
        _cell(n, float(g), kappa)
        for n in range(n_min, n_max + 1, 2)
        for g in gammas
    ]


def boundary_curve(n_min: int, n_max: int, kappa: float) -> list[tuple[int, float]]:
    """(N, gamma*) along the symmetric/broken boundary, gamma* = N*|kappa|/2."""
    n_min = _check_even("n_min", n_min)
    n_max = _check_even("n_max", n_max)
    if n_min > n_max:
        raise ValueError(f"n_min {n_min} exceeds n_max {n_max}")
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise ValueError(f"kappa must be finite, got {kappa!r}")
    return [(n, n * abs(kappa) / 2.0) for n in range(n_min, n_max + 1, 2)]


def grid_to_csv(cells: Sequence[PhaseCell], stream: IO[str]) -> None:
    """One row per cell: n,gamma,f,phase."""
    stream.write("n,gamma,f,phase\n")
    for cell in cells:
        stream.write(
            f"{cell.n},{repr(float(cell.gamma))},{repr(float(cell.f))},{cell.phase.value}\n"
        )


def cells_to_json(cells: Sequence[PhaseCell]) -> list[dict]:
    return [
        {"n": cell.n, "gamma": cell.gamma, "f": cell.f, "phase": cell.phase.value}
        for cell in cells
    ]
