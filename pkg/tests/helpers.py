"""Shared test oracles, independent of the library's solver paths."""

from __future__ import annotations

import numpy as np

from ptspectrum import SystemConfig


def generic_unit_state(n: int, seed: int) -> np.ndarray:
    """Seeded random unit state; overlaps every eigenvector family."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def eig_2x2_brute(m: np.ndarray) -> np.ndarray:
    """Quadratic-formula eigenvalues of a 2x2 matrix, no solver involved."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    t = 0.5 * (a + d)
    s = np.sqrt(complex(t * t - (a * d - b * c)))
    return np.array([t + s, t - s])


def two_channel_propagator(omega: float, kappa: float, gamma: float,
                           t: float) -> np.ndarray:
    """exp(-i M t) for the two-channel matrix in closed form.

    M = omega*I + B with B = [[i g, k], [k, -i g]] and B^2 = (k^2 - g^2) I,
    so the exponential reduces to cos/sinc of sqrt(k^2 - g^2) * t.  Works
    across the symmetric/broken boundary via the complex square root.
    """
    b = np.array([[1j * gamma, kappa], [kappa, -1j * gamma]], dtype=np.complex128)
    s = np.sqrt(complex(kappa * kappa - gamma * gamma))
    if s == 0:
        cos_term, sinc_term = 1.0 + 0.0j, complex(t)
    else:
        cos_term = np.cos(s * t)
        sinc_term = np.sin(s * t) / s
    return np.exp(-1j * omega * t) * (
        cos_term * np.eye(2, dtype=np.complex128) - 1j * sinc_term * b
    )


def random_config(rng: np.random.Generator, n: int) -> SystemConfig:
    """Parameter draw over the standard test ranges."""
    return SystemConfig(
        n=n,
        omega=float(rng.uniform(-5.0, 5.0)),
        kappa=float(rng.uniform(0.1, 5.0)),
        gamma=float(rng.uniform(0.0, 10.0)),
    )
