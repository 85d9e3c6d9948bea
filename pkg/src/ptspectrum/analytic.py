"""Closed-form eigenspectra, characteristic polynomial, and phase classification.

For even N the characteristic polynomial of the coupling matrix factors
into two (N/2 - 1)-fold linear families and one quadratic:

    values  omega - kappa +/- i*gamma          multiplicity N/2 - 1 each
    values  omega + (N/2 - 1)*kappa +/- sqrt((N*kappa/2)^2 - gamma^2)

The degenerate families are PT-broken for any gamma > 0; the quadratic
pair is PT-symmetric while gamma < N*|kappa|/2 and PT-broken beyond, with
an exceptional point at the crossing.  Phase mixing therefore needs at
least four channels.
"""

from __future__ import annotations

import math

from .core import Eigenvalue, Phase, Spectrum, SystemConfig

# |Im| below boundary_tol * max(1, |value|) counts as real.
DEFAULT_BOUNDARY_TOL = 1e-9
# |discriminant| below this (relative to (N*kappa/2)^2) flags the
# quadratic pair as exceptional; exact-zero comparison is meaningless.
EXCEPTIONAL_DISC_TOL = 1e-12


def classify(value: complex, boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> Phase:
    """Label a single eigenvalue as symmetric (real) or broken (complex).

    The exceptional label is never produced here; only callers that know
    the discriminant is within tolerance of zero may assign it.
    """
    if not boundary_tol > 0.0:
        raise ValueError(f"boundary_tol must be > 0, got {boundary_tol!r}")
    v = complex(value)
    if abs(v.imag) <= boundary_tol * max(1.0, abs(v)):
        return Phase.SYMMETRIC
    return Phase.BROKEN


def breaking_threshold(n: int, kappa: float) -> float:
    """Loss/gain value gamma* = N*|kappa|/2 where the non-degenerate pair collides.

    Below gamma* that pair is PT-symmetric, above it PT-broken.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"n must be an integer, got {n!r}")
    if n < 2 or n % 2 != 0:
        raise ValueError(f"N must be even and >= 2 (got {n})")
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise ValueError(f"kappa must be finite, got {kappa!r}")
    return n * abs(kappa) / 2.0


def _pair_roots(center: float, disc: float) -> tuple[complex, complex]:
    """Roots center +/- sqrt(disc); the "+" branch takes +i*sqrt(-disc) when
    disc < 0 so the two roots are complex conjugates."""
    if disc >= 0.0:
        r = math.sqrt(disc)
        return complex(center + r, 0.0), complex(center - r, 0.0)
    r = math.sqrt(-disc)
    return complex(center, r), complex(center, -r)


def _quadratic_entries(center: float, disc: float, disc_scale: float,
                       boundary_tol: float) -> list[Eigenvalue]:
    """The two roots of the quadratic factor, labeled; merged when coincident."""
    plus, minus = _pair_roots(center, disc)
    exceptional = disc_scale > 0.0 and abs(disc) <= EXCEPTIONAL_DISC_TOL * disc_scale
    if exceptional:
        if plus == minus:
            return [Eigenvalue(plus, 2, Phase.EXCEPTIONAL)]
        return [Eigenvalue(plus, 1, Phase.EXCEPTIONAL),
                Eigenvalue(minus, 1, Phase.EXCEPTIONAL)]
    return [Eigenvalue(plus, 1, classify(plus, boundary_tol)),
            Eigenvalue(minus, 1, classify(minus, boundary_tol))]


def spectrum_two_channel(omega: float, kappa: float, gamma: float,
                         boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> Spectrum:
    """Two-channel spectrum omega +/- sqrt(kappa^2 - gamma^2)."""
    omega, kappa, gamma = float(omega), float(kappa), float(gamma)
    disc = kappa * kappa - gamma * gamma
    return Spectrum.from_entries(
        _quadratic_entries(omega, disc, kappa * kappa, boundary_tol)
    )


def spectrum_four_channel(omega: float, kappa: float, gamma: float,
                          boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> Spectrum:
    """Four-channel spectrum: omega - kappa +/- i*gamma plus
    omega + kappa +/- sqrt(4*kappa^2 - gamma^2).

    The first pair is PT-broken for any gamma > 0; the second pair is
    PT-symmetric exactly when 4*kappa^2 > gamma^2.
    """
    omega, kappa, gamma = float(omega), float(kappa), float(gamma)
    entries = [
        Eigenvalue(v, 1, classify(v, boundary_tol))
        for v in (complex(omega - kappa, gamma), complex(omega - kappa, -gamma))
    ]
    q = 2.0 * kappa
    disc = q * q - gamma * gamma
    entries += _quadratic_entries(omega + kappa, disc, q * q, boundary_tol)
    return Spectrum.from_entries(entries)


def spectrum_n_channel(config: SystemConfig,
                       boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> Spectrum:
    """Full N-channel spectrum with multiplicities.

    omega - kappa +/- i*gamma carry multiplicity N/2 - 1 each (omitted at
    N = 2 where that multiplicity vanishes); the remaining pair is
    omega + (N/2 - 1)*kappa +/- sqrt((N*kappa/2)^2 - gamma^2).
    """
    half = config.n // 2
    omega, kappa, gamma = config.omega, config.kappa, config.gamma
    entries = []
    if half - 1 > 0:
        for v in (complex(omega - kappa, gamma), complex(omega - kappa, -gamma)):
            entries.append(Eigenvalue(v, half - 1, classify(v, boundary_tol)))
    center = omega + (half - 1) * kappa
    q = half * kappa
    disc = q * q - gamma * gamma
    entries += _quadratic_entries(center, disc, q * q, boundary_tol)
    return Spectrum.from_entries(entries)


def char_poly_eval(config: SystemConfig, lam: complex) -> complex:
    """Evaluate the factored characteristic polynomial at lam.

    [lam - (w - k + ig)]^(N/2-1) * [lam - (w - k - ig)]^(N/2-1)
      * [lam^2 - 2*(w + (N/2-1)*k)*lam + (w + (N/2-1)*k)^2 + g^2 - (N*k/2)^2]

    Monic of degree N, so for even N it equals det(M - lam*I) exactly.
    """
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise ValueError(f"lam must be finite, got {lam!r}")
    half = config.n // 2
    omega, kappa, gamma = config.omega, config.kappa, config.gamma
    fam_plus = lam - complex(omega - kappa, gamma)
    fam_minus = lam - complex(omega - kappa, -gamma)
    families = (fam_plus * fam_minus) ** (half - 1)
    center = omega + (half - 1) * kappa
    q = half * kappa
    quad = lam * lam - 2.0 * center * lam + center * center + gamma * gamma - q * q
    return families * quad
