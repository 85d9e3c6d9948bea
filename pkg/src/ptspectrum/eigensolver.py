"""Independent dense complex eigensolver: the numeric oracle for the closed forms.

Hessenberg reduction followed by shifted QR iteration with deflation (see
kernels.qr_eigvals), plus LU-based determinants, a one-step inverse
iteration residual check, and greedy multiplicity clustering.  Nothing
here calls the closed-form module; oracle independence is the point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .analytic import DEFAULT_BOUNDARY_TOL, classify
from .core import ComplexMatrix, ComplexVector, Eigenvalue, Spectrum

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class SolverSettings:
    """Knobs of the QR iteration.

    tol         : relative deflation/convergence tolerance
    max_iter    : per-eigenvalue sweep cap; None means 100 * N
    cluster_tol : absolute radius for multiplicity clustering
    """

    tol: float = 1e-12
    max_iter: Optional[int] = None
    cluster_tol: float = DEFAULT_CLUSTER_TOL

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol!r}")
        if self.max_iter is not None and self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if self.cluster_tol < self.tol:
            raise ValueError("cluster_tol must be >= tol")


class NonConvergenceError(RuntimeError):
    """QR iteration ran out of sweeps; carries the partial deflation count."""

    def __init__(self, deflated: int, total: int, max_iter: int):
        super().__init__(
            f"QR iteration did not converge within {max_iter} sweeps per "
            f"eigenvalue ({deflated} of {total} eigenvalues deflated)"
        )
        self.deflated = deflated
        self.total = total


def _as_square_complex(m) -> ComplexMatrix:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("matrix must be at least 1x1")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def _sort_lex(values: ComplexVector) -> ComplexVector:
    order = np.lexsort((values.imag, values.real))
    return values[order]


def eigenvalues(m, settings: SolverSettings = SolverSettings()) -> ComplexVector:
    """All N eigenvalues of a square complex matrix, sorted by (Re, Im)."""
    a = _as_square_complex(m).copy()
    n = a.shape[0]
    max_iter = settings.max_iter if settings.max_iter is not None else 100 * n
    vals, deflated, converged = kernels.qr_eigvals(a, settings.tol, max_iter)
    if not converged:
        raise NonConvergenceError(deflated, n, max_iter)
    return _sort_lex(vals)


def determinant(m) -> complex:
    """det(m) from LU with partial pivoting."""
    a = _as_square_complex(m).copy()
    n = a.shape[0]
    piv = np.zeros(n, dtype=np.int64)
    swaps, _singular = kernels.lu_factor_inplace(a, piv)
    det = complex(np.prod(np.diagonal(a)))
    return -det if swaps % 2 else det


def residual(m, lam: complex, seed: int = 42) -> float:
    """||M v - lam v|| / ||v|| for v from one inverse-iteration step.

    v solves (M - lam*I) v = b with a seeded random unit start b; an
    exactly singular shift is regularized by adding 1e-14 * ||M||_F to the
    diagonal.  A genuine eigenvalue yields a residual of order rounding.
    """
    a = _as_square_complex(m)
    n = a.shape[0]
    lam = complex(lam)
    fro = float(np.linalg.norm(a))
    bump = 1e-14 * fro if fro > 0.0 else 1e-14

    rng = np.random.default_rng(seed)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b /= np.linalg.norm(b)

    shifted = a - lam * np.eye(n, dtype=np.complex128)
    for attempt in range(2):
        lu = shifted.copy()
        if attempt == 1:
            lu[np.arange(n), np.arange(n)] += bump
        piv = np.zeros(n, dtype=np.int64)
        _swaps, singular = kernels.lu_factor_inplace(lu, piv)
        if singular:
            continue
        v = b.copy()
        kernels.lu_solve_inplace(lu, piv, v)
        vnorm = float(np.linalg.norm(v))
        if math.isfinite(vnorm) and vnorm > 0.0:
            return float(np.linalg.norm(a @ v - lam * v) / vnorm)
    # both factorizations degenerate: fall back to the start vector itself
    return float(np.linalg.norm(a @ b - lam * b))


def cluster_multiplicities(values: Sequence[complex] | ComplexVector,
                           cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    """Greedy clustering of near-coincident eigenvalues into multiplicities.

    Sorts by (Re, Im), chains consecutive values whose real parts agree
    within cluster_tol, then splits each chain on imaginary-part jumps
    beyond cluster_tol.  Each cluster becomes one entry with the centroid
    value and the cluster size as multiplicity.  Correct whenever distinct
    clusters are separated by more than cluster_tol in at least one
    component, as they are here (gaps of order kappa).
    """
    vals = np.asarray(values, dtype=np.complex128).ravel()
    if vals.size == 0:
        raise ValueError("values must be nonempty")
    if not cluster_tol > 0.0:
        raise ValueError(f"cluster_tol must be > 0, got {cluster_tol!r}")
    vals = _sort_lex(vals)

    entries = []
    start = 0
    for i in range(1, vals.size + 1):
        if i < vals.size and vals[i].real - vals[i - 1].real <= cluster_tol:
            continue
        run = vals[start:i]
        run = run[np.lexsort((run.real, run.imag))]  # order the run by (Im, Re)
        sub = 0
        for j in range(1, run.size + 1):
            if j < run.size and run[j].imag - run[j - 1].imag <= cluster_tol:
                continue
            cluster = run[sub:j]
            centroid = complex(cluster.mean())
            entries.append(
                Eigenvalue(centroid, cluster.size, classify(centroid, DEFAULT_BOUNDARY_TOL))
            )
            sub = j
        start = i
    return Spectrum.from_entries(entries)


def spectral_distance(a: Iterable[complex], b: Iterable[complex]) -> float:
    """Max distance over a greedy nearest-neighbor pairing of two eigenvalue sets.

    Plain positional comparison after lexicographic sorting is unstable
    inside multiplicity clusters (rounding jitter reorders +/- Im copies),
    so each value of ``a`` is matched to its nearest unused value of ``b``.
    """
    x = np.asarray(list(a), dtype=np.complex128).ravel()
    y = np.asarray(list(b), dtype=np.complex128).ravel()
    if x.size != y.size:
        raise ValueError(f"eigenvalue counts differ: {x.size} vs {y.size}")
    if x.size == 0:
        raise ValueError("eigenvalue sets must be nonempty")
    x = _sort_lex(x)
    remaining = y.copy()
    used = np.zeros(y.size, dtype=bool)
    worst = 0.0
    for z in x:
        dist = np.abs(remaining - z)
        dist[used] = np.inf
        j = int(np.argmin(dist))
        worst = max(worst, float(dist[j]))
        used[j] = True
    return worst
