"""Core types and construction of N-channel PT-symmetric coupled-mode matrices.

An N-channel system with equal loss/gain couples every channel to every
other channel with one real constant ``kappa``.  Half of the channels gain
at rate ``gamma`` (+i*gamma on the diagonal), the other half lose at the
same rate (-i*gamma); the common frequency ``omega`` sits on the whole
diagonal.  The resulting matrix is complex symmetric, and its trace is
exactly N*omega because the imaginary parts cancel pairwise.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np
from numpy.typing import NDArray

ComplexMatrix = NDArray[np.complex128]
ComplexVector = NDArray[np.complex128]

PATTERNS = ("alternating", "blocked")


class Phase(str, enum.Enum):
    """Reality class of an eigenvalue.

    symmetric   : real to within the classification tolerance
    broken      : genuinely complex (exponential growth/decay in time)
    exceptional : at a coalescence of the non-degenerate pair
    """

    SYMMETRIC = "symmetric"
    BROKEN = "broken"
    EXCEPTIONAL = "exceptional"


def _as_finite_float(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SystemConfig:
    """Parameters of an N-channel PT-symmetric coupled-mode system.

    n       : even channel count, N >= 2
    omega   : common angular frequency (rad/time)
    kappa   : real coupling constant between every channel pair (rad/time)
    gamma   : loss/gain magnitude, >= 0 (rad/time)
    pattern : placement of the N/2 gain channels on the diagonal,
              "alternating" (+,-,+,-,...) or "blocked" (first half gain,
              second half loss)
    """

    n: int
    omega: float
    kappa: float
    gamma: float
    pattern: str = "alternating"

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.n < 2:
            raise ValueError(f"N must be >= 2 (got {self.n})")
        if self.n % 2 != 0:
            raise ValueError(f"N must be even (got {self.n})")
        for name in ("omega", "kappa", "gamma"):
            object.__setattr__(self, name, _as_finite_float(name, getattr(self, name)))
        if self.gamma < 0.0:
            raise ValueError("gamma must be >= 0; use the pattern to place gain and loss")
        if self.pattern not in PATTERNS:
            raise ValueError(f"pattern must be one of {PATTERNS}, got {self.pattern!r}")

    @classmethod
    def from_dict(cls, data: Mapping) -> "SystemConfig":
        """Build from a JSON-style mapping; "pattern" is optional."""
        allowed = {"n", "omega", "kappa", "gamma", "pattern"}
        extra = set(data) - allowed
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        missing = {"n", "omega", "kappa", "gamma"} - set(data)
        if missing:
            raise ValueError(f"missing config keys: {sorted(missing)}")
        return cls(
            n=data["n"],
            omega=data["omega"],
            kappa=data["kappa"],
            gamma=data["gamma"],
            pattern=data.get("pattern", "alternating"),
        )

    @classmethod
    def from_json(cls, text: str) -> "SystemConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON config: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError("config JSON must be an object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "omega": self.omega,
            "kappa": self.kappa,
            "gamma": self.gamma,
            "pattern": self.pattern,
        }


@dataclass(frozen=True)
class Eigenvalue:
    """One eigenvalue with its multiplicity and phase label."""

    value: complex
    multiplicity: int = 1
    phase: Phase = Phase.SYMMETRIC

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ValueError(f"eigenvalue must be finite, got {self.value!r}")
        if isinstance(self.multiplicity, bool) or not isinstance(self.multiplicity, (int, np.integer)):
            raise ValueError(f"multiplicity must be an integer, got {self.multiplicity!r}")
        object.__setattr__(self, "multiplicity", int(self.multiplicity))
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")
        object.__setattr__(self, "phase", Phase(self.phase))

    def sort_key(self) -> tuple[float, float]:
        return (self.value.real, self.value.imag)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues with multiplicities, sorted lexicographically by (Re, Im)."""

    eigenvalues: tuple[Eigenvalue, ...]
    total: int

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(self.eigenvalues))
        if not self.eigenvalues:
            raise ValueError("spectrum must contain at least one eigenvalue")
        keys = [e.sort_key() for e in self.eigenvalues]
        if any(b < a for a, b in zip(keys, keys[1:])):
            raise ValueError("eigenvalues must be sorted by (Re, Im)")
        if self.total != sum(e.multiplicity for e in self.eigenvalues):
            raise ValueError("total must equal the sum of multiplicities")

    @classmethod
    def from_entries(cls, entries: Iterable[Eigenvalue]) -> "Spectrum":
        """Sort entries and merge exact duplicates (same value and phase)."""
        merged: list[Eigenvalue] = []
        for e in sorted(entries, key=lambda e: e.sort_key()):
            if merged and merged[-1].value == e.value and merged[-1].phase == e.phase:
                prev = merged.pop()
                e = Eigenvalue(e.value, prev.multiplicity + e.multiplicity, e.phase)
            merged.append(e)
        return cls(tuple(merged), sum(e.multiplicity for e in merged))

    def values(self) -> ComplexVector:
        """All eigenvalues expanded by multiplicity, in sorted order."""
        out = np.empty(self.total, dtype=np.complex128)
        pos = 0
        for e in self.eigenvalues:
            out[pos:pos + e.multiplicity] = e.value
            pos += e.multiplicity
        return out

    def max_imag(self) -> float:
        return max(e.value.imag for e in self.eigenvalues)

    def phases(self) -> set[Phase]:
        return {e.phase for e in self.eigenvalues}


def sign_pattern(n: int, pattern: str = "alternating") -> NDArray[np.float64]:
    """+/-1 diagonal signs; +1 marks a gain channel (+i*gamma on the diagonal)."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"N must be even and >= 2 (got {n})")
    if pattern not in PATTERNS:
        raise ValueError(f"pattern must be one of {PATTERNS}, got {pattern!r}")
    signs = np.empty(n, dtype=np.float64)
    if pattern == "alternating":
        signs[0::2] = 1.0
        signs[1::2] = -1.0
    else:
        signs[: n // 2] = 1.0
        signs[n // 2:] = -1.0
    return signs


def build_pt_matrix(config: SystemConfig) -> ComplexMatrix:
    """Dense N x N coupling matrix: diagonal omega +/- i*gamma, all off-diagonals kappa."""
    n = config.n
    signs = sign_pattern(n, config.pattern)
    m = np.full((n, n), complex(config.kappa), dtype=np.complex128)
    idx = np.arange(n)
    m[idx, idx] = config.omega + 1j * config.gamma * signs
    return m


def matrix_trace(m: ComplexMatrix) -> complex:
    """Sum of diagonal entries, compensated so the +/-i*gamma parts cancel exactly."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    diag = np.diagonal(m).astype(np.complex128)
    return complex(math.fsum(diag.real), math.fsum(diag.imag))


def apply(m: ComplexMatrix, state: ComplexVector) -> ComplexVector:
    """Matrix-vector product m @ state with an explicit dimension check."""
    m = np.asarray(m, dtype=np.complex128)
    v = np.asarray(state, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if v.shape != (m.shape[0],):
        raise ValueError(f"state has shape {v.shape}, expected ({m.shape[0]},)")
    return m @ v
