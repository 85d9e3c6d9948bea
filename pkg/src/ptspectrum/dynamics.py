"""Time integration of the N-channel coupled-mode equations.

The amplitudes obey i * da/dt = M a with M from build_pt_matrix, so gain
channels (+i*gamma on the diagonal) grow.  Integration is classical
fourth-order Runge-Kutta at fixed step; the fitted slope of
log(total intensity) over the trajectory tail estimates twice the largest
imaginary eigenvalue part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from . import kernels
from .core import ComplexVector, SystemConfig, build_pt_matrix


class DivergenceError(RuntimeError):
    """Amplitudes became non-finite during integration (reduce dt)."""

    def __init__(self, step: int, dt: float):
        super().__init__(
            f"integration diverged at step {step} (dt={dt!r}); reduce the time step"
        )
        self.step = step


@dataclass(frozen=True, eq=False)
class ModeState:
    """Complex amplitudes of the N channels at one instant."""

    amplitudes: ComplexVector
    time: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError(f"amplitudes must be a nonempty 1-D vector, got shape {amps.shape}")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "time", float(self.time))

    def intensity(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded states at times t0 + k * dt * record_stride."""

    times: np.ndarray
    amplitudes: np.ndarray  # (samples, N)
    dt: float
    record_stride: int
    config: SystemConfig

    def __post_init__(self):
        if self.times.ndim != 1 or self.amplitudes.shape != (self.times.size, self.config.n):
            raise ValueError(
                f"amplitudes shape {self.amplitudes.shape} does not match "
                f"{self.times.size} samples of {self.config.n} channels"
            )
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("sample times must be strictly increasing")

    def __len__(self) -> int:
        return self.times.size

    def intensity(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def states(self) -> Iterator[ModeState]:
        for t, amps in zip(self.times, self.amplitudes):
            yield ModeState(amps, float(t))

    def to_csv(self, stream: IO[str]) -> None:
        """Columns t, re_a1, im_a1, ..., re_aN, im_aN, intensity."""
        n = self.config.n
        header = ["t"]
        for i in range(1, n + 1):
            header += [f"re_a{i}", f"im_a{i}"]
        header.append("intensity")
        stream.write(",".join(header) + "\n")
        intensity = self.intensity()
        for k in range(self.times.size):
            row = [repr(float(self.times[k]))]
            for i in range(n):
                row.append(repr(float(self.amplitudes[k, i].real)))
                row.append(repr(float(self.amplitudes[k, i].imag)))
            row.append(repr(float(intensity[k])))
            stream.write(",".join(row) + "\n")


def default_timestep(config: SystemConfig) -> float:
    """Step keeping ||dt * M|| of order 0.01 for RK4 stability and accuracy."""
    scale = abs(config.omega) + config.gamma + config.n * abs(config.kappa)
    return 0.01 / max(scale, 1.0)


def evolve(config: SystemConfig, initial: ModeState, dt: float, steps: int,
           record_stride: int = 1) -> Trajectory:
    """Integrate i * da/dt = M a from ``initial`` for ``steps`` RK4 steps.

    Every record_stride-th state is kept (plus the initial one).  Raises
    DivergenceError if the state leaves the finite range, which signals a
    too-large dt for the spectral radius at hand.
    """
    dt = float(dt)
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive and finite, got {dt!r}")
    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 1:
        raise ValueError(f"steps must be an integer >= 1, got {steps!r}")
    if (isinstance(record_stride, bool) or not isinstance(record_stride, (int, np.integer))
            or record_stride < 1):
        raise ValueError(f"record_stride must be an integer >= 1, got {record_stride!r}")
    amps = initial.amplitudes
    if amps.size != config.n:
        raise ValueError(f"initial state has {amps.size} amplitudes, config expects {config.n}")

    m = build_pt_matrix(config)
    records = int(steps) // int(record_stride) + 1
    out = np.empty((records, config.n), dtype=np.complex128)
    bad_step = kernels.rk4_record(m, amps.copy(), dt, int(steps), int(record_stride), out)
    if bad_step >= 0:
        raise DivergenceError(int(bad_step), dt)
    times = initial.time + dt * record_stride * np.arange(records, dtype=np.float64)
    return Trajectory(times=times, amplitudes=out, dt=dt,
                      record_stride=int(record_stride), config=config)


def growth_rate(traj: Trajectory, fit_window_fraction: float = 0.5) -> float:
    """Least-squares slope of log(total intensity) over the trajectory tail.

    For a generic initial state and max Im(eigenvalue) = mu > 0 this
    converges to 2*mu as the trajectory grows long; in a PT-symmetric
    regime it tends to zero.
    """
    frac = float(fit_window_fraction)
    if not (0.0 < frac <= 1.0):
        raise ValueError(f"fit_window_fraction must be in (0, 1], got {fit_window_fraction!r}")
    total = len(traj)
    window = max(int(round(total * frac)), 1)
    if window < 10:
        raise ValueError(f"fit window has {window} samples, need at least 10")
    t = traj.times[total - window:]
    intensity = traj.intensity()[total - window:]
    if not np.all(np.isfinite(intensity)) or np.any(intensity <= 0.0):
        raise ValueError("degenerate fit: total intensity underflowed or is not finite")
    slope = np.polyfit(t, np.log(intensity), 1)[0]
    return float(slope)
