"""Command-line interface: spectrum tables, phase-diagram emission, simulation.

Exit codes: 0 success, 2 invalid usage/config, 3 verification failure
(--verify deviation above --tol), 4 numerical failure (integration blew up).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic import breaking_threshold, spectrum_n_channel
from .core import Spectrum, SystemConfig, build_pt_matrix
from .dynamics import DivergenceError, ModeState, default_timestep, evolve, growth_rate
from .eigensolver import (
    NonConvergenceError,
    cluster_multiplicities,
    eigenvalues,
    residual,
    spectral_distance,
)
from .phasemap import boundary_curve, cells_to_json, grid_to_csv, phase_grid

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_NUMERIC = 4


@dataclass(frozen=True)
class RunReport:
    """Everything one spectrum run produced; feeds the table/json/csv emitters."""

    config: SystemConfig
    analytic: Spectrum
    threshold: float
    numeric: Optional[Spectrum] = None
    max_abs_diff: Optional[float] = None
    max_residual: Optional[float] = None

    def to_dict(self) -> dict:
        def entries(spec: Spectrum) -> list[dict]:
            return [
                {
                    "re": e.value.real,
                    "im": e.value.imag,
                    "multiplicity": e.multiplicity,
                    "phase": e.phase.value,
                }
                for e in spec.eigenvalues
            ]

        return {
            "config": self.config.to_dict(),
            "threshold": self.threshold,
            "analytic": entries(self.analytic),
            "numeric": entries(self.numeric) if self.numeric is not None else None,
            "max_abs_diff": self.max_abs_diff,
            "max_residual": self.max_residual,
        }


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ptspectrum-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _write_atomic(out, text)


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="JSON config file")
    parser.add_argument("--n", type=int, help="channel count (even, >= 2)")
    parser.add_argument("--omega", type=float, help="common angular frequency")
    parser.add_argument("--kappa", type=float, help="coupling constant")
    parser.add_argument("--gamma", type=float, help="loss/gain magnitude (>= 0)")
    parser.add_argument("--pattern", choices=("alternating", "blocked"),
                        help="gain/loss placement (default alternating)")


def _config_from_args(args: argparse.Namespace) -> SystemConfig:
    inline = [args.n, args.omega, args.kappa, args.gamma, args.pattern]
    if args.config is not None:
        if any(v is not None for v in inline):
            raise ValueError("pass either --config or inline flags, not both")
        with open(args.config, "r", encoding="utf-8") as fh:
            return SystemConfig.from_json(fh.read())
    if any(v is None for v in inline[:4]):
        raise ValueError("need --config or all of --n --omega --kappa --gamma")
    return SystemConfig(
        n=args.n,
        omega=args.omega,
        kappa=args.kappa,
        gamma=args.gamma,
        pattern=args.pattern or "alternating",
    )


def _fmt(x: float) -> str:
    """Shortest round-trip decimal form."""
    return repr(float(x))


def _spectrum_table(report: RunReport) -> str:
    cfg = report.config
    lines = [
        f"PT spectrum  n={cfg.n} omega={_fmt(cfg.omega)} kappa={_fmt(cfg.kappa)} "
        f"gamma={_fmt(cfg.gamma)} pattern={cfg.pattern}",
        f"{'re':>24} {'im':>24} {'mult':>5}  phase",
    ]
    for e in report.analytic.eigenvalues:
        lines.append(
            f"{e.value.real:>24.15g} {e.value.imag:>24.15g} {e.multiplicity:>5d}  {e.phase.value}"
        )
    lines.append(f"breaking threshold gamma* = {_fmt(report.threshold)}")
    if report.numeric is not None:
        lines.append("numeric oracle:")
        for e in report.numeric.eigenvalues:
            lines.append(
                f"{e.value.real:>24.15g} {e.value.imag:>24.15g} {e.multiplicity:>5d}  {e.phase.value}"
            )
        lines.append(f"max |analytic - numeric| = {_fmt(report.max_abs_diff)}")
        lines.append(f"max oracle residual      = {_fmt(report.max_residual)}")
    return "\n".join(lines) + "\n"


def _spectrum_csv(report: RunReport) -> str:
    rows = ["source,re,im,multiplicity,phase"]
    for e in report.analytic.eigenvalues:
        rows.append(
            f"analytic,{_fmt(e.value.real)},{_fmt(e.value.imag)},{e.multiplicity},{e.phase.value}"
        )
    if report.numeric is not None:
        for e in report.numeric.eigenvalues:
            rows.append(
                f"numeric,{_fmt(e.value.real)},{_fmt(e.value.imag)},{e.multiplicity},{e.phase.value}"
            )
    rows.append("")
    rows.append(f"threshold,{_fmt(report.threshold)}")
    if report.max_abs_diff is not None:
        rows.append(f"max_abs_diff,{_fmt(report.max_abs_diff)}")
        rows.append(f"max_residual,{_fmt(report.max_residual)}")
    return "\n".join(rows) + "\n"


def _cmd_spectrum(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    analytic = spectrum_n_channel(config)
    report = RunReport(
        config=config,
        analytic=analytic,
        threshold=breaking_threshold(config.n, config.kappa),
    )
    if args.verify:
        matrix = build_pt_matrix(config)
        numeric_vals = eigenvalues(matrix)
        numeric = cluster_multiplicities(numeric_vals)
        diff = spectral_distance(analytic.values(), numeric_vals)
        worst_res = max(residual(matrix, v, seed=args.seed) for v in numeric_vals)
        report = RunReport(
            config=config,
            analytic=analytic,
            threshold=report.threshold,
            numeric=numeric,
            max_abs_diff=diff,
            max_residual=worst_res,
        )

    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    elif args.format == "csv":
        text = _spectrum_csv(report)
    else:
        text = _spectrum_table(report)
    _emit(text, args.out)

    if args.verify and report.max_abs_diff > args.tol:
        print(
            f"verification failed: max |analytic - numeric| = {_fmt(report.max_abs_diff)} "
            f"> tol {_fmt(args.tol)}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_phase_diagram(args: argparse.Namespace) -> int:
    cells = phase_grid(args.n_min, args.n_max, args.gamma_min, args.gamma_max,
                       args.gamma_steps, args.kappa)
    boundary = boundary_curve(args.n_min, args.n_max, args.kappa)
    if args.format == "json":
        payload = {
            "grid": cells_to_json(cells),
            "boundary": [{"n": n, "gamma_star": g} for n, g in boundary],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        import io

        buf = io.StringIO()
        grid_to_csv(cells, buf)
        buf.write("\n")
        buf.write("n,gamma_star\n")
        for n, g in boundary:
            buf.write(f"{n},{_fmt(g)}\n")
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def _parse_initial(text: str, n: int) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"--initial has {len(parts)} amplitudes, config expects {n}")
    amps = np.empty(n, dtype=np.complex128)
    for i, part in enumerate(parts):
        try:
            re_s, im_s = part.split(":")
            amps[i] = complex(float(re_s), float(im_s))
        except ValueError as exc:
            raise ValueError(f"--initial entry {part!r} is not re:im") from exc
    return amps


def _generic_initial(n: int, seed: int) -> np.ndarray:
    """Reproducible pseudo-random unit state overlapping every mode family."""
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return amps / np.linalg.norm(amps)


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    if args.t_end <= 0:
        raise ValueError(f"--t-end must be > 0, got {args.t_end!r}")
    dt = args.dt if args.dt is not None else default_timestep(config)
    steps = max(int(round(args.t_end / dt)), 1)
    if args.initial is not None:
        amps = _parse_initial(args.initial, config.n)
    else:
        amps = _generic_initial(config.n, args.seed)
    traj = evolve(config, ModeState(amps), dt, steps, record_stride=args.record_stride)

    import io

    buf = io.StringIO()
    traj.to_csv(buf)
    _emit(buf.getvalue(), args.out)

    try:
        rate_text = _fmt(growth_rate(traj, args.fit_window))
    except ValueError as exc:
        rate_text = f"unavailable ({exc})"
    predicted = 2.0 * max(spectrum_n_channel(config).max_imag(), 0.0)
    summary = (
        f"fitted growth rate       = {rate_text}\n"
        f"predicted 2*max(Im lam)  = {_fmt(predicted)}\n"
    )
    # keep the summary out of the CSV stream when that goes to stdout
    sys.stderr.write(summary) if args.out is None else sys.stdout.write(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptspectrum",
        description="Eigenspectra, phase diagrams, and dynamics of N-channel "
                    "PT-symmetric coupled-mode systems with equal loss/gain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="closed-form spectrum, optionally verified")
    _add_config_args(p_spec)
    p_spec.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_spec.add_argument("--verify", action="store_true",
                        help="compare against the numeric eigensolver oracle")
    p_spec.add_argument("--tol", type=float, default=1e-8,
                        help="verification tolerance on max |analytic - numeric|")
    p_spec.add_argument("--seed", type=int, default=42,
                        help="seed for the oracle's inverse-iteration start")
    p_spec.add_argument("--out", metavar="FILE", help="write output atomically to FILE")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_phase = sub.add_parser("phase-diagram", help="(N, gamma) phase grid and boundary")
    p_phase.add_argument("--n-min", type=int, default=2)
    p_phase.add_argument("--n-max", type=int, default=20)
    p_phase.add_argument("--gamma-min", type=float, default=0.0)
    p_phase.add_argument("--gamma-max", type=float, default=10.0)
    p_phase.add_argument("--gamma-steps", type=int, default=101)
    p_phase.add_argument("--kappa", type=float, default=1.0)
    p_phase.add_argument("--format", choices=("csv", "json"), default="csv")
    p_phase.add_argument("--out", metavar="FILE", help="write output atomically to FILE")
    p_phase.set_defaults(func=_cmd_phase_diagram)

    p_sim = sub.add_parser("simulate", help="integrate the coupled-mode equations")
    _add_config_args(p_sim)
    p_sim.add_argument("--t-end", type=float, required=True, help="integration time span")
    p_sim.add_argument("--dt", type=float, help="time step (default scaled to the matrix norm)")
    p_sim.add_argument("--initial", metavar="RE:IM,...",
                       help="initial amplitudes; default is a reproducible "
                            "pseudo-random state drawn from --seed")
    p_sim.add_argument("--record-stride", type=int, default=1,
                       help="record every k-th step")
    p_sim.add_argument("--fit-window", type=float, default=0.5,
                       help="tail fraction used for the growth-rate fit")
    p_sim.add_argument("--seed", type=int, default=42)
    p_sim.add_argument("--out", metavar="FILE",
                       help="write the trajectory CSV atomically to FILE "
                            "(default: stdout, summary on stderr)")
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DivergenceError, NonConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
