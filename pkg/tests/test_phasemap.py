import io

import numpy as np
import pytest

from ptspectrum import (
    Phase,
    SystemConfig,
    boundary_curve,
    breaking_threshold,
    build_pt_matrix,
    classify,
    eigenvalues,
    f_value,
    phase_grid,
    spectrum_n_channel,
)
from ptspectrum.phasemap import cells_to_json, grid_to_csv


class TestFValue:
    def test_boundary(self):
        assert f_value(4, 2.0) == 0.0

    def test_symmetric_side(self):
        assert f_value(6, 2.0) == 5.0

    def test_broken_side(self):
        assert f_value(2, 2.0) == -3.0

    def test_rejects_odd_and_negative(self):
        with pytest.raises(ValueError):
            f_value(3, 1.0)
        with pytest.raises(ValueError):
            f_value(4, -1.0)


class TestPhaseGrid:
    def test_example_cells(self):
        cells = {
            (c.n, c.gamma): c
            for c in phase_grid(4, 8, 0.0, 3.0, 4, kappa=1.0)
        }
        assert cells[(4, 3.0)].f == -5.0
        assert cells[(4, 3.0)].phase is Phase.BROKEN
        assert cells[(8, 3.0)].f == 7.0
        assert cells[(8, 3.0)].phase is Phase.SYMMETRIC

    def test_zero_gamma_always_symmetric(self):
        for cell in phase_grid(2, 20, 0.0, 5.0, 6, kappa=0.7):
            if cell.gamma == 0.0:
                assert cell.phase is Phase.SYMMETRIC

    def test_gamma_samples_include_endpoints(self):
        cells = phase_grid(4, 4, 1.0, 3.0, 5, kappa=1.0)
        assert [c.gamma for c in cells] == [1.0, 1.5, 2.0, 2.5, 3.0]

    def test_exceptional_band_on_boundary(self):
        cells = phase_grid(4, 4, 0.0, 4.0, 5, kappa=1.0)
        assert [c.phase for c in cells] == [
            Phase.SYMMETRIC,
            Phase.SYMMETRIC,
            Phase.EXCEPTIONAL,
            Phase.BROKEN,
            Phase.BROKEN,
        ]

    def test_coupling_sign_is_irrelevant(self):
        plus = phase_grid(2, 12, 0.0, 6.0, 13, kappa=1.5)
        minus = phase_grid(2, 12, 0.0, 6.0, 13, kappa=-1.5)
        assert [(c.f, c.phase) for c in plus] == [(c.f, c.phase) for c in minus]

    def test_monotone_robustness_in_channel_count(self):
        # once symmetric at some N, larger N stays symmetric for the same gamma
        cells = phase_grid(2, 20, 0.0, 10.0, 21, kappa=1.0)
        by_gamma = {}
        for c in cells:
            by_gamma.setdefault(c.gamma, {})[c.n] = c.phase
        for gamma, row in by_gamma.items():
            for n in range(2, 19, 2):
                if row[n] is Phase.SYMMETRIC:
                    assert row[n + 2] is Phase.SYMMETRIC

    @staticmethod
    def _pair_targets(cfg):
        # where the non-degenerate roots sit, from the quadratic factor
        half = cfg.n // 2
        center = cfg.omega + (half - 1) * cfg.kappa
        root = np.sqrt(complex((half * cfg.kappa) ** 2 - cfg.gamma**2))
        return center + root, center - root

    def test_sign_agrees_with_spectrum_classification(self):
        rng = np.random.default_rng(6)
        cells = phase_grid(2, 20, 0.0, 10.0, 26, kappa=1.0)
        picks = set(rng.choice(len(cells), size=10, replace=False).tolist())
        for i, cell in enumerate(cells):
            cfg = SystemConfig(n=cell.n, omega=0.0, kappa=1.0, gamma=cell.gamma)
            spec = spectrum_n_channel(cfg)
            pair = {
                min(spec.eigenvalues, key=lambda e: abs(e.value - t))
                for t in self._pair_targets(cfg)
            }
            assert {e.phase for e in pair} == {cell.phase}, cell
            if i in picks and cell.phase is not Phase.EXCEPTIONAL:
                vals = eigenvalues(build_pt_matrix(cfg))
                near = [min(vals, key=lambda v: abs(v - t)) for t in self._pair_targets(cfg)]
                assert {classify(v) for v in near} == {cell.phase}, cell

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValueError):
            phase_grid(3, 8, 0.0, 1.0, 5, 1.0)
        with pytest.raises(ValueError):
            phase_grid(8, 4, 0.0, 1.0, 5, 1.0)
        with pytest.raises(ValueError):
            phase_grid(2, 8, 2.0, 1.0, 5, 1.0)
        with pytest.raises(ValueError):
            phase_grid(2, 8, 0.0, 1.0, 1, 1.0)


class TestBoundaryCurve:
    def test_known_points(self):
        assert boundary_curve(2, 8, 1.0) == [(2, 1.0), (4, 2.0), (6, 3.0), (8, 4.0)]

    def test_single_point_with_half_coupling(self):
        assert boundary_curve(4, 4, 0.5) == [(4, 1.0)]

    def test_matches_breaking_threshold(self):
        for n, gamma_star in boundary_curve(2, 20, 1.3):
            assert gamma_star == breaking_threshold(n, 1.3)

    def test_phase_flips_across_each_point(self):
        for n, gamma_star in boundary_curve(2, 20, 1.0):
            below = spectrum_n_channel(
                SystemConfig(n=n, omega=0.0, kappa=1.0, gamma=gamma_star - 1e-6)
            )
            above = spectrum_n_channel(
                SystemConfig(n=n, omega=0.0, kappa=1.0, gamma=gamma_star + 1e-6)
            )
            assert Phase.SYMMETRIC in below.phases()
            below_pair = [e for e in below.eigenvalues if e.phase is Phase.SYMMETRIC]
            assert len(below_pair) == 2
            above_pair = [e for e in above.eigenvalues if e.multiplicity == 1]
            assert all(e.phase is Phase.BROKEN for e in above_pair)

    def test_strictly_increasing_in_n(self):
        stars = [g for _n, g in boundary_curve(2, 20, 1.0)]
        assert all(b > a for a, b in zip(stars, stars[1:]))


class TestEmitters:
    def test_csv_schema(self):
        cells = phase_grid(4, 4, 0.0, 4.0, 5, kappa=1.0)
        buf = io.StringIO()
        grid_to_csv(cells, buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "n,gamma,f,phase"
        assert lines[1] == "4,0.0,4.0,symmetric"
        assert lines[3] == "4,2.0,0.0,exceptional"
        assert len(lines) == 6

    def test_json_matches_csv_values(self):
        cells = phase_grid(2, 6, 0.0, 5.0, 7, kappa=1.0)
        buf = io.StringIO()
        grid_to_csv(cells, buf)
        csv_rows = [line.split(",") for line in buf.getvalue().strip().split("\n")[1:]]
        json_rows = cells_to_json(cells)
        assert len(csv_rows) == len(json_rows)
        for csv_row, json_row in zip(csv_rows, json_rows):
            assert int(csv_row[0]) == json_row["n"]
            assert float(csv_row[1]) == json_row["gamma"]
            assert float(csv_row[2]) == json_row["f"]
            assert csv_row[3] == json_row["phase"]

    def test_deterministic_bytes(self):
        def emit():
            buf = io.StringIO()
            grid_to_csv(phase_grid(2, 20, 0.0, 10.0, 101, kappa=1.0), buf)
            return buf.getvalue()

        assert emit() == emit()
