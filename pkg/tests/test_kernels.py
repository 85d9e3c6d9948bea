import os
import subprocess
import sys

import numpy as np
import pytest

from ptspectrum import SystemConfig, build_pt_matrix, kernels

needs_jit = pytest.mark.skipif(
    kernels.BACKEND != "numba", reason="jit backend not active"
)


def _pt(n=8, omega=0.2, kappa=0.7, gamma=1.3):
    return build_pt_matrix(SystemConfig(n=n, omega=omega, kappa=kappa, gamma=gamma))


def _sorted(vals):
    return vals[np.lexsort((vals.imag, vals.real))]


class TestBackendSelection:
    def test_backend_reported(self):
        assert kernels.BACKEND in ("numba", "numpy")
        assert kernels.jit_enabled() == (kernels.BACKEND == "numba")

    def test_env_flag_forces_numpy_path(self):
        code = (
            "import ptspectrum.kernels as k\n"
            "import numpy as np\n"
            "from ptspectrum import SystemConfig, build_pt_matrix, eigenvalues, spectrum_n_channel, spectral_distance\n"
            "cfg = SystemConfig(n=6, omega=0.3, kappa=1.1, gamma=2.0)\n"
            "d = spectral_distance(spectrum_n_channel(cfg).values(), eigenvalues(build_pt_matrix(cfg)))\n"
            "print(k.BACKEND, d)\n"
        )
        env = dict(os.environ, PTSPECTRUM_NUMBA="0")
        proc = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        assert proc.returncode == 0, proc.stderr
        backend, dist = proc.stdout.split()
        assert backend == "numpy"
        assert float(dist) <= 1e-10


@needs_jit
class TestJitMatchesPythonPath:
    def test_qr_eigvals(self):
        m = _pt()
        v_jit, d_jit, ok_jit = kernels.qr_eigvals(m.copy(), 1e-12, 800)
        v_py, d_py, ok_py = kernels.qr_eigvals.py_func(m.copy(), 1e-12, 800)
        assert ok_jit and ok_py and d_jit == d_py == 8
        np.testing.assert_allclose(_sorted(v_jit), _sorted(v_py), atol=1e-12)

    def test_hessenberg(self):
        # the reduced form is only unique up to rounding-dependent reflector
        # choices, so compare structure and spectrum rather than raw entries
        rng = np.random.default_rng(12)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        h_jit = m.copy()
        h_py = m.copy()
        kernels.hessenberg_inplace(h_jit)
        kernels.hessenberg_inplace.py_func(h_py)
        assert np.max(np.abs(np.tril(h_jit, -2))) == 0.0
        assert np.max(np.abs(np.tril(h_py, -2))) == 0.0
        ref = np.sort_complex(np.linalg.eigvals(m))
        np.testing.assert_allclose(np.sort_complex(np.linalg.eigvals(h_jit)), ref, atol=1e-10)
        np.testing.assert_allclose(np.sort_complex(np.linalg.eigvals(h_py)), ref, atol=1e-10)

    def test_lu(self):
        m = _pt(n=5 * 2)
        a_jit, a_py = m.copy(), m.copy()
        piv_jit = np.zeros(10, dtype=np.int64)
        piv_py = np.zeros(10, dtype=np.int64)
        s_jit = kernels.lu_factor_inplace(a_jit, piv_jit)
        s_py = kernels.lu_factor_inplace.py_func(a_py, piv_py)
        assert s_jit == s_py
        np.testing.assert_array_equal(piv_jit, piv_py)
        np.testing.assert_allclose(a_jit, a_py, atol=1e-14)
        b_jit = np.arange(1, 11, dtype=np.complex128)
        b_py = b_jit.copy()
        kernels.lu_solve_inplace(a_jit, piv_jit, b_jit)
        kernels.lu_solve_inplace.py_func(a_py, piv_py, b_py)
        np.testing.assert_allclose(b_jit, b_py, atol=1e-12)

    def test_rk4(self):
        m = _pt(n=4, gamma=0.8)
        y0 = (np.arange(1, 5) + 0.5j * np.arange(4)).astype(np.complex128)
        out_jit = np.empty((11, 4), dtype=np.complex128)
        out_py = np.empty((11, 4), dtype=np.complex128)
        s_jit = kernels.rk4_record(m, y0.copy(), 0.01, 100, 10, out_jit)
        s_py = kernels.rk4_record.py_func(m, y0.copy(), 0.01, 100, 10, out_py)
        assert s_jit == s_py == -1
        np.testing.assert_allclose(out_jit, out_py, atol=1e-13)


class TestKernelBehavior:
    def test_rk4_reports_divergence_step(self):
        m = _pt(n=2, omega=0.0, kappa=1.0, gamma=50.0)
        out = np.empty((101, 2), dtype=np.complex128)
        y0 = np.ones(2, dtype=np.complex128)
        with np.errstate(over="ignore", invalid="ignore"):
            step = kernels.rk4_record(m, y0, 10.0, 100, 1, out)
        assert step > 0

    def test_lu_flags_singular(self):
        a = np.zeros((3, 3), dtype=np.complex128)
        piv = np.zeros(3, dtype=np.int64)
        _swaps, singular = kernels.lu_factor_inplace(a, piv)
        assert singular
