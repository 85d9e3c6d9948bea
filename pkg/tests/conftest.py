import numpy as np
import pytest

from ptspectrum import (
    ModeState,
    SystemConfig,
    build_pt_matrix,
    determinant,
    eigenvalues,
    evolve,
    residual,
)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    """Trigger jit compilation once so timed tests measure compute only."""
    cfg = SystemConfig(n=4, omega=0.1, kappa=1.0, gamma=0.5)
    m = build_pt_matrix(cfg)
    eigenvalues(m)
    determinant(m)
    residual(m, 0.1 + 0.0j)
    evolve(cfg, ModeState(np.ones(4, dtype=np.complex128) / 2.0), 0.01, 5)
