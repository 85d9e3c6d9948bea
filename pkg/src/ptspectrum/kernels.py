"""Numeric hot loops: Hessenberg/QR eigenvalue iteration, LU, and RK4 stepping.

Kernels are compiled with numba's @njit when available.  Set the
environment variable ``PTSPECTRUM_NUMBA=0`` (or ``off``/``numpy``) before
import to force the pure numpy/Python path instead; the module attribute
``BACKEND`` reports which path is active.  Both paths run the same source,
so results agree to rounding (see tests/test_kernels.py and
benchmarks/bench_kernels.py).

Status conventions: kernels return flags instead of raising, since raising
rich exceptions from compiled code is awkward.  Callers translate.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE_VALUES = ("0", "false", "off", "no", "numpy")


def _select_backend() -> str:
    flag = os.environ.get("PTSPECTRUM_NUMBA", "auto").strip().lower()
    if flag in _DISABLE_VALUES:
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _select_backend()

if BACKEND == "numba":
    from numba import njit

    def _jit(fn):
        return njit(cache=True)(fn)
else:

    def _jit(fn):
        return fn


def jit_enabled() -> bool:
    return BACKEND == "numba"


@_jit
def hessenberg_inplace(h):
    """Reduce a square complex matrix to upper Hessenberg form by Householder
    reflectors (similarity transform, eigenvalues preserved)."""
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        xnorm = np.sqrt(np.sum(np.abs(x) ** 2))
        if xnorm == 0.0:
            continue
        if np.abs(x[0]) > 0.0:
            alpha = -(x[0] / np.abs(x[0])) * xnorm
        else:
            alpha = -xnorm + 0.0j
        v = x.copy()
        v[0] -= alpha
        vnorm = np.sqrt(np.sum(np.abs(v) ** 2))
        if vnorm == 0.0:
            continue
        v = v / vnorm
        vc = np.conj(v)
        # left: rows k+1.., columns k..
        sub = h[k + 1:, k:]
        w = np.sum(vc.reshape(-1, 1) * sub, axis=0)
        sub -= 2.0 * v.reshape(-1, 1) * w.reshape(1, -1)
        # right: all rows, columns k+1..
        sub2 = h[:, k + 1:]
        w2 = np.sum(sub2 * v.reshape(1, -1), axis=1)
        sub2 -= 2.0 * w2.reshape(-1, 1) * vc.reshape(1, -1)
        h[k + 1, k] = alpha
        h[k + 2:, k] = 0.0


@_jit
def _eig_2x2(a, b, c, d):
    """Eigenvalues of [[a, b], [c, d]]: (larger |.| root, stable small root)."""
    t = 0.5 * (a + d)
    det = a * d - b * c
    s = np.sqrt(t * t - det)
    if np.abs(t + s) >= np.abs(t - s):
        big = t + s
    else:
        big = t - s
    if np.abs(big) > 0.0:
        small = det / big
    else:
        small = big
    return big, small


@_jit
def qr_eigvals(h, tol, max_iter):
    """All eigenvalues of a square complex matrix.

    Hessenberg reduction, then explicitly shifted QR sweeps (Wilkinson
    shift from the trailing 2x2 of the active block, Givens rotations)
    with deflation when a subdiagonal entry drops below
    tol * (|h[k,k]| + |h[k+1,k+1]|).  max_iter caps the sweeps spent on
    any single eigenvalue.

    Returns (values, deflated_count, converged); values is unsorted.
    """
    n = h.shape[0]
    vals = np.zeros(n, dtype=np.complex128)
    if n == 1:
        vals[0] = h[0, 0]
        return vals, 1, True
    hessenberg_inplace(h)
    hnorm = np.sqrt(np.sum(np.abs(h) ** 2))
    if hnorm == 0.0:
        return vals, n, True
    deflated = 0
    hi = n - 1
    while hi >= 0:
        if hi == 0:
            vals[0] = h[0, 0]
            deflated += 1
            break
        it = 0
        converged = False
        while it < max_iter:
            # zero the first negligible subdiagonal scanning up from hi
            lo = hi
            while lo > 0:
                thresh = tol * (np.abs(h[lo - 1, lo - 1]) + np.abs(h[lo, lo]))
                if thresh == 0.0:
                    thresh = tol * hnorm
                if np.abs(h[lo, lo - 1]) <= thresh:
                    h[lo, lo - 1] = 0.0
                    break
                lo -= 1
            if lo == hi:
                vals[hi] = h[hi, hi]
                deflated += 1
                hi -= 1
                converged = True
                break
            if lo == hi - 1:
                big, small = _eig_2x2(
                    h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi]
                )
                vals[hi] = big
                vals[hi - 1] = small
                deflated += 2
                hi -= 2
                converged = True
                break
            big, small = _eig_2x2(
                h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi]
            )
            if np.abs(big - h[hi, hi]) < np.abs(small - h[hi, hi]):
                shift = big
            else:
                shift = small
            if (it + 1) % 20 == 0:
                # exceptional shift breaks the rare non-converging cycle
                shift = h[hi, hi] + 0.75 * np.abs(h[hi, hi - 1])
            m = hi - lo + 1
            cs = np.zeros(m - 1, dtype=np.float64)
            sn = np.zeros(m - 1, dtype=np.complex128)
            for j in range(lo, hi + 1):
                h[j, j] -= shift
            for j in range(lo, hi):
                x = h[j, j]
                y = h[j + 1, j]
                ax = np.abs(x)
                ay = np.abs(y)
                if ay == 0.0:
                    c = 1.0
                    s = 0.0 + 0.0j
                elif ax == 0.0:
                    c = 0.0
                    s = np.conj(y) / ay
                else:
                    r = np.sqrt(ax * ax + ay * ay)
                    c = ax / r
                    s = (x / ax) * np.conj(y) / r
                cs[j - lo] = c
                sn[j - lo] = s
                row0 = h[j, j:hi + 1]
                row1 = h[j + 1, j:hi + 1]
                t0 = c * row0 + s * row1
                t1 = c * row1 - np.conj(s) * row0
                row0[:] = t0
                row1[:] = t1
            for j in range(lo, hi):
                c = cs[j - lo]
                s = sn[j - lo]
                top = min(j + 2, hi + 1)
                col0 = h[lo:top, j]
                col1 = h[lo:top, j + 1]
                t0 = c * col0 + np.conj(s) * col1
                t1 = c * col1 - s * col0
                col0[:] = t0
                col1[:] = t1
            for j in range(lo, hi + 1):
                h[j, j] += shift
            it += 1
        if not converged:
            return vals, deflated, False
    return vals, deflated, True


@_jit
def lu_factor_inplace(a, piv):
    """LU with partial pivoting, in place; returns (row_swaps, singular)."""
    n = a.shape[0]
    swaps = 0
    singular = False
    for k in range(n):
        p = k + np.argmax(np.abs(a[k:, k]))
        piv[k] = p
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            swaps += 1
        if a[k, k] == 0.0:
            singular = True
            continue
        a[k + 1:, k] /= a[k, k]
        for i in range(k + 1, n):
            a[i, k + 1:] -= a[i, k] * a[k, k + 1:]
    return swaps, singular


@_jit
def lu_solve_inplace(a, piv, b):
    """Solve the factored system in place on b (a, piv from lu_factor_inplace)."""
    n = a.shape[0]
    for k in range(n):
        p = piv[k]
        if p != k:
            tmp = b[k]
            b[k] = b[p]
            b[p] = tmp
    for i in range(1, n):
        b[i] -= np.dot(a[i, :i], b[:i])
    for i in range(n - 1, -1, -1):
        if i < n - 1:
            b[i] -= np.dot(a[i, i + 1:], b[i + 1:])
        b[i] /= a[i, i]


@_jit
def rk4_record(m, y, dt, steps, stride, out):
    """Integrate da/dt = -i*m*a with classical RK4 at fixed step dt.

    Records the state every ``stride`` steps into ``out`` (row 0 is the
    initial state).  Returns the step index at which the state became
    non-finite, or -1 on success.
    """
    out[0, :] = y
    rec = 1
    for step in range(1, steps + 1):
        k1 = -1j * np.dot(m, y)
        k2 = -1j * np.dot(m, y + (0.5 * dt) * k1)
        k3 = -1j * np.dot(m, y + (0.5 * dt) * k2)
        k4 = -1j * np.dot(m, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        total = np.sum(np.abs(y) ** 2)
        if not np.isfinite(total):
            return step
        if step % stride == 0 and rec < out.shape[0]:
            out[rec, :] = y
            rec += 1
    return -1
