"""Inner-loop vector kernels shared by every majorization check.

Two implementations of each kernel live here: a numba ``@njit`` version and a
plain numpy version with identical semantics. The numpy path is the default
because the checks operate on short vectors, where JIT compile/cache-load
latency outweighs the per-call savings. Set ``SPECTRAL_SPREAD_JIT=1`` in the
environment (before import) to route through numba; ``benchmarks/bench_kernels.py``
compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_TRUTHY = {"1", "true", "yes", "on"}


def _want_jit() -> bool:
    return os.environ.get("SPECTRAL_SPREAD_JIT", "0").strip().lower() in _TRUTHY


# ---------------------------------------------------------------- numpy path


def margins_numpy(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Prefix-sum margins of ``y`` over ``x`` after descending sort and zero-padding."""
    m = max(x.shape[0], y.shape[0])
    xs = np.zeros(m)
    ys = np.zeros(m)
    xs[: x.shape[0]] = -np.sort(-x)
    ys[: y.shape[0]] = -np.sort(-y)
    return np.cumsum(ys) - np.cumsum(xs)


def spread_numpy(lam_desc: np.ndarray) -> np.ndarray:
    return lam_desc - lam_desc[::-1]


def batch_margins_numpy(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise ``margins`` for equal-width batches (rows already padded)."""
    xs = -np.sort(-X, axis=1)
    ys = -np.sort(-Y, axis=1)
    return np.cumsum(ys, axis=1) - np.cumsum(xs, axis=1)


# ---------------------------------------------------------------- numba path

def _build_jit():
    import numba

    @numba.njit(cache=True)
    def margins_jit(x, y):
        m = max(x.shape[0], y.shape[0])
        xs = np.zeros(m)
        ys = np.zeros(m)
        sx = np.sort(x)
        sy = np.sort(y)
        nx = sx.shape[0]
        ny = sy.shape[0]
        for i in range(nx):
            xs[i] = sx[nx - 1 - i]
        for i in range(ny):
            ys[i] = sy[ny - 1 - i]
        out = np.empty(m)
        ax = 0.0
        ay = 0.0
        for i in range(m):
            ax += xs[i]
            ay += ys[i]
            out[i] = ay - ax
        return out

    @numba.njit(cache=True)
    def spread_jit(lam_desc):
        n = lam_desc.shape[0]
        out = np.empty(n)
        for i in range(n):
            out[i] = lam_desc[i] - lam_desc[n - 1 - i]
        return out

    @numba.njit(cache=True)
    def batch_margins_jit(X, Y):
        b, m = X.shape
        out = np.empty((b, m))
        for r in range(b):
            sx = np.sort(X[r])
            sy = np.sort(Y[r])
            ax = 0.0
            ay = 0.0
            for i in range(m):
                ax += sx[m - 1 - i]
                ay += sy[m - 1 - i]
                out[r, i] = ay - ax
        return out

    return margins_jit, spread_jit, batch_margins_jit


_jit_cache = None


def jit_kernels():
    """Return the compiled ``(margins, spread, batch_margins)`` triple, building on first use."""
    global _jit_cache
    if _jit_cache is None:
        _jit_cache = _build_jit()
    return _jit_cache


USE_JIT = False
if _want_jit():
    try:
        margins, spread_from_sorted, batch_margins = jit_kernels()
        USE_JIT = True
    except ImportError:  # numba missing: fall back silently to numpy
        pass

if not USE_JIT:
    margins = margins_numpy
    spread_from_sorted = spread_numpy
    batch_margins = batch_margins_numpy
