import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spectral_spread import _kernels

finite = st.floats(-1e6, 1e6, allow_nan=False)
vectors = st.integers(1, 12).flatmap(lambda n: arrays(np.float64, n, elements=finite))


def test_numpy_is_the_default():
    if os.environ.get("SPECTRAL_SPREAD_JIT", "0") in {"0", ""}:
        assert not _kernels.USE_JIT
        assert _kernels.margins is _kernels.margins_numpy


@given(vectors, vectors)
def test_margins_numpy_matches_definition(x, y):
    m = max(x.size, y.size)
    xs = np.pad(np.sort(x)[::-1], (0, m - x.size))
    ys = np.pad(np.sort(y)[::-1], (0, m - y.size))
    expected = [sum(ys[: i + 1]) - sum(xs[: i + 1]) for i in range(m)]
    np.testing.assert_allclose(_kernels.margins_numpy(x, y), expected, rtol=1e-12, atol=1e-6)


def test_batch_matches_rowwise():
    rng = np.random.default_rng(0)
    X, Y = rng.standard_normal((20, 7)), rng.standard_normal((20, 7))
    rows = np.array([_kernels.margins_numpy(a, b) for a, b in zip(X, Y)])
    np.testing.assert_allclose(_kernels.batch_margins_numpy(X, Y), rows, atol=1e-13)


@pytest.fixture(scope="module")
def jit():
    pytest.importorskip("numba")
    return _kernels.jit_kernels()


class TestJit:
    @settings(max_examples=50, deadline=None)
    @given(x=vectors, y=vectors)
    def test_margins_agree(self, jit, x, y):
        np.testing.assert_allclose(jit[0](x, y), _kernels.margins_numpy(x, y), rtol=1e-12, atol=1e-6)

    def test_spread_and_batch_agree(self, jit):
        rng = np.random.default_rng(1)
        lam = np.sort(rng.standard_normal(9))[::-1].copy()
        np.testing.assert_array_equal(jit[1](lam), _kernels.spread_numpy(lam))
        X, Y = rng.standard_normal((16, 5)), rng.standard_normal((16, 5))
        np.testing.assert_allclose(jit[2](X, Y), _kernels.batch_margins_numpy(X, Y), atol=1e-13)

    def test_env_flag_selects_jit(self, jit):
        env = dict(os.environ, SPECTRAL_SPREAD_JIT="1")
        code = ("from spectral_spread import _kernels, majorizes; "
                "print(_kernels.USE_JIT, majorizes([1, 0], [0.5, 0.5]).verdict)")
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        assert out.stdout.split() == ["True", "False"]
