import numpy as np
import pytest

from spectral_spread.checks import BlockHermitian
from spectral_spread.ensemble import (
    KINDS,
    STRUCTURED,
    EnsembleSpec,
    gen_block,
    gen_hermitian,
    gen_structured,
    gen_unitary_or_isometry,
    haar_unitary,
    rng_for,
)
from spectral_spread.errors import SpectralSpreadError
from spectral_spread.linalg import eigvals_hermitian
from spectral_spread.spread import spread_plus


@pytest.mark.parametrize("kind", ["gaussian_hermitian", "psd"])
def test_hermitian_determinism_and_structure(kind):
    spec = EnsembleSpec(kind, 6, seed=42, scale=2.0)
    A, B = gen_hermitian(spec), gen_hermitian(spec)
    np.testing.assert_array_equal(A, B)
    assert np.abs(A - A.conj().T).max() <= 1e-15
    other = gen_hermitian(EnsembleSpec(kind, 6, seed=43, scale=2.0))
    assert not np.array_equal(A, other)


def test_psd_spectrum_nonnegative():
    for seed in range(20):
        A = gen_hermitian(EnsembleSpec("psd", 5, seed=seed, scale=3.0))
        assert eigvals_hermitian(A)[-1] >= -1e-12 * 3.0


def test_dim_one_is_scalar():
    A = gen_hermitian(EnsembleSpec("gaussian_hermitian", 1, seed=0))
    assert A.shape == (1, 1) and A[0, 0].imag == 0


def test_streams_are_independent_of_order():
    a = rng_for(9, 1, 5).standard_normal(4)
    rng_for(9, 1, 4).standard_normal(100)
    b = rng_for(9, 1, 5).standard_normal(4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, rng_for(9, 1, 6).standard_normal(4))


def test_rng_seed_range():
    rng_for(2**64 - 1)
    with pytest.raises(ValueError):
        rng_for(-1)
    with pytest.raises(ValueError):
        rng_for(2**64)


def test_unitary_and_isometry():
    U = gen_unitary_or_isometry(EnsembleSpec("unitary_haar", 5, seed=1))
    np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-12)
    np.testing.assert_array_equal(U, gen_unitary_or_isometry(EnsembleSpec("unitary_haar", 5, seed=1)))
    V = gen_unitary_or_isometry(EnsembleSpec("isometry", 5, seed=1, k=2))
    assert V.shape == (5, 2)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(2), atol=1e-12)
    with pytest.raises(ValueError):
        gen_unitary_or_isometry(EnsembleSpec("isometry", 3, seed=1, k=4))


def test_haar_column_mean_is_small():
    rng = rng_for(123)
    cols = np.array([haar_unitary(rng, 4)[:, 0] for _ in range(1000)])
    assert np.abs(cols.mean(axis=0)).max() <= 0.1
    # each entry has E|u_ij|^2 = 1/n under Haar measure
    np.testing.assert_allclose((np.abs(cols) ** 2).mean(axis=0), 0.25, atol=0.03)


def test_block_generation():
    blk = gen_block(EnsembleSpec("block", 5, seed=3, k=2))
    assert isinstance(blk, BlockHermitian) and (blk.k, blk.r) == (2, 3)
    with pytest.raises(ValueError):
        gen_block(EnsembleSpec("block", 2, seed=3, k=2))


@pytest.mark.parametrize("kwargs", [dict(kind="nope", dim=2, seed=0), dict(kind="psd", dim=0, seed=0),
                                    dict(kind="psd", dim=2, seed=0, scale=0.0)])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        EnsembleSpec(**kwargs)


def test_spec_dispatch_errors():
    with pytest.raises(ValueError):
        gen_hermitian(EnsembleSpec("unitary_haar", 2, seed=0))
    with pytest.raises(ValueError):
        gen_unitary_or_isometry(EnsembleSpec("psd", 2, seed=0))
    assert EnsembleSpec("psd", 2, seed=0).to_dict()["kind"] == "psd"
    assert set(KINDS) >= {"gaussian_hermitian", "psd", "unitary_haar", "isometry", "block"}


def test_printed_instances_verbatim():
    blk = gen_structured("paper_tao_4x4")
    np.testing.assert_array_equal(blk.assembled, [[2, 1, 0, 1], [1, 2, 1, 0], [0, 1, 3, 1], [1, 0, 1, 3]])
    A1, A2 = gen_structured("paper_2x2_pair")
    np.testing.assert_array_equal(A1, [[3, 2], [2, 3]])
    np.testing.assert_array_equal(A2, 3 * np.eye(2))
    np.testing.assert_array_equal(gen_structured("paper_conjtru_4x4").assembled,
                                  [[1, 2, 1, 2], [2, 1, 1, 0], [1, 1, 2, 0], [2, 0, 0, 2]])


def test_structured_families():
    A = gen_structured("scalar", 4, seed=2)
    np.testing.assert_array_equal(spread_plus(A), [0, 0])
    blk = gen_structured("hat_witness", 5, seed=2)
    assert not blk.A1.any() and not blk.A2.any()
    A1, A2 = gen_structured("negation_pair", 3, seed=2)
    np.testing.assert_array_equal(A2, -A1)
    R = gen_structured("repeated_spectrum", 6, seed=2)
    assert len(np.unique(np.round(eigvals_hermitian(R), 8))) <= 3


@pytest.mark.parametrize("name", STRUCTURED)
def test_structured_determinism(name):
    a, b = gen_structured(name, 4, seed=5), gen_structured(name, 4, seed=5)
    if isinstance(a, BlockHermitian):
        a, b = a.assembled, b.assembled
    np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


def test_unknown_structured_name():
    with pytest.raises(SpectralSpreadError):
        gen_structured("nope")
