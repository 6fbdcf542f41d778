import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_spread.ensemble import complex_gaussian, gaussian_hermitian, haar_unitary, rng_for
from spectral_spread.errors import EigenSolverError, MatrixFormatError, NotHermitianError
from spectral_spread.linalg import (
    block,
    digest,
    direct_sum,
    eig_hermitian,
    eigvals_hermitian,
    hat,
    hermitian,
    is_psd,
    load_matrix,
    matrix_from_dict,
    matrix_to_dict,
    save_matrix,
    svd_values,
    unitary_exp,
)

from .oracles import charpoly_eigenvalues, expm_series, gram_singular_values

seeds = st.integers(min_value=0, max_value=2**32)
dims = st.integers(min_value=1, max_value=7)


def test_eig_diagonal():
    lam, V = eig_hermitian(np.diag([1.0, 3.0, -2.0]))
    np.testing.assert_allclose(lam, [3, 1, -2])
    np.testing.assert_allclose(np.abs(V), np.eye(3)[:, [1, 0, 2]], atol=1e-14)


def test_eig_tao_matrix_close_to_printed_values():
    A = [[2, 1, 0, 1], [1, 2, 1, 0], [0, 1, 3, 1], [1, 0, 1, 3]]
    lam = eigvals_hermitian(A)
    # exact spectrum with phi the golden ratio
    phi = (1 + np.sqrt(5)) / 2
    np.testing.assert_allclose(lam, [3 + phi, 1 + phi, 4 - phi, 2 - phi], atol=1e-12)
    np.testing.assert_allclose(lam, [4.61, 2.61, 2.38, 0.39], atol=0.0085)


@pytest.mark.parametrize("seed", range(10))
def test_eig_matches_charpoly_oracle(seed):
    A = gaussian_hermitian(rng_for(seed, 1), 5)
    np.testing.assert_allclose(eigvals_hermitian(A), charpoly_eigenvalues(A), atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(seeds, dims)
def test_eigensystem_invariants(seed, n):
    rng = rng_for(seed)
    A = gaussian_hermitian(rng, n)
    lam, V = eig_hermitian(A)
    assert np.all(np.diff(lam) <= 0)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(n), atol=1e-10)
    np.testing.assert_allclose(A @ V, V * lam, atol=1e-9 * max(1, np.linalg.norm(A, 2)))
    U = haar_unitary(rng, n)
    np.testing.assert_allclose(eigvals_hermitian(U.conj().T @ A @ U), lam, atol=1e-9 * max(1, np.linalg.norm(A, 2)))


def test_hermitian_symmetrizes_noise_and_rejects_asymmetry():
    A = np.array([[1.0, 2.0], [2.0 + 1e-14, 1.0]])
    H = hermitian(A)
    assert H[0, 1] == H[1, 0]
    with pytest.raises(NotHermitianError):
        hermitian([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotHermitianError):
        hermitian(np.ones((2, 3)))
    with pytest.raises(NotHermitianError):
        hermitian([[np.nan]])


def test_eigen_solver_error_carries_digest():
    err = EigenSolverError("boom", digest(np.eye(2)))
    assert err.digest == digest(np.eye(2))
    assert len(err.digest) == 16


def test_svd_examples():
    np.testing.assert_allclose(svd_values([[0, 1], [1, 0]]), [1, 1], atol=1e-12)
    np.testing.assert_array_equal(svd_values(np.zeros((3, 2))), [0, 0])
    assert svd_values(np.ones((2, 4))).shape == (4,)


@pytest.mark.parametrize("shape", [(3, 4), (4, 3), (1, 5), (5, 1), (3, 3)])
@pytest.mark.parametrize("seed", range(3))
def test_svd_matches_gram_oracle(shape, seed):
    B = complex_gaussian(rng_for(seed, 2), shape)
    np.testing.assert_allclose(svd_values(B), gram_singular_values(B), atol=1e-8)


@settings(max_examples=30, deadline=None)
@given(seeds, dims, dims)
def test_svd_adjoint_equal_up_to_trailing_zeros(seed, k, r):
    B = complex_gaussian(rng_for(seed), (k, r))
    a, b = svd_values(B), svd_values(B.conj().T)
    m = min(k, r)
    np.testing.assert_allclose(a[:m], b[:m], atol=1e-12 * max(1, a.max()))
    assert np.all(a[m:] == 0) and np.all(b[m:] == 0)


def test_unitary_exp_examples():
    np.testing.assert_allclose(unitary_exp(np.zeros((3, 3))), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(unitary_exp(np.diag([np.pi, 0.0])), np.diag([-1, 1]), atol=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_unitary_exp_matches_series_oracle(seed):
    X = gaussian_hermitian(rng_for(seed, 3), 4)
    U = unitary_exp(X)
    np.testing.assert_allclose(U, expm_series(1j * X), atol=1e-9)
    np.testing.assert_allclose(U @ unitary_exp(-X), np.eye(4), atol=1e-10)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-10)


def test_direct_sum():
    np.testing.assert_allclose(eigvals_hermitian(direct_sum(np.diag([5.0, 1.0]), np.diag([3.0, 3.0]))), [5, 3, 3, 1])
    A = np.array([[1.0, 2.0], [2.0, 0.0]])
    np.testing.assert_array_equal(direct_sum(A, np.zeros((0, 0))), A)
    np.testing.assert_array_equal(direct_sum(np.zeros((0, 0)), A), A)


@settings(max_examples=30, deadline=None)
@given(seeds, dims, dims)
def test_direct_sum_spectrum_is_merge(seed, n1, n2):
    rng = rng_for(seed)
    A1, A2 = gaussian_hermitian(rng, n1), gaussian_hermitian(rng, n2)
    merged = np.sort(np.concatenate([eigvals_hermitian(A1), eigvals_hermitian(A2)]))[::-1]
    np.testing.assert_allclose(eigvals_hermitian(direct_sum(A1, A2)), merged, atol=1e-12)


def test_hat_examples():
    np.testing.assert_allclose(eigvals_hermitian(hat([[2.0]])), [2, -2])
    np.testing.assert_allclose(eigvals_hermitian(hat(np.eye(2))), [1, 1, -1, -1], atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(seeds, dims, dims)
def test_hat_spectrum(seed, k, r):
    E = complex_gaussian(rng_for(seed), (k, r))
    s = np.linalg.svd(E, compute_uv=False)
    m = s.size
    expected = np.concatenate([s, np.zeros(k + r - 2 * m), -s[::-1]])
    np.testing.assert_allclose(eigvals_hermitian(hat(E)), expected, atol=1e-10)


def test_block_assembly_and_shape_check():
    M = block(np.eye(1), np.array([[1j, 2.0]]), np.zeros((2, 2)))
    assert M.shape == (3, 3)
    assert np.allclose(M, M.conj().T)
    with pytest.raises(ValueError):
        block(np.eye(2), np.ones((1, 2)), np.eye(2))


def test_is_psd():
    assert is_psd(np.diag([1.0, 0.0]))
    assert not is_psd(np.diag([1.0, -1e-3]))


def test_matrix_json_roundtrip(tmp_path):
    M = np.array([[1.0, 2 - 1j], [2 + 1j, 0.5]])
    doc = matrix_to_dict(M)
    assert set(doc) == {"rows", "cols", "re", "im"}
    np.testing.assert_array_equal(matrix_from_dict(doc), M)
    assert "im" not in matrix_to_dict(M.real)
    p = tmp_path / "m.json"
    save_matrix(p, M)
    np.testing.assert_array_equal(load_matrix(p), M)
    assert json.loads(p.read_text())["rows"] == 2


def test_load_text_and_nested_list(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("# comment\n3 0 0\n0 1 0\n\n0 0 -2\n")
    np.testing.assert_array_equal(load_matrix(p), np.diag([3.0, 1.0, -2.0]))
    q = tmp_path / "m.json"
    q.write_text("[[0, 1], [1, 0]]")
    np.testing.assert_array_equal(load_matrix(q), [[0, 1], [1, 0]])


@pytest.mark.parametrize("content", ["1 2\n3\n", "", "a b\n", "{\"rows\": 2}", "{bad", "[1, 2]"])
def test_load_matrix_errors(tmp_path, content):
    p = tmp_path / "bad.txt"
    p.write_text(content)
    with pytest.raises(MatrixFormatError):
        load_matrix(p)
