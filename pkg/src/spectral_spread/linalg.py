"""Dense Hermitian linear algebra: spectra, singular values, exponentials, blocks.

Matrices are plain ``numpy`` arrays. Functions that need a Hermitian input
pass it through :func:`hermitian`, which symmetrizes rounding noise and rejects
genuinely non-Hermitian data.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy.linalg import block_diag

from .errors import EigenSolverError, MatrixFormatError, NotHermitianError

HERMITIAN_RTOL = 1e-12


def scale_of(A: np.ndarray) -> float:
    """Tolerance scale ``max(1, ||A||_2)``."""
    A = np.asarray(A)
    if A.size == 0:
        return 1.0
    return max(1.0, float(np.linalg.norm(A, 2)))


def digest(A: np.ndarray) -> str:
    A = np.ascontiguousarray(A, dtype=complex)
    h = hashlib.sha256()
    h.update(str(A.shape).encode())
    h.update(A.tobytes())
    return h.hexdigest()[:16]


def is_hermitian(A: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    if A.size == 0:
        return True
    bound = rtol * max(1.0, float(np.abs(A).max()))
    return float(np.abs(A - A.conj().T).max()) <= bound


def hermitian(A, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate ``A`` as Hermitian and return the exactly symmetrized copy ``(A + A*)/2``.

    Raises
    ------
    NotHermitianError
        If ``A`` is not square or its asymmetry exceeds ``rtol * max(1, max|a_ij|)``.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotHermitianError("matrix has non-finite entries")
    if not is_hermitian(A, rtol):
        asym = float(np.abs(A - A.conj().T).max())
        raise NotHermitianError(f"matrix is not Hermitian (max |A - A*| = {asym:.3e})")
    H = (A + A.conj().T) / 2
    if not np.iscomplexobj(H):
        H = H.astype(float)
    return H


def is_psd(A: np.ndarray, rtol: float = 1e-10) -> bool:
    """PSD test used to gate positive-only sub-checks: ``lambda_min >= -rtol * scale``."""
    lam = eigvals_hermitian(A)
    return lam.size == 0 or lam[-1] >= -rtol * scale_of(A)


class Eigensystem(NamedTuple):
    values: np.ndarray  # descending
    vectors: np.ndarray  # column j pairs with values[j]


def eig_hermitian(A) -> Eigensystem:
    """Eigenvalues in non-increasing order with matching orthonormal eigenvectors."""
    H = hermitian(A)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigh failed: {exc}", digest(H)) from exc
    return Eigensystem(w[::-1].copy(), V[:, ::-1].copy())


def eigvals_hermitian(A) -> np.ndarray:
    """``lambda(A)``, non-increasing."""
    H = hermitian(A)
    try:
        w = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigvalsh failed: {exc}", digest(H)) from exc
    return w[::-1].copy()


def svd_values(B) -> np.ndarray:
    """Singular values ``s(B) = lambda(|B|)`` for a ``k x r`` matrix.

    Follows the convention that ``s(B)`` has one entry per column of ``B``;
    when ``B`` has fewer rows than columns the tail is zero.
    """
    B = np.asarray(B)
    if B.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {B.shape}")
    rows, cols = B.shape
    if cols == 0:
        return np.zeros(0)
    out = np.zeros(cols)
    if rows == 0:
        return out
    try:
        s = np.linalg.svd(B, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"svd failed: {exc}", digest(B)) from exc
    out[: s.size] = s
    return out


def unitary_exp(X) -> np.ndarray:
    """``exp(iX)`` for Hermitian ``X``, via the spectral decomposition."""
    lam, V = eig_hermitian(X)
    return (V * np.exp(1j * lam)) @ V.conj().T


def direct_sum(A1, A2) -> np.ndarray:
    A1 = np.asarray(A1)
    A2 = np.asarray(A2)
    if A1.size == 0:
        return np.array(A2, copy=True)
    if A2.size == 0:
        return np.array(A1, copy=True)
    return block_diag(A1, A2)


def hat(E) -> np.ndarray:
    """The Hermitian dilation ``[[0, E], [E*, 0]]``."""
    E = np.asarray(E)
    k, r = E.shape
    dtype = np.result_type(E.dtype, float)
    M = np.zeros((k + r, k + r), dtype=dtype)
    M[:k, k:] = E
    M[k:, :k] = E.conj().T
    return M


def block(A1, B, A2) -> np.ndarray:
    """Assemble ``[[A1, B], [B*, A2]]``."""
    A1, B, A2 = np.asarray(A1), np.asarray(B), np.asarray(A2)
    k, r = B.shape
    if A1.shape != (k, k) or A2.shape != (r, r):
        raise ValueError(f"block shapes {A1.shape}, {B.shape}, {A2.shape} do not fit")
    dtype = np.result_type(A1.dtype, B.dtype, A2.dtype, float)
    M = np.empty((k + r, k + r), dtype=dtype)
    M[:k, :k] = A1
    M[:k, k:] = B
    M[k:, :k] = B.conj().T
    M[k:, k:] = A2
    return M


def symmetrize(A: np.ndarray) -> np.ndarray:
    """Project a product that is Hermitian in exact arithmetic back onto ``H(n)``."""
    return (A + A.conj().T) / 2


# ----------------------------------------------------------------- file formats


def matrix_to_dict(M) -> dict:
    M = np.asarray(M)
    if M.ndim != 2:
        raise MatrixFormatError("only 2-d matrices can be serialized")
    doc = {"rows": int(M.shape[0]), "cols": int(M.shape[1]), "re": np.real(M).tolist()}
    if np.iscomplexobj(M) and np.any(np.imag(M) != 0):
        doc["im"] = np.imag(M).tolist()
    return doc


def matrix_from_dict(doc: dict) -> np.ndarray:
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        re = np.array(doc["re"], dtype=float).reshape(rows, cols)
        M = re
        if doc.get("im") is not None:
            M = re + 1j * np.array(doc["im"], dtype=float).reshape(rows, cols)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed matrix document: {exc}") from exc
    return M


def load_matrix(path) -> np.ndarray:
    """Read a matrix from JSON (a ``rows/cols/re/im`` object or a nested list of
    real rows) or from whitespace-separated text rows."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"{path}: invalid JSON: {exc}") from exc
        if isinstance(doc, dict):
            return matrix_from_dict(doc)
        try:
            M = np.array(doc, dtype=float)
        except (TypeError, ValueError) as exc:
            raise MatrixFormatError(f"{path}: {exc}") from exc
        if M.ndim != 2:
            raise MatrixFormatError(f"{path}: expected a list of equal-length rows")
        return M
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise MatrixFormatError(f"{path}: empty matrix file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MatrixFormatError(f"{path}: ragged rows")
    try:
        return np.array(rows, dtype=float)
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc


def save_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(M)) + "\n")
