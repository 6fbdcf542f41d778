"""The spectral spread of a Hermitian matrix and its structural properties.

For ``A`` with eigenvalues ``lambda_1 >= ... >= lambda_n``, the full spread is
``Spr(A)_i = lambda_i - lambda_{n-i+1}`` (an antisymmetric, non-increasing
vector) and ``Spr+(A)`` keeps its first ``n // 2`` entries, all nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, NotIsometryError
from .linalg import (
    direct_sum,
    eig_hermitian,
    eigvals_hermitian,
    hermitian,
    svd_values,
    symmetrize,
)
from .majorization import (
    EntrywiseReport,
    MajorizationReport,
    UinDescriptor,
    entrywise_leq,
    majorizes,
    matrix_norm,
    submajorizes,
    uin_norm,
)


@dataclass(frozen=True)
class SpreadVector:
    full: np.ndarray
    plus: np.ndarray

    @property
    def n(self) -> int:
        return self.full.size


def spread_from_eigenvalues(lam) -> SpreadVector:
    lam = -np.sort(-np.asarray(lam, dtype=float))
    full = _kernels.spread_from_sorted(lam)
    return SpreadVector(full, full[: lam.size // 2].copy())


def spread(A) -> SpreadVector:
    """``Spr(A)`` and ``Spr+(A)`` of a Hermitian matrix."""
    return spread_from_eigenvalues(eigvals_hermitian(A))


def spread_plus(A) -> np.ndarray:
    return spread(A).plus


def abs_spread(A) -> np.ndarray:
    """``|Spr(A)|`` sorted descending; equals ``Spr+(A ⊕ A)``."""
    return -np.sort(-np.abs(spread(A).full))


def is_isometry(Z, atol: float = 1e-10) -> bool:
    Z = np.asarray(Z)
    if Z.ndim != 2 or Z.shape[1] > Z.shape[0]:
        return False
    return bool(np.abs(Z.conj().T @ Z - np.eye(Z.shape[1])).max() <= atol)


def check_isometry(Z, atol: float = 1e-10) -> np.ndarray:
    Z = np.asarray(Z)
    if not is_isometry(Z, atol):
        raise NotIsometryError(f"matrix of shape {Z.shape} does not have orthonormal columns")
    return Z


class KyFanWitness(NamedTuple):
    value: float
    xs: np.ndarray
    ys: np.ndarray


def rayleigh_gap(A, xs, ys) -> float:
    """``sum_i <A x_i, x_i> - <A y_i, y_i>`` over paired columns."""
    A = np.asarray(A)
    return float(np.real(np.trace(xs.conj().T @ A @ xs) - np.trace(ys.conj().T @ A @ ys)))


def spread_kyfan_witness(A, r: int) -> KyFanWitness:
    """Partial sum ``Spr_1 + ... + Spr_r`` with the orthonormal systems attaining it.

    The ``x`` system is the top-``r`` eigenvectors and the ``y`` system the
    bottom-``r``; no other pair of orthonormal systems gives a larger
    Rayleigh-sum difference.
    """
    H = hermitian(A)
    n = H.shape[0]
    if not 1 <= r <= n // 2:
        raise ValueError(f"r must lie in [1, {n // 2}], got {r}")
    lam, V = eig_hermitian(H)
    value = float(spread_from_eigenvalues(lam).full[:r].sum())
    return KyFanWitness(value, V[:, :r].copy(), V[:, ::-1][:, :r].copy())


def centered_singular_check(A, tol: float | None = None) -> MajorizationReport:
    """``s(A - lambda_{k+1} I) ≺ Spr+(A)`` with ``k = n // 2`` (1-based index)."""
    H = hermitian(A)
    n = H.shape[0]
    if n < 2:
        raise ValueError("centered_singular_check needs n >= 2")
    lam = eigvals_hermitian(H)
    k = n // 2
    return majorizes(svd_values(H - lam[k] * np.eye(n)), spread_from_eigenvalues(lam).plus, tol)


def half_spread_vs_singular_check(A, tol: float | None = None) -> MajorizationReport:
    """``½ Spr+(A ⊕ A) ≺_w s(A)``."""
    H = hermitian(A)
    return submajorizes(0.5 * spread_plus(direct_sum(H, H)), svd_values(H), tol)


def spread_chain_reports(A, tol: float | None = None) -> dict:
    """The chain ``½ Spr+(A⊕A) ≺ s(A - c I) ≺ Spr+(A)`` for both candidate centers.

    Keys are ``"k+1"`` (``c = lambda_{k+1}``) and ``"k"`` (``c = lambda_k``),
    1-based with ``k = n // 2``; each maps to a ``(left, right)`` report pair.
    The ``k+1`` center is the median and always satisfies both links. For odd
    ``n`` with ``lambda_k > lambda_{k+1}`` the ``k`` center makes ``sum s(A - cI)``
    exceed ``tr Spr+(A)``, so both links fail on the trace condition.
    """
    H = hermitian(A)
    n = H.shape[0]
    if n < 2:
        raise ValueError("spread chain needs n >= 2")
    lam = eigvals_hermitian(H)
    k = n // 2
    half = 0.5 * spread_plus(direct_sum(H, H))
    plus = spread_from_eigenvalues(lam).plus
    out = {}
    for label, c in (("k+1", lam[k]), ("k", lam[k - 1])):
        s = svd_values(H - c * np.eye(n))
        out[label] = (majorizes(half, s, tol), majorizes(s, plus, tol))
    return out


def compression_check(A, Z, tol: float | None = None) -> tuple[MajorizationReport, EntrywiseReport]:
    """``Spr+(Z* A Z) ≺_w Spr+(A)`` plus the entrywise form for ``i <= r // 2``."""
    H = hermitian(A)
    Z = check_isometry(Z)
    if Z.shape[0] != H.shape[0]:
        raise DimensionMismatchError(f"isometry has {Z.shape[0]} rows, matrix has dimension {H.shape[0]}")
    inner = spread_plus(symmetrize(Z.conj().T @ H @ Z))
    outer = spread_plus(H)
    return submajorizes(inner, outer, tol), entrywise_leq(inner, outer, length=inner.size)


def reversal_unitary(A) -> np.ndarray:
    """A unitary ``U`` with ``U* A U`` having the eigenvalues of ``A`` in reversed order."""
    _, V = eig_hermitian(A)
    return V[:, ::-1] @ V.conj().T


def orbit_diameter(A, N: UinDescriptor) -> tuple[float, np.ndarray]:
    """Largest ``N(A - U* A U)`` over unitaries ``U`` and a maximizing ``U``."""
    H = hermitian(A)
    return uin_norm(spread(H).full, N), reversal_unitary(H)


def orbit_distance(A, U, N: UinDescriptor) -> float:
    A = np.asarray(A)
    return matrix_norm(A - U.conj().T @ A @ U, N)


def lidskii_spread_check(A, B, tol: float | None = None) -> tuple[MajorizationReport, MajorizationReport]:
    """``Spr(A) - Spr(B) ≺ Spr(A - B) ≺ Spr(A) + Spr(B)``."""
    A, B = hermitian(A), hermitian(B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shapes {A.shape} and {B.shape} differ")
    sa, sb, sd = spread(A).full, spread(B).full, spread(A - B).full
    return majorizes(sa - sb, sd, tol), majorizes(sd, sa + sb, tol)
