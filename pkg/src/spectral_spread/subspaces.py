"""Principal angles, direct rotations and the angle-side spread bounds.

Subspaces are represented by isometries: ``n x k`` matrices with orthonormal
columns spanning the subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRotationError, DimensionMismatchError
from .linalg import eigvals_hermitian, hermitian, svd_values, unitary_exp
from .majorization import MajorizationReport, submajorizes
from .spread import abs_spread, check_isometry, spread_plus

# cos(theta) below this counts as a right angle
RIGHT_ANGLE_COS = 1e-10
# sin(theta) below this counts as a zero angle in the rotation plane construction
ZERO_ANGLE_SIN = 1e-13


def as_isometry(M, orthonormalize: bool = False) -> np.ndarray:
    """Return ``M`` as an isometry, optionally replacing it by an orthonormal basis of its range."""
    M = np.asarray(M)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if orthonormalize:
        Q, R = np.linalg.qr(M)
        rank = int(np.sum(np.abs(np.diag(R)) > 1e-12 * max(1.0, np.abs(R).max())))
        if rank < M.shape[1]:
            raise DimensionMismatchError(f"spanning set has rank {rank} < {M.shape[1]} columns")
        return Q
    return check_isometry(M)


def orth_complement(S) -> np.ndarray:
    """An isometry whose range is the orthogonal complement of ``range(S)``."""
    S = np.asarray(S)
    n, k = S.shape
    Q, _ = np.linalg.qr(S, mode="complete")
    return Q[:, k:]


def _pair(S, T):
    S, T = check_isometry(S), check_isometry(T)
    if S.shape != T.shape:
        raise DimensionMismatchError(f"subspace bases have shapes {S.shape} and {T.shape}")
    return S, T


def principal_angles(S, T) -> np.ndarray:
    """Principal angles between ``range(S)`` and ``range(T)``, non-increasing, in radians.

    ``theta_j = arccos(s_{k-j+1}(S* T))``; cosines are clipped to ``[0, 1]``
    first because rounding can push singular values slightly above one.
    ``arccos`` loses about half the digits near zero, so angles below ``pi/4``
    are taken from the sines ``s((I - S S*) T)`` instead.
    """
    S, T = _pair(S, T)
    cos = np.clip(svd_values(S.conj().T @ T), 0.0, 1.0)[::-1]
    theta = np.arccos(cos)
    sin = np.clip(np.sort(svd_values(T - S @ (S.conj().T @ T))), 0.0, 1.0)[::-1]
    small = cos > np.sqrt(0.5)
    theta[small] = np.arcsin(sin[small])
    return theta


def principal_angles_sin(S, T) -> np.ndarray:
    """The same angles from ``sin(theta_j) = s_j(T* S_perp)``."""
    S, T = _pair(S, T)
    k = S.shape[1]
    sin = np.zeros(k)
    M = T.conj().T @ orth_complement(S)
    if M.shape[1]:
        s = np.linalg.svd(M, compute_uv=False)
        sin[: s.size] = s[:k]
    return np.arcsin(np.clip(sin, 0.0, 1.0))


@dataclass(frozen=True)
class DirectRotation:
    U: np.ndarray
    Z: np.ndarray
    positive_angles: np.ndarray  # non-increasing
    S_adapted: np.ndarray  # columns s_j of the adapted basis of range(S)
    Q: np.ndarray  # unit vectors q_j in range(S)^perp, one per positive angle


def direct_rotation(S, T) -> DirectRotation:
    """Davis–Kahan direct rotation from ``range(S)`` onto ``range(T)``.

    With the SVD ``S* T = W1 diag(c) W2*`` the adapted bases ``S W1`` and ``T W2``
    pair up column by column. Each pair with angle ``theta_j > 0`` spans a plane
    ``{s_j, q_j}``; the rotation turns ``s_j`` toward ``q_j`` by ``theta_j`` and
    is the identity off those planes. Its Hermitian logarithm ``Z`` acts as
    ``theta_j [[0, i], [-i, 0]]`` on each plane.

    Raises
    ------
    DegenerateRotationError
        If some principal angle equals ``pi/2``.
    """
    S, T = _pair(S, T)
    n, k = S.shape
    W1, c, W2h = np.linalg.svd(S.conj().T @ T)
    if c.size and c.min() < RIGHT_ANGLE_COS:
        raise DegenerateRotationError("subspaces meet at a right angle; no direct rotation exists")
    Sa = S @ W1
    Ta = T @ W2h.conj().T
    G = Ta - Sa * c
    sin = np.linalg.norm(G, axis=0)
    theta = np.arctan2(sin, c)
    active = sin > ZERO_ANGLE_SIN
    s_act = Sa[:, active]
    q_act = G[:, active] / sin[active]
    th = theta[active]
    ct, st = np.cos(th), np.sin(th)
    U = np.eye(n, dtype=complex)
    U += (s_act * (ct - 1)) @ s_act.conj().T + (q_act * (ct - 1)) @ q_act.conj().T
    U += (q_act * st) @ s_act.conj().T - (s_act * st) @ q_act.conj().T
    Z = 1j * ((s_act * th) @ q_act.conj().T) - 1j * ((q_act * th) @ s_act.conj().T)
    order = np.argsort(-th, kind="stable")
    return DirectRotation(U, hermitian(Z, rtol=1e-9), th[order], s_act[:, order], q_act[:, order])


def restricted_singular_values(V, S) -> np.ndarray:
    """``s((I - V)|_S)``: singular values of ``(I - V) S``."""
    V = np.asarray(V)
    return svd_values((np.eye(V.shape[0]) - V) @ S)


def rotated(S, X) -> np.ndarray:
    """``e^{iX} S``, an isometry onto ``e^{iX} range(S)``."""
    return unitary_exp(X) @ S


def angle_spread_check(S, X, tol: float | None = None) -> MajorizationReport:
    """``Theta(S, e^{iX} S) ≺_w ½ Spr+(X)``."""
    S = check_isometry(S)
    X = hermitian(X)
    if X.shape[0] != S.shape[0]:
        raise DimensionMismatchError(f"X has dimension {X.shape[0]}, subspace lives in C^{S.shape[0]}")
    return submajorizes(principal_angles(S, rotated(S, X)), 0.5 * spread_plus(X), tol)


def rotation_bound_check(S, X, tol: float | None = None) -> tuple[MajorizationReport, MajorizationReport]:
    """``s(Z) ≺_w ½|Spr(X)| ≺_w s(X)`` for the direct-rotation logarithm ``Z`` onto ``e^{iX} S``."""
    S = check_isometry(S)
    X = hermitian(X)
    dr = direct_rotation(S, rotated(S, X))
    half = 0.5 * abs_spread(X)
    return submajorizes(svd_values(dr.Z), half, tol), submajorizes(half, svd_values(X), tol)


def logarithm_spectrum(dr: DirectRotation, n: int) -> np.ndarray:
    """Expected ``lambda(Z)``: ``(theta*, 0, ..., 0, -theta* reversed)``."""
    th = dr.positive_angles
    out = np.zeros(n)
    out[: th.size] = th
    if th.size:
        out[n - th.size:] = -th[::-1]
    return out


def z_spectrum(dr: DirectRotation) -> np.ndarray:
    return eigvals_hermitian(dr.Z)
