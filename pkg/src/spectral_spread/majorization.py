"""Majorization and submajorization of real vectors.

``x`` is submajorized by ``y`` when every descending partial sum of ``x`` is
bounded by the matching partial sum of ``y``; adding equality of totals gives
majorization. Vectors of different lengths are compared by zero-padding the
shorter one, which is only meaningful for nonnegative entries.

Every comparison returns a :class:`MajorizationReport` carrying the full list
of partial-sum margins, so callers can judge near-ties themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, InvalidComparisonError, NotHermitianError
from .linalg import eigvals_hermitian, is_hermitian, svd_values

DEFAULT_RTOL = 1e-9


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def desc(x) -> np.ndarray:
    """``x`` rearranged in non-increasing order."""
    return -np.sort(-as_vector(x))


def asc(x) -> np.ndarray:
    return np.sort(as_vector(x))


def ones(r: int) -> np.ndarray:
    return np.ones(r)


def pad(x, length: int) -> np.ndarray:
    x = as_vector(x)
    if x.size >= length:
        return x
    return np.concatenate([x, np.zeros(length - x.size)])


def desc_product(x, y) -> np.ndarray:
    """Entrywise product of ``x`` and ``y`` sorted descending, truncated to the shorter length."""
    xs, ys = desc(x), desc(y)
    m = min(xs.size, ys.size)
    return xs[:m] * ys[:m]


@dataclass(frozen=True)
class RelTol:
    """A tolerance relative to the bounding vector: ``rtol * max(1, sum|y|)``
    for partial sums, ``rtol * max(1, max|y|)`` for entrywise comparisons."""

    rtol: float = DEFAULT_RTOL


def resolve_tolerance(tol, y, entrywise: bool = False) -> float:
    """Turn ``None``, a :class:`RelTol` or an absolute float into an absolute slack."""
    if tol is None:
        tol = RelTol()
    if isinstance(tol, RelTol):
        y = np.abs(as_vector(y))
        size = float(y.max(initial=0.0)) if entrywise else float(y.sum())
        return tol.rtol * max(1.0, size)
    return float(tol)


@dataclass(frozen=True)
class MajorizationReport:
    """Outcome of comparing ``x`` against ``y``.

    ``margins[j]`` is the ``(j+1)``-th descending partial sum of ``y`` minus that
    of ``x``; ``padded_lengths`` records how many zeros were appended to each.
    """

    relation: str
    verdict: bool
    margins: tuple
    trace_gap: float
    tolerance: float
    padded_lengths: tuple = (0, 0)

    @property
    def min_margin(self) -> float:
        return min(self.margins) if self.margins else 0.0

    @property
    def first_violation(self):
        """Index of the first partial sum that fails, or ``None``."""
        for j, m in enumerate(self.margins):
            if m < -self.tolerance:
                return j
        if self.relation == "majorized" and abs(self.trace_gap) > self.tolerance:
            return len(self.margins) - 1
        return None

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "verdict": self.verdict,
            "margins": list(self.margins),
            "min_margin": self.min_margin,
            "trace_gap": self.trace_gap,
            "tolerance": self.tolerance,
            "padded_lengths": list(self.padded_lengths),
        }


def _prepare(x, y):
    x, y = as_vector(x), as_vector(y)
    if x.size != y.size and (np.any(x < 0) or np.any(y < 0)):
        raise InvalidComparisonError(
            f"cannot compare vectors of lengths {x.size} and {y.size} with negative entries"
        )
    m = max(x.size, y.size)
    return x, y, (m - x.size, m - y.size)


def submajorizes(x, y, tol: float | None = None) -> MajorizationReport:
    """Test ``x`` submajorized by ``y`` (``x ≺_w y``).

    Parameters
    ----------
    x, y : array_like
        Real vectors. Unequal lengths require nonnegative entries; the shorter
        vector is zero-padded.
    tol : float or RelTol, optional
        Allowed slack on each partial sum. Defaults to ``1e-9 * max(1, sum|y|)``.
    """
    x, y, padded = _prepare(x, y)
    tol = resolve_tolerance(tol, y)
    m = _kernels.margins(x, y)
    gap = float(y.sum() - x.sum())
    verdict = bool(m.size == 0 or m.min() >= -tol)
    return MajorizationReport("submajorized", verdict, tuple(float(v) for v in m), gap, float(tol), padded)


def majorizes(x, y, tol: float | None = None) -> MajorizationReport:
    """Test ``x`` majorized by ``y`` (``x ≺ y``): submajorization plus equal totals."""
    sub = submajorizes(x, y, tol)
    verdict = sub.verdict and abs(sub.trace_gap) <= sub.tolerance
    return MajorizationReport("majorized", verdict, sub.margins, sub.trace_gap, sub.tolerance, sub.padded_lengths)


@dataclass(frozen=True)
class EntrywiseReport:
    """Outcome of ``x_i <= y_i`` for every ``i`` below ``len(gaps)``."""

    verdict: bool
    gaps: tuple  # y_i - x_i
    tolerance: float

    @property
    def first_violation(self):
        for i, g in enumerate(self.gaps):
            if g < -self.tolerance:
                return i
        return None

    @property
    def min_margin(self) -> float:
        return min(self.gaps) if self.gaps else 0.0

    def to_dict(self) -> dict:
        return {
            "relation": "entrywise",
            "verdict": self.verdict,
            "gaps": list(self.gaps),
            "min_margin": self.min_margin,
            "first_violation": self.first_violation,
            "tolerance": self.tolerance,
        }


def entrywise_leq(x, y, length: int | None = None, tol: float | None = None) -> EntrywiseReport:
    """Compare ``x_i <= y_i`` for ``i < length`` (default: the shorter length)."""
    x, y = as_vector(x), as_vector(y)
    m = min(x.size, y.size) if length is None else length
    if m > min(x.size, y.size):
        x, y = pad(x, m), pad(y, m)
    tol = resolve_tolerance(tol, y[:m], entrywise=True)
    gaps = y[:m] - x[:m]
    return EntrywiseReport(bool(np.all(gaps >= -tol)), tuple(float(g) for g in gaps), float(tol))


# ------------------------------------------------------------------ u.i. norms


@dataclass(frozen=True)
class KyFan:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Ky Fan index must be >= 1")


@dataclass(frozen=True)
class Schatten:
    p: float

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError("Schatten exponent must be >= 1")


@dataclass(frozen=True)
class Spectral:
    pass


UinDescriptor = Union[KyFan, Schatten, Spectral]


def uin_norm(x, N: UinDescriptor) -> float:
    """Unitarily invariant norm of the diagonal matrix ``D_x``."""
    a = np.abs(as_vector(x))
    if a.size == 0:
        return 0.0
    if isinstance(N, KyFan):
        return float(desc(a)[: N.k].sum())
    if isinstance(N, Schatten):
        amax = a.max()
        if amax == 0:
            return 0.0
        # rescale to avoid overflow for large p
        return float(amax * np.sum((a / amax) ** N.p) ** (1.0 / N.p))
    if isinstance(N, Spectral):
        return float(a.max())
    raise TypeError(f"unknown norm descriptor {N!r}")


def matrix_norm(M, N: UinDescriptor) -> float:
    return uin_norm(svd_values(M), N)


def norm_family(n: int) -> list:
    """Ky Fan ``1..n``, Schatten ``p in {1, 2, 4}`` and the spectral norm."""
    return [KyFan(k) for k in range(1, max(n, 1) + 1)] + [Schatten(1), Schatten(2), Schatten(4), Spectral()]


# ------------------------------------------------------ classical inequalities


def pinch(D, partition: Sequence[int]) -> np.ndarray:
    """Block-diagonal compression of ``D`` along contiguous coordinate blocks."""
    D = np.asarray(D)
    if sum(partition) != D.shape[0] or any(p <= 0 for p in partition):
        raise DimensionMismatchError(f"partition {list(partition)} does not cover dimension {D.shape[0]}")
    out = np.zeros_like(D)
    start = 0
    for size in partition:
        sl = slice(start, start + size)
        out[sl, sl] = D[sl, sl]
        start += size
    return out


def classical_checks(C, D, partition: Sequence[int] | None = None, spectral: bool = True,
                     tol: float | None = None) -> dict:
    """Run the textbook singular-value and eigenvalue (sub)majorizations on ``C, D``.

    Singular-value checks (Weyl additive and multiplicative) accept any square
    pair. With ``spectral=True`` both inputs must be Hermitian and the eigenvalue
    relations (Weyl, Lidskii, eigenvalue perturbation, pinching) are added.
    """
    C, D = np.asarray(C), np.asarray(D)
    if C.shape != D.shape or C.ndim != 2:
        raise DimensionMismatchError(f"shapes {C.shape} and {D.shape} differ")
    out = {
        "weyl_singular_additive": submajorizes(svd_values(C + D), svd_values(C) + svd_values(D), tol),
    }
    if C.shape[0] == C.shape[1]:
        out["weyl_singular_multiplicative"] = submajorizes(svd_values(C @ D), svd_values(C) * svd_values(D), tol)
    if not spectral:
        return out
    if not (is_hermitian(C) and is_hermitian(D)):
        raise NotHermitianError("eigenvalue checks need Hermitian inputs")
    lc, ld = eigvals_hermitian(C), eigvals_hermitian(D)
    out["weyl_eigen_additive"] = majorizes(eigvals_hermitian(C + D), lc + ld, tol)
    l_diff = eigvals_hermitian(C - D)
    out["lidskii_lower"] = majorizes(lc - ld, l_diff, tol)
    out["lidskii_upper"] = majorizes(l_diff, lc - ld[::-1], tol)
    out["eigen_perturbation"] = submajorizes(np.abs(lc - ld), svd_values(C - D), tol)
    if partition is None:
        n = D.shape[0]
        partition = [n // 2, n - n // 2] if n > 1 else [n]
    out["pinching"] = majorizes(eigvals_hermitian(pinch(D, partition)), ld, tol)
    return out
