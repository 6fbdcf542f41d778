"""Spectral spread of Hermitian matrices and the majorization inequalities around it."""

__version__ = "0.1.0"

from .errors import (
    DegenerateRotationError,
    DimensionMismatchError,
    EigenSolverError,
    InvalidComparisonError,
    MatrixFormatError,
    NotHermitianError,
    NotIsometryError,
    SpectralSpreadError,
)
from .linalg import eig_hermitian, eigvals_hermitian, hermitian, svd_values, unitary_exp
from .majorization import (
    KyFan,
    MajorizationReport,
    RelTol,
    Schatten,
    Spectral,
    classical_checks,
    entrywise_leq,
    majorizes,
    submajorizes,
    uin_norm,
)
from .spread import SpreadVector, abs_spread, spread, spread_plus
from .subspaces import direct_rotation, principal_angles

__all__ = [
    "__version__",
    "DegenerateRotationError",
    "DimensionMismatchError",
    "EigenSolverError",
    "InvalidComparisonError",
    "MatrixFormatError",
    "NotHermitianError",
    "NotIsometryError",
    "SpectralSpreadError",
    "eig_hermitian",
    "eigvals_hermitian",
    "hermitian",
    "svd_values",
    "unitary_exp",
    "KyFan",
    "MajorizationReport",
    "RelTol",
    "Schatten",
    "Spectral",
    "classical_checks",
    "entrywise_leq",
    "majorizes",
    "submajorizes",
    "uin_norm",
    "SpreadVector",
    "abs_spread",
    "spread",
    "spread_plus",
    "direct_rotation",
    "principal_angles",
]
