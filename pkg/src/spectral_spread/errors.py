"""Exception types raised by spectral_spread."""


class SpectralSpreadError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(SpectralSpreadError, ValueError):
    pass


class NotIsometryError(SpectralSpreadError, ValueError):
    pass


class DimensionMismatchError(SpectralSpreadError, ValueError):
    pass


class InvalidComparisonError(SpectralSpreadError, ValueError):
    """Signed vectors of different lengths cannot be compared by padding."""


class DegenerateRotationError(SpectralSpreadError, ValueError):
    """Two subspaces have a principal angle of pi/2 (no direct rotation)."""


class EigenSolverError(SpectralSpreadError, ArithmeticError):
    def __init__(self, message: str, digest: str):
        super().__init__(f"{message} (matrix digest {digest})")
        self.digest = digest


class MatrixFormatError(SpectralSpreadError, ValueError):
    pass
