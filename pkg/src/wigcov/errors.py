"""Exception types raised by wigcov.

All of them derive from :class:`ValueError` so callers that only care about
"bad input" can catch that, while the CLI maps them to exit codes.
"""


class WigcovError(ValueError):
    """Base class for every error raised on purpose by this package."""


class NotSymmetricError(WigcovError):
    def __init__(self, defect, tol):
        self.defect = float(defect)
        self.tol = float(tol)
        super().__init__(f"matrix is not symmetric: ||A - A^T|| = {self.defect:.3e} > {self.tol:.1e}")


class NotAntisymmetricError(WigcovError):
    def __init__(self, defect, tol):
        self.defect = float(defect)
        self.tol = float(tol)
        super().__init__(f"matrix is not antisymmetric: ||K + K^T|| = {self.defect:.3e} > {self.tol:.1e}")


class NotPositiveDefiniteError(WigcovError):
    def __init__(self, min_eigenvalue, tol):
        self.min_eigenvalue = float(min_eigenvalue)
        self.tol = float(tol)
        super().__init__(
            f"matrix is not positive definite: smallest eigenvalue {self.min_eigenvalue:.3e}"
        )


class SingularMatrixError(WigcovError):
    pass


class NotSymplecticError(WigcovError):
    def __init__(self, residual, tol, what="matrix"):
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(f"{what} is not symplectic: residual {self.residual:.3e} > {self.tol:.1e}")


class WitnessNotFoundError(WigcovError):
    """The witness search exhausted every candidate without success."""


class NotWignerRepresentable(WigcovError):
    """A Gaussian phase-space form is not the Wigner transform of any state.

    Attributes:
        spectrum: symplectic eigenvalues of the offending covariance form.
    """

    def __init__(self, spectrum, tol):
        self.spectrum = [float(s) for s in spectrum]
        self.tol = float(tol)
        super().__init__(
            "covariance form is not symplectic (symplectic spectrum "
            f"{self.spectrum}, expected all ones within {self.tol:.1e})"
        )


class GridMismatchError(WigcovError):
    pass


class DomainCoverageError(WigcovError):
    """A linear map pushes the essential support of a function off the grid."""

    def __init__(self, message, overshoot):
        self.overshoot = float(overshoot)
        super().__init__(message)
