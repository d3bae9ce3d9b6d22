"""Symplectic linear algebra and Weyl-Wigner phase-space calculus.

Subpackages and modules:

* :mod:`wigcov.matrixkit`: Jacobi eigensolver, SPD powers, polar decomposition,
  canonical form of antisymmetric matrices;
* :mod:`wigcov.symplectic`: classification of linear maps, Williamson form,
  capacities of ellipsoids, Gaussian witness search;
* :mod:`wigcov.gaussian`: closed-form Wigner calculus of Gaussian states and
  the refutation of covariance under non-symplectic maps;
* :mod:`wigcov.phasespace`: discrete Wigner, metaplectic and Weyl operators
  for one degree of freedom and residual checks of their covariance.
"""

from . import gaussian, matrixkit, phasespace, symplectic
from .errors import (
    DomainCoverageError,
    GridMismatchError,
    NotAntisymmetricError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    NotSymplecticError,
    NotWignerRepresentable,
    SingularMatrixError,
    WigcovError,
    WitnessNotFoundError,
)

__version__ = "0.1.0"

__all__ = [
    "DomainCoverageError",
    "GridMismatchError",
    "NotAntisymmetricError",
    "NotPositiveDefiniteError",
    "NotSymmetricError",
    "NotSymplecticError",
    "NotWignerRepresentable",
    "SingularMatrixError",
    "WigcovError",
    "WitnessNotFoundError",
    "gaussian",
    "matrixkit",
    "phasespace",
    "symplectic",
]
