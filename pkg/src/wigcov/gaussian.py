"""Closed-form Wigner calculus of centred Gaussian states.

A state ``psi_{X,Y}(x) = (pi hbar)^{-n/4} (det X)^{1/4} exp(-(X + iY) x.x / (2 hbar))``
has Wigner transform ``(pi hbar)^{-n} exp(-G z.z / hbar)`` with

    G = [[X + Y X^{-1} Y, Y X^{-1}],
         [X^{-1} Y,       X^{-1}  ]],

a positive definite symplectic matrix.  Conversely a Gaussian phase-space
form is the Wigner transform of a pure state only when its covariance form is
symplectic, i.e. all of its symplectic eigenvalues equal one.  That
obstruction is what :func:`theorem1_refutation` exhibits for linear maps that
are neither symplectic nor antisymplectic.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import matrixkit as mk
from . import symplectic as sp
from .errors import NotWignerRepresentable, WigcovError, WitnessNotFoundError
from .io import matrix_to_json

DEFAULT_TOL = 1e-8
REFUTATION_TOL = 1e-6


@dataclass(frozen=True)
class GaussianState:
    """Centred Gaussian ``psi_{X,Y}``; ``X`` positive definite, ``Y`` symmetric."""

    X: np.ndarray
    Y: Optional[np.ndarray] = None
    hbar: float = 1.0

    def __post_init__(self):
        X = mk.as_matrix(np.atleast_2d(self.X))
        Y = np.zeros_like(X) if self.Y is None else mk.as_matrix(np.atleast_2d(self.Y))
        if Y.shape != X.shape:
            raise WigcovError(f"X and Y shapes differ: {X.shape} vs {Y.shape}")
        if not mk.is_spd(X):
            raise WigcovError("X must be symmetric positive definite")
        if not mk.is_symmetric(Y):
            raise WigcovError("Y must be symmetric")
        if not self.hbar > 0:
            raise WigcovError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "X", 0.5 * (X + X.T))
        object.__setattr__(self, "Y", 0.5 * (Y + Y.T))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self):
        return self.X.shape[0]

    def evaluate(self, x):
        """Values of the wave function at points ``x`` of shape ``(..., n)``.

        For ``n == 1`` a plain 1-d array of abscissae is accepted too.
        """
        x = np.asarray(x, dtype=float)
        if self.n == 1 and (x.ndim == 0 or x.shape[-1] != 1):
            x = x[..., None]
        A = self.X + 1j * self.Y
        quad = np.einsum("...i,ij,...j->...", x, A, x)
        norm = (np.pi * self.hbar) ** (-self.n / 4) * np.linalg.det(self.X) ** 0.25
        return norm * np.exp(-quad / (2 * self.hbar))


@dataclass(frozen=True)
class PhaseSpaceGaussian:
    """``(pi hbar)^{-n} exp(-G z.z / hbar)`` for symmetric positive definite ``G``."""

    G: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        G = mk.as_matrix(self.G)
        sp.half_dim(G)
        if not mk.is_spd(G):
            raise WigcovError("covariance form G must be symmetric positive definite")
        object.__setattr__(self, "G", 0.5 * (G + G.T))

    @property
    def n(self):
        return self.G.shape[0] // 2

    def evaluate(self, z):
        z = np.asarray(z, dtype=float)
        quad = np.einsum("...i,ij,...j->...", z, self.G, z)
        return (np.pi * self.hbar) ** (-self.n) * np.exp(-quad / self.hbar)


def wigner_covariance(state):
    """Covariance form ``G`` of the Wigner transform of ``state``."""
    X, Y = state.X, state.Y
    Xinv = np.linalg.inv(X)
    Xinv = 0.5 * (Xinv + Xinv.T)
    G = np.block([[X + Y @ Xinv @ Y, Y @ Xinv], [Xinv @ Y, Xinv]])
    return PhaseSpaceGaussian(0.5 * (G + G.T), state.hbar)


def symplectic_spectrum_deviation(G):
    """``max |sigma_j - 1|`` over the symplectic spectrum of ``G``."""
    spec = sp.symplectic_eigenvalues(G)
    return float(np.max(np.abs(spec - 1.0))), spec


def is_pure_wigner_gaussian(ps, tol=DEFAULT_TOL):
    """True when every symplectic eigenvalue of ``ps.G`` is 1 within ``tol``."""
    dev, _ = symplectic_spectrum_deviation(ps.G)
    return dev <= tol


def from_wigner_covariance(ps, tol=DEFAULT_TOL):
    """Recover ``(X, Y)`` from a pure-state covariance form.

    ``X = (G_pp)^{-1}`` and ``Y = X G_px``; the ``G_xx`` block is then checked
    against ``X + Y X^{-1} Y``.

    Raises:
        NotWignerRepresentable: if the symplectic spectrum of ``G`` is not all
            ones within ``tol``.
    """
    dev, spec = symplectic_spectrum_deviation(ps.G)
    if dev > tol:
        raise NotWignerRepresentable(spec, tol)
    n = ps.n
    G = ps.G
    X = np.linalg.inv(G[n:, n:])
    X = 0.5 * (X + X.T)
    Y = X @ G[n:, :n]
    Y = 0.5 * (Y + Y.T)
    state = GaussianState(X, Y, ps.hbar)
    back = wigner_covariance(state).G
    if np.linalg.norm(back - G) > max(tol, 1e-8) * max(1.0, np.linalg.norm(G)) * 10:
        raise NotWignerRepresentable(spec, tol)
    return state


def metaplectic_pushforward(ps, S, tol=DEFAULT_TOL):
    """Covariance form of ``W(S_hat psi)``: ``G' = S^{-T} G S^{-1}``.

    Raises:
        NotSymplecticError: if ``S`` is not symplectic within ``tol`` (relative
            to ``||S||^2``).
    """
    S = mk.as_matrix(S)
    if S.shape != ps.G.shape:
        raise WigcovError(f"map has shape {S.shape}, covariance form {ps.G.shape}")
    sp.check_symplectic(S, tol * max(1.0, np.linalg.norm(S)) ** 2)
    Sinv = sp.symplectic_inverse(S)
    return PhaseSpaceGaussian(Sinv.T @ ps.G @ Sinv, ps.hbar)


def conjugate_state(state):
    """Complex conjugate of ``psi_{X,Y}``, which is ``psi_{X,-Y}``."""
    return GaussianState(state.X, -state.Y, state.hbar)


class Conclusion(str, enum.Enum):
    COVARIANT_SYMPLECTIC = "CovariantSymplectic"
    COVARIANT_ANTISYMPLECTIC = "CovariantAntisymplectic"
    NOT_WIGNER_REPRESENTABLE = "NotWignerRepresentable"


@dataclass(frozen=True)
class RefutationWitness:
    G_in: np.ndarray
    G_out: np.ndarray
    spectrum: np.ndarray
    stage: int


@dataclass(frozen=True)
class RefutationReport:
    """Outcome of :func:`theorem1_refutation`.

    When the map is neither symplectic nor antisymplectic, ``witness`` holds a
    real Gaussian ``psi_X`` (through ``G_in = diag(X, X^{-1})``), the pulled-back
    form ``G_out = M^T G_in M`` and its symplectic spectrum, which is not all
    ones: ``W psi_X o M`` is a Gaussian that no state has as Wigner transform.
    """

    classification: sp.MapClass
    conclusion: Conclusion
    witness: Optional[RefutationWitness] = None
    tol: float = field(default=REFUTATION_TOL)

    def to_json(self):
        out = {
            "classification": self.classification.to_json(),
            "conclusion": self.conclusion.value,
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = {
                "G_in": matrix_to_json(self.witness.G_in),
                "G_out": matrix_to_json(self.witness.G_out),
                "spectrum": [float(s) for s in self.witness.spectrum],
                "stage": self.witness.stage,
            }
        return out


def theorem1_refutation(M, tol=REFUTATION_TOL, seed=0):
    """Decide whether Wigner transforms can be covariant under ``M``.

    Symplectic and antisymplectic maps are covariant.  For any other
    invertible ``M`` a real Gaussian ``psi_X`` is produced whose Wigner
    transform composed with ``M`` has a covariance form with symplectic
    spectrum away from one (deviation above ``tol``).

    Raises:
        SingularMatrixError: if ``M`` is not invertible.
        WitnessNotFoundError: if the candidate family is exhausted.
    """
    M = mk.as_matrix(M)
    n = sp.half_dim(M)
    result = sp.lemma_witness(M, tol, seed)
    cls = result.classification
    if cls.tag is sp.MapTag.SYMPLECTIC:
        return RefutationReport(cls, Conclusion.COVARIANT_SYMPLECTIC, tol=tol)
    if cls.tag is sp.MapTag.ANTISYMPLECTIC:
        return RefutationReport(cls, Conclusion.COVARIANT_ANTISYMPLECTIC, tol=tol)

    candidates = [(result.stage, result.witness_G)]
    candidates += [c for c in sp.witness_candidates(n, seed)]
    for stage, G_in in candidates:
        G_out = M.T @ G_in @ M
        G_out = 0.5 * (G_out + G_out.T)
        dev, spec = symplectic_spectrum_deviation(G_out)
        if dev > tol:
            witness = RefutationWitness(G_in, G_out, spec, stage)
            return RefutationReport(cls, Conclusion.NOT_WIGNER_REPRESENTABLE, witness, tol)
    raise WitnessNotFoundError("no Gaussian witness with symplectic spectrum away from one")
